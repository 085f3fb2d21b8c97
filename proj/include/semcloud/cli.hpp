#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "semcloud/pipeline.hpp"

namespace semcloud {

enum ExitCode : int { kExitOk = 0, kExitRuleError = 1, kExitIoError = 2, kExitNoFixpoint = 3 };

struct AnnotateOptions {
  std::string cloud_dir;
  std::optional<std::string> rules_file;
  std::optional<std::string> out_wrl;
  std::optional<std::string> kb_out;
  std::optional<std::string> colors_file;
  bool snapshot_passes = false;
  PipelineParams params;
};

struct SynthOptions {
  std::optional<std::string> spec_file;
  bool reference = false;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
};

struct CheckRulesOptions {
  std::optional<std::string> rules_file;
};

int cmd_annotate(const AnnotateOptions& options, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);
int cmd_check_rules(const CheckRulesOptions& options, std::ostream& out, std::ostream& err);

/// Dispatches `annotate`, `synth` and `check-rules`; `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Where `--snapshot-passes` writes pass `n` for the output file `out_wrl`.
std::string snapshot_path(const std::string& out_wrl, std::size_t pass);

}  // namespace semcloud
