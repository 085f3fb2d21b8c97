#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "semcloud/builtins.hpp"
#include "semcloud/detect.hpp"
#include "semcloud/engine.hpp"
#include "semcloud/kb.hpp"
#include "semcloud/rules.hpp"
#include "semcloud/topo.hpp"

namespace semcloud {

struct PipelineParams {
  DetectionParams detection;
  TopoParams topo;
  std::size_t max_iters = 100;
};

/// Comparison, processing and topology built-ins wired to one detector.
struct Toolbox {
  BuiltinRegistry registry;
  std::shared_ptr<SceneDetector> detector;
};

Toolbox make_toolbox(const PipelineParams& params);

/// Schema, domain classes and a `dbb:scene` individual pointing at `cloud_dir`.
KnowledgeBase make_scene_kb(const std::string& cloud_dir);

struct Annotation {
  KnowledgeBase kb;
  std::vector<Rule> rules;
  RunStats stats;
};

/// Parses `rules_text` and runs it to fixpoint on a fresh scene KB.
Annotation annotate_scene(const std::string& cloud_dir, std::string_view rules_text,
                          const PipelineParams& params, const RunOptions& options = {});

}  // namespace semcloud
