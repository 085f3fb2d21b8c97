#include "semcloud/cli.hpp"

#include <filesystem>
#include <sstream>

#include <CLI11.hpp>

#include "semcloud/annotate.hpp"
#include "semcloud/cloud.hpp"
#include "semcloud/error.hpp"
#include "semcloud/export.hpp"
#include "semcloud/synth.hpp"

namespace semcloud {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::string rule_name(const Rule& rule, std::size_t index) {
  return rule.label.empty() ? "rule#" + std::to_string(index + 1) : rule.label;
}

void print_banner(const AnnotateOptions& o, std::ostream& out) {
  const auto& d = o.params.detection;
  const auto& t = o.params.topo;
  out << "semcloud annotate\n"
      << "  cloud-dir    " << o.cloud_dir << "\n"
      << "  rules        " << o.rules_file.value_or("(built-in defaults)") << "\n"
      << "  voxel        " << num(d.voxel_resolution) << " m\n"
      << "  min-points   " << d.min_points << "\n"
      << "  ratio        " << num(d.ratio_threshold) << "\n"
      << "  min-extent   " << num(d.min_major_extent) << " m\n"
      << "  ground-slab  " << num(d.ground_slab) << " m\n"
      << "  contact-eps  " << num(t.contact_eps) << " m\n"
      << "  upper-eps    " << num(t.upper_eps) << " m\n"
      << "  distance-tol " << num(t.distance_tolerance) << " m\n"
      << "  max-iters    " << o.params.max_iters << "\n";
}

void print_stats(const Annotation& a, std::ostream& out) {
  out << "classes\n";
  for (const auto& row : summarize(a.kb)) out << "  " << row.cls.str() << " " << row.count << "\n";
  out << "passes " << a.stats.iterations << "\n";
  out << "facts added " << a.stats.facts_added << " (total " << a.kb.fact_count() << ")\n";
  out << "facts per pass";
  for (auto n : a.stats.facts_after_pass) out << " " << n;
  out << "\nrule fires\n";
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    out << "  " << rule_name(a.rules[i], i) << " " << a.stats.fire_counts[i] << "\n";
  }
}

}  // namespace

std::string snapshot_path(const std::string& out_wrl, std::size_t pass) {
  std::string stem = out_wrl;
  if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".wrl") == 0) stem.resize(stem.size() - 4);
  return stem + ".pass" + std::to_string(pass) + ".wrl";
}

int cmd_annotate(const AnnotateOptions& options, std::ostream& out, std::ostream& err) {
  const std::string rules_source = options.rules_file.value_or("<default rules>");
  try {
    if (options.snapshot_passes && !options.out_wrl) {
      throw Error("--snapshot-passes needs --out");
    }
    if (!fs::is_directory(options.cloud_dir)) {
      throw IoError("not a scene directory: " + options.cloud_dir);
    }
    const std::string rules_text =
        options.rules_file ? read_text_file(*options.rules_file) : std::string(default_rules());
    ColorMap colors = ColorMap::defaults();
    if (options.colors_file) colors.apply_overrides(read_text_file(*options.colors_file));

    print_banner(options, out);

    RunOptions run;
    if (options.snapshot_passes) {
      run.on_pass = [&](std::size_t pass, const KnowledgeBase& kb) {
        write_text_file(snapshot_path(*options.out_wrl, pass), export_vrml(kb, colors));
      };
    }
    const Annotation result = annotate_scene(options.cloud_dir, rules_text, options.params, run);
    for (const auto& w : result.stats.warnings) err << "warning: " << w << "\n";
    print_stats(result, out);

    if (options.out_wrl) write_text_file(*options.out_wrl, export_vrml(result.kb, colors));
    if (options.kb_out) write_text_file(*options.kb_out, export_triples(result.kb));
    return kExitOk;
  } catch (const ParseError& e) {
    err << rules_source << ":" << e.what() << "\n";
    return kExitRuleError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const FixpointError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoFixpoint;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuleError;
  }
}

int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.reference == options.spec_file.has_value()) {
      throw SpecError("give exactly one of --spec and --reference");
    }
    SceneSpec spec =
        options.reference ? reference_spec() : parse_scene_spec(read_text_file(*options.spec_file));
    if (options.seed) spec.seed = *options.seed;
    const auto [cloud, truth] = generate(spec);

    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) throw IoError("cannot create " + options.out_dir + ": " + ec.message());
    std::ostringstream xyz;
    write_xyz(xyz, cloud);
    write_text_file(fs::path(options.out_dir) / "scene.xyz", xyz.str());
    write_text_file(fs::path(options.out_dir) / "truth.json", truth_to_json(truth));
    out << "wrote " << cloud.size() << " points, " << truth.objects.size() << " objects to "
        << options.out_dir << " (seed " << spec.seed << ")\n";
    return kExitOk;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuleError;
  }
}

int cmd_check_rules(const CheckRulesOptions& options, std::ostream& out, std::ostream& err) {
  const std::string source = options.rules_file.value_or("<default rules>");
  try {
    const std::string text =
        options.rules_file ? read_text_file(*options.rules_file) : std::string(default_rules());
    const Toolbox box = make_toolbox({});
    const auto rules = parse_rules(text, box.registry);
    for (std::size_t i = 0; i < rules.size(); ++i) {
      std::size_t builtins = 0;
      for (const auto& atom : rules[i].body) builtins += std::holds_alternative<BuiltinAtom>(atom);
      out << rule_name(rules[i], i) << " (line " << rules[i].line << "): body " << rules[i].body.size()
          << " atoms (" << builtins << " built-in), head " << rules[i].head.size() << " atoms\n";
    }
    out << rules.size() << " rules ok\n";
    return kExitOk;
  } catch (const ParseError& e) {
    err << source << ":" << e.what() << "\n";
    return kExitRuleError;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuleError;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rule-based semantic annotation of point-cloud scenes", "semcloud"};
  app.require_subcommand(1);

  AnnotateOptions annotate;
  std::string rules, wrl, kb_out, colors;
  auto* ann = app.add_subcommand("annotate", "detect, classify and export a scene");
  ann->add_option("--cloud-dir", annotate.cloud_dir, "directory of .xyz files")->required();
  ann->add_option("--rules", rules, "rule file (default: shipped rules)");
  ann->add_option("--out", wrl, "VRML output file");
  ann->add_option("--kb-out", kb_out, "triple dump output file");
  ann->add_option("--colors", colors, "colour overrides, 'Class r g b' per line");
  ann->add_option("--voxel", annotate.params.detection.voxel_resolution, "voxel size [m]")
      ->capture_default_str();
  ann->add_option("--min-points", annotate.params.detection.min_points, "minimum component size")
      ->capture_default_str();
  ann->add_option("--contact-eps", annotate.params.topo.contact_eps, "contact tolerance [m]")
      ->capture_default_str();
  ann->add_flag("--snapshot-passes", annotate.snapshot_passes, "write <out>.pass<N>.wrl per pass");
  ann->add_option("--max-iters", annotate.params.max_iters, "pass limit")->capture_default_str();

  SynthOptions synth;
  std::string spec;
  std::uint64_t seed = 0;
  auto* syn = app.add_subcommand("synth", "generate a synthetic scene and its ground truth");
  auto* spec_opt = syn->add_option("--spec", spec, "scene spec JSON");
  auto* ref_opt = syn->add_flag("--reference", synth.reference, "use the built-in reference scene");
  spec_opt->excludes(ref_opt);
  syn->add_option("--out-dir", synth.out_dir, "output directory")->capture_default_str();
  auto* seed_opt = syn->add_option("--seed", seed, "override the spec seed");

  std::string check_rules;
  auto* chk = app.add_subcommand("check-rules", "parse and safety-check a rule file");
  chk->add_option("--rules", check_rules, "rule file (default: shipped rules)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitRuleError;
  }

  auto optional = [](const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<std::string>(s);
  };
  if (*ann) {
    annotate.rules_file = optional(rules);
    annotate.out_wrl = optional(wrl);
    annotate.kb_out = optional(kb_out);
    annotate.colors_file = optional(colors);
    return cmd_annotate(annotate, out, err);
  }
  if (*syn) {
    synth.spec_file = optional(spec);
    if (seed_opt->count() > 0) synth.seed = seed;
    return cmd_synth(synth, out, err);
  }
  return cmd_check_rules({optional(check_rules)}, out, err);
}

}  // namespace semcloud
