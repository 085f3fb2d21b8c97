#include "semcloud/pipeline.hpp"

#include "semcloud/annotate.hpp"
#include "semcloud/schema.hpp"

namespace semcloud {

Toolbox make_toolbox(const PipelineParams& params) {
  params.detection.validate();
  params.topo.validate();
  Toolbox box;
  register_comparison_builtins(box.registry);
  box.detector = register_processing_builtins(box.registry, params.detection);
  register_topology_builtins(box.registry, params.topo);
  return box;
}

KnowledgeBase make_scene_kb(const std::string& cloud_dir) {
  KnowledgeBase kb;
  seed_schema(kb);
  declare_domain_classes(kb);
  const Name scene("dbb", "scene");
  kb.assert_fact({scene, KnowledgeBase::type_predicate(), vocab::Scene});
  kb.assert_fact({scene, vocab::hasPointCloudDirectory, Literal::string(cloud_dir)});
  return kb;
}

Annotation annotate_scene(const std::string& cloud_dir, std::string_view rules_text,
                          const PipelineParams& params, const RunOptions& options) {
  Toolbox box = make_toolbox(params);
  Annotation result{make_scene_kb(cloud_dir), parse_rules(rules_text, box.registry), {}};
  RunOptions run = options;
  run.max_iters = params.max_iters;
  result.stats = run_to_fixpoint(result.kb, box.registry, result.rules, run);
  return result;
}

}  // namespace semcloud
