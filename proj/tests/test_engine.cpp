#include <doctest.h>

#include <random>
#include <set>

#include "semcloud/annotate.hpp"
#include "semcloud/engine.hpp"
#include "semcloud/error.hpp"
#include "semcloud/pipeline.hpp"
#include "semcloud/schema.hpp"
#include "semcloud/synth.hpp"
#include "semcloud/topo.hpp"
#include "support/checks.hpp"
#include "support/naive_engine.hpp"
#include "support/scenes.hpp"

using namespace semcloud;
using namespace semcloud::testing;

namespace {

Name n(const char* s) { return Name::parse(s); }

KnowledgeBase abc_kb() {
  KnowledgeBase kb;
  kb.declare_class(n("A"));
  kb.declare_class(n("B"));
  kb.declare_class(n("C"));
  kb.declare_class(n("Vertical_BoundingBox"));
  kb.declare_property(n("hasHeight"), PropertyKind::Data);
  return kb;
}

// Every pass evaluates all rules against a frozen copy of the KB, then
// merges; the engine instead lets later rules see earlier rules' facts.
std::string jacobi_dump(KnowledgeBase kb, const BuiltinRegistry& registry,
                        const std::vector<Rule>& rules) {
  prepare_kb_for_rules(kb, rules);
  while (true) {
    KnowledgeBase frozen = kb;
    std::vector<std::pair<const Rule*, Binding>> firings;
    for (const auto& r : rules) {
      for (auto& b : evaluate_body(frozen, registry, r.body)) firings.emplace_back(&r, std::move(b));
    }
    const auto before = kb.fact_count();
    for (const auto& i : frozen.individuals()) kb.add_individual(i);
    for (const auto& f : frozen.facts()) kb.assert_fact(f);
    for (const auto& [r, b] : firings) assert_head(kb, r->head, b);
    if (kb.fact_count() == before) return kb.dump();
  }
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("body evaluation") {
  auto kb = abc_kb();
  BuiltinRegistry registry;
  register_comparison_builtins(registry);
  kb.assert_fact({n("geo_1"), KnowledgeBase::type_predicate(), n("Vertical_BoundingBox")});
  kb.assert_fact({n("geo_2"), KnowledgeBase::type_predicate(), n("Vertical_BoundingBox")});
  kb.assert_fact({n("geo_1"), n("hasHeight"), Literal::real(6.0)});
  kb.assert_fact({n("geo_2"), n("hasHeight"), Literal::real(4.0)});

  const auto rules = parse_rules(
      "Vertical_BoundingBox(?x) -> A(?x)\n"
      "Vertical_BoundingBox(?x) ^ hasHeight(?x, ?h) ^ swrlb:greaterThan(?h, 4.0) -> B(?x)",
      registry);
  CHECK(evaluate_body(kb, registry, rules[0].body).size() == 2);
  const auto tall = evaluate_body(kb, registry, rules[1].body);
  REQUIRE(tall.size() == 1);
  CHECK(std::get<Name>(tall[0].at("?x")) == n("geo_1"));
}

TEST_CASE("empty rule set") {
  auto kb = abc_kb();
  BuiltinRegistry registry;
  const auto stats = run_to_fixpoint(kb, registry, std::vector<Rule>{});
  CHECK(stats.iterations == 1);
  CHECK(stats.facts_added == 0);
}

TEST_CASE("chains propagate and stop") {
  auto kb = abc_kb();
  BuiltinRegistry registry;
  kb.assert_fact({n("i"), KnowledgeBase::type_predicate(), n("A")});
  const auto rules = parse_rules("[ab] A(?x) -> B(?x)\n[bc] B(?x) -> C(?x)", registry);
  const auto stats = run_to_fixpoint(kb, registry, rules);
  CHECK(stats.iterations <= 3);
  CHECK(stats.facts_added == 2);
  CHECK(stats.fire_counts == std::vector<std::size_t>{1, 1});
  CHECK(kb.contains({n("i"), KnowledgeBase::type_predicate(), n("C")}));

  const auto again = run_to_fixpoint(kb, registry, rules);
  CHECK(again.facts_added == 0);
  CHECK(again.iterations == 1);
}

TEST_CASE("pass limit") {
  auto kb = abc_kb();
  BuiltinRegistry registry;
  kb.assert_fact({n("i"), KnowledgeBase::type_predicate(), n("A")});
  // Reversed order needs a pass per link.
  const auto rules = parse_rules("[bc] B(?x) -> C(?x)\n[ab] A(?x) -> B(?x)", registry);
  RunOptions options;
  options.max_iters = 2;
  try {
    run_to_fixpoint(kb, registry, rules, options);
    FAIL("expected FixpointError");
  } catch (const FixpointError& e) {
    CHECK(std::string(e.what()).find("[bc]") != std::string::npos);
  }
  options.max_iters = 0;
  CHECK_THROWS_AS(run_to_fixpoint(kb, registry, rules, options), EngineError);
}

TEST_CASE("engine errors") {
  auto kb = abc_kb();
  BuiltinRegistry registry;
  register_comparison_builtins(registry);
  kb.assert_fact({n("i"), KnowledgeBase::type_predicate(), n("A")});
  kb.assert_fact({n("i"), n("hasHeight"), Literal::real(1)});

  Rule unbound{"", {ClassAtom{n("A"), Variable{"?x"}},
                    BuiltinAtom{Name("swrlb", "lessThan"), {Variable{"?y"}, Literal::real(1)}}},
               {ClassAtom{n("B"), Variable{"?x"}}}};
  CHECK_THROWS_AS(run_to_fixpoint(kb, registry, std::vector<Rule>{unbound}), EngineError);

  Rule literal_head{"", {PropertyAtom{n("hasHeight"), Variable{"?x"}, Variable{"?h"}}},
                    {ClassAtom{n("B"), Variable{"?h"}}}};
  CHECK_THROWS_AS(run_to_fixpoint(kb, registry, std::vector<Rule>{literal_head}), EngineError);

  Rule unsafe{"", {ClassAtom{n("A"), Variable{"?x"}}}, {ClassAtom{n("B"), Variable{"?z"}}}};
  CHECK_THROWS_AS(run_to_fixpoint(kb, registry, std::vector<Rule>{unsafe}), EngineError);
}

TEST_CASE("undeclared vocabulary is declared with a warning") {
  KnowledgeBase kb;
  seed_schema(kb);
  kb.assert_fact({n("g"), KnowledgeBase::type_predicate(), vocab::Geometry});
  BuiltinRegistry registry;
  const auto rules = parse_rules("Geometry(?x) -> Thing(?x) ^ likes(?x, ?x)", registry);
  const auto stats = run_to_fixpoint(kb, registry, rules);
  REQUIRE(stats.warnings.size() == 1);
  CHECK(stats.warnings[0].find("dbb:Thing") != std::string::npos);
  CHECK(kb.is_subclass(n("Thing"), vocab::DomainConcept));
  CHECK(kb.contains({n("g"), n("likes"), n("g")}));
}

TEST_CASE("random rule sets agree with the naive evaluator") {
  std::mt19937_64 rng(2024);
  BuiltinRegistry registry;
  register_comparison_builtins(registry);
  for (int i = 0; i < 20; ++i) {
    const auto rc = random_case(rng);
    auto kb = build_kb(rc.world);
    run_to_fixpoint(kb, registry, rc.rules);
    CHECK(kb.dump() == render_dump(naive_fixpoint(rc.world, rc.rules)));
  }
}

TEST_CASE("detection chained with topology equals independent evaluation") {
  TempDir dir;
  write_scene(dir.path(), corridor(40, {{"Mast", {5, 2, 3}, {0.3, 0.3, 6}},
                                        {"Mast", {15, -2, 3.5}, {0.3, 0.3, 5}},  // floats 1 m up
                                        {"Mast", {30, 0, 3}, {0.3, 0.3, 6}}}));
  auto kb = make_scene_kb(dir.path().string());
  auto box = make_toolbox({});
  const auto rules = parse_rules(
      "Scene(?s) ^ 3D_swrlb_Processing:VerticalElementDetection(?x, ?s) ^ Ground(?g)"
      " ^ 3D_swrlb_Topology:IsConnected(?x, ?g) -> Mast(?x)",
      box.registry);
  std::set<std::pair<Name, Name>> chained;
  for (const auto& b : evaluate_body(kb, box.registry, rules[0].body)) {
    chained.insert({std::get<Name>(b.at("?x")), std::get<Name>(b.at("?g"))});
  }
  std::set<std::pair<Name, Name>> separate;
  const std::vector<RuleAtom> first(rules[0].body.begin(), rules[0].body.begin() + 3);
  for (const auto& b : evaluate_body(kb, box.registry, first)) {
    const Name x = std::get<Name>(b.at("?x")), g = std::get<Name>(b.at("?g"));
    if (is_connected(*box_of(kb, x), *box_of(kb, g), TopoParams{}.contact_eps)) separate.insert({x, g});
  }
  CHECK(evaluate_body(kb, box.registry, first).size() == 3);
  CHECK(chained.size() == 2);
  CHECK(chained == separate);
}

TEST_CASE("default rules on the reference scene agree with a frozen-snapshot evaluator") {
  TempDir dir;
  write_scene(dir.path(), reference_spec());
  const auto rules_text = default_rules();

  auto engine_box = make_toolbox({});
  auto engine_kb = make_scene_kb(dir.path().string());
  const auto rules = parse_rules(rules_text, engine_box.registry);
  const auto stats = run_to_fixpoint(engine_kb, engine_box.registry, rules);
  for (std::size_t i = 1; i < stats.facts_after_pass.size(); ++i) {
    CHECK(stats.facts_after_pass[i] >= stats.facts_after_pass[i - 1]);
  }

  auto naive_box = make_toolbox({});
  const auto expected = jacobi_dump(make_scene_kb(dir.path().string()), naive_box.registry, rules);
  CHECK(engine_kb.dump() == expected);
}

}
