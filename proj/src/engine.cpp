#include "semcloud/engine.hpp"

#include "semcloud/error.hpp"
#include "semcloud/schema.hpp"

namespace semcloud {

namespace {

Term resolve(const Term& term, const Binding& binding) {
  if (const auto* v = std::get_if<Variable>(&term)) {
    auto it = binding.find(v->name);
    if (it == binding.end()) return term;
    return std::visit([](const auto& value) -> Term { return value; }, it->second);
  }
  return term;
}

std::optional<Value> value_of(const Term& term, const Binding& binding) {
  const Term resolved = resolve(term, binding);
  if (const auto* n = std::get_if<Name>(&resolved)) return Value(*n);
  if (const auto* l = std::get_if<Literal>(&resolved)) return Value(*l);
  return std::nullopt;
}

std::string rule_title(const Rule& rule, std::size_t index) {
  if (!rule.label.empty()) return "[" + rule.label + "]";
  std::string title = "rule #" + std::to_string(index + 1);
  if (rule.line) title += " (line " + std::to_string(rule.line) + ")";
  return title;
}

void extend_with_query(const KnowledgeBase& kb, const Binding& binding, const Pattern& pattern,
                       std::vector<Binding>& out) {
  for (auto& match : kb.query(pattern)) {
    Binding merged = binding;
    merged.merge(match);
    out.push_back(std::move(merged));
  }
}

void extend_with_builtin(KnowledgeBase& kb, const BuiltinRegistry& registry,
                         const BuiltinAtom& atom, const Binding& binding,
                         std::vector<Binding>& out) {
  const BuiltinSpec* spec = registry.find(atom.name);
  if (spec == nullptr) throw EngineError("unknown built-in " + atom.name.str());
  if (!spec->accepts_arity(atom.args.size())) {
    throw EngineError("built-in " + atom.name.str() + " called with " +
                      std::to_string(atom.args.size()) + " arguments");
  }

  std::vector<ArgSlot> slots;
  slots.reserve(atom.args.size());
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    auto value = value_of(atom.args[i], binding);
    if (!value) {
      const auto& var = std::get<Variable>(atom.args[i]).name;
      if (spec->behavior == BuiltinBehavior::Test) {
        throw EngineError("test built-in " + atom.name.str() + " called with unbound argument " +
                          var);
      }
      if (!spec->may_bind(i)) {
        throw EngineError("built-in " + atom.name.str() + " cannot bind argument " +
                          std::to_string(i + 1) + " (" + var + ")");
      }
    }
    slots.push_back(std::move(value));
  }

  for (auto& tuple : spec->evaluate(kb, slots)) {
    if (tuple.size() != atom.args.size()) {
      throw EngineError("built-in " + atom.name.str() + " returned a tuple of wrong size");
    }
    Binding extended = binding;
    bool consistent = true;
    for (std::size_t i = 0; i < tuple.size() && consistent; ++i) {
      if (const auto* v = std::get_if<Variable>(&atom.args[i])) {
        auto [it, inserted] = extended.emplace(v->name, tuple[i]);
        consistent = inserted || it->second == tuple[i];
      } else {
        consistent = slots[i] && *slots[i] == tuple[i];
      }
    }
    if (consistent) out.push_back(std::move(extended));
  }
}

}  // namespace

std::vector<Binding> evaluate_body(KnowledgeBase& kb, const BuiltinRegistry& registry,
                                   std::span<const RuleAtom> body) {
  std::vector<Binding> current{Binding{}};
  for (const auto& atom : body) {
    std::vector<Binding> next;
    for (const auto& binding : current) {
      if (const auto* c = std::get_if<ClassAtom>(&atom)) {
        extend_with_query(kb, binding,
                          {resolve(c->arg, binding), KnowledgeBase::type_predicate(), c->cls},
                          next);
      } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
        extend_with_query(
            kb, binding,
            {resolve(p->subject, binding), p->property, resolve(p->object, binding)}, next);
      } else {
        extend_with_builtin(kb, registry, std::get<BuiltinAtom>(atom), binding, next);
      }
    }
    current = std::move(next);
    if (current.empty()) break;
  }
  return current;
}

std::size_t assert_head(KnowledgeBase& kb, std::span<const RuleAtom> head,
                        const Binding& binding) {
  auto individual = [&](const Term& term, const Name& where) -> Name {
    auto value = value_of(term, binding);
    if (!value) throw EngineError("unbound head variable in " + where.str());
    const auto* name = std::get_if<Name>(&*value);
    if (name == nullptr) {
      throw EngineError("head atom " + where.str() + " needs an individual, got " +
                        to_string(*value));
    }
    if (!kb.has_individual(*name)) {
      throw EngineError("head atom " + where.str() + " refers to unknown individual " +
                        name->str() + "; rules cannot create individuals");
    }
    return *name;
  };

  std::size_t added = 0;
  for (const auto& atom : head) {
    if (const auto* c = std::get_if<ClassAtom>(&atom)) {
      added += kb.assert_fact({individual(c->arg, c->cls), KnowledgeBase::type_predicate(), c->cls});
    } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
      const Name subject = individual(p->subject, p->property);
      auto object = value_of(p->object, binding);
      if (!object) throw EngineError("unbound head variable in " + p->property.str());
      added += kb.assert_fact({subject, p->property, *object});
    } else {
      throw EngineError("built-in " + std::get<BuiltinAtom>(atom).name.str() +
                        " cannot appear in a rule head");
    }
  }
  return added;
}

std::vector<std::string> prepare_kb_for_rules(KnowledgeBase& kb, std::span<const Rule> rules) {
  std::vector<std::string> warnings;
  auto visit = [&](const RuleAtom& atom) {
    if (const auto* c = std::get_if<ClassAtom>(&atom)) {
      if (kb.has_class(c->cls)) return;
      if (kb.has_class(vocab::DomainConcept)) {
        kb.declare_class(c->cls, {vocab::DomainConcept});
        warnings.push_back("class " + c->cls.str() + " not declared; added under " +
                           vocab::DomainConcept.str());
      } else {
        kb.declare_class(c->cls);
        warnings.push_back("class " + c->cls.str() + " not declared; added as a root class");
      }
    } else if (const auto* p = std::get_if<PropertyAtom>(&atom)) {
      if (!kb.has_property(p->property)) kb.declare_property(p->property, PropertyKind::Any);
    }
  };
  for (const auto& rule : rules) {
    for (const auto& a : rule.body) visit(a);
    for (const auto& a : rule.head) visit(a);
  }
  return warnings;
}

RunStats run_to_fixpoint(KnowledgeBase& kb, const BuiltinRegistry& registry,
                         std::span<const Rule> rules, const RunOptions& options) {
  if (options.max_iters == 0) throw EngineError("max_iters must be at least 1");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const auto unsafe = unsafe_variables(rules[i]);
    if (!unsafe.empty()) {
      throw EngineError(rule_title(rules[i], i) + " is unsafe: head variable " + unsafe.front() +
                        " does not occur in the body");
    }
  }

  RunStats stats;
  stats.warnings = prepare_kb_for_rules(kb, rules);
  stats.fire_counts.assign(rules.size(), 0);
  const std::size_t initial = kb.fact_count();

  for (std::size_t pass = 1;; ++pass) {
    const std::size_t before = kb.fact_count();
    std::vector<std::size_t> firing;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      const std::size_t rule_before = kb.fact_count();
      for (const auto& binding : evaluate_body(kb, registry, rules[i].body)) {
        if (assert_head(kb, rules[i].head, binding) > 0) ++stats.fire_counts[i];
      }
      if (kb.fact_count() != rule_before) firing.push_back(i);
    }
    stats.iterations = pass;
    stats.facts_after_pass.push_back(kb.fact_count());
    if (options.on_pass) options.on_pass(pass, kb);
    if (kb.fact_count() == before) break;
    if (pass == options.max_iters) {
      std::string names;
      for (auto i : firing) names += (names.empty() ? "" : ", ") + rule_title(rules[i], i);
      throw FixpointError("no fixpoint after " + std::to_string(pass) +
                          " passes; still firing: " + names);
    }
  }
  stats.facts_added = kb.fact_count() - initial;
  return stats;
}

}  // namespace semcloud
