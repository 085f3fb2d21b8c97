#include "semcloud/builtins.hpp"

#include <algorithm>

#include "semcloud/error.hpp"

namespace semcloud {

std::string_view to_string(BuiltinBehavior behavior) {
  switch (behavior) {
    case BuiltinBehavior::Test: return "test";
    case BuiltinBehavior::Relational: return "relational";
    case BuiltinBehavior::Generative: return "generative";
  }
  return "test";
}

bool BuiltinSpec::may_bind(std::size_t position) const {
  return behavior != BuiltinBehavior::Test &&
         std::find(bindable.begin(), bindable.end(), position) != bindable.end();
}

void BuiltinRegistry::add(BuiltinSpec spec) {
  if (!spec.evaluate) throw EngineError("built-in " + spec.name.str() + " has no evaluator");
  auto name = spec.name;
  if (!specs_.emplace(name, std::move(spec)).second) {
    throw EngineError("built-in " + name.str() + " registered twice");
  }
}

const BuiltinSpec* BuiltinRegistry::find(const Name& name) const {
  auto it = specs_.find(name);
  return it == specs_.end() ? nullptr : &it->second;
}

std::vector<Name> BuiltinRegistry::names() const {
  std::vector<Name> out;
  for (const auto& [name, spec] : specs_) out.push_back(name);
  return out;
}

bool BuiltinRegistry::is_builtin_namespace(const Name& name) {
  const auto prefix = name.prefix();
  return prefix == "swrlb" || prefix.starts_with("3D_swrlb");
}

BuiltinSpec make_test_builtin(Name name, std::size_t arity,
                              std::function<bool(std::span<const Value>)> predicate) {
  BuiltinSpec spec;
  spec.name = std::move(name);
  spec.min_arity = arity;
  spec.max_arity = arity;
  spec.behavior = BuiltinBehavior::Test;
  spec.evaluate = [predicate = std::move(predicate)](
                      KnowledgeBase&, std::span<const ArgSlot> args) {
    std::vector<Value> values;
    values.reserve(args.size());
    for (const auto& a : args) values.push_back(*a);
    std::vector<std::vector<Value>> out;
    if (predicate(values)) out.push_back(std::move(values));
    return out;
  };
  return spec;
}

void register_comparison_builtins(BuiltinRegistry& registry) {
  struct Comparison {
    const char* local;
    bool (*compare)(double, double);
  };
  static constexpr Comparison comparisons[] = {
      {"greaterThan", [](double a, double b) { return a > b; }},
      {"lessThan", [](double a, double b) { return a < b; }},
      {"greaterThanOrEqual", [](double a, double b) { return a >= b; }},
      {"lessThanOrEqual", [](double a, double b) { return a <= b; }},
  };
  for (const auto& c : comparisons) {
    registry.add(make_test_builtin(Name("swrlb", c.local), 2,
                                   [compare = c.compare](std::span<const Value> v) {
                                     const auto* a = std::get_if<Literal>(&v[0]);
                                     const auto* b = std::get_if<Literal>(&v[1]);
                                     if (!a || !b || !a->is_real() || !b->is_real()) return false;
                                     return compare(a->as_real(), b->as_real());
                                   }));
  }
  // Reals compare numerically; anything else by identity.
  registry.add(make_test_builtin(Name("swrlb", "equal"), 2, [](std::span<const Value> v) {
    return v[0] == v[1];
  }));
}

}  // namespace semcloud
