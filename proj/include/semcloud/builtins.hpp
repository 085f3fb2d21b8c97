#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semcloud/kb.hpp"

namespace semcloud {

/// How a built-in participates in body evaluation.
///  - Test: every argument bound; the call filters.
///  - Relational: may bind the declared positions by enumerating existing
///    individuals, and may assert relations between them.
///  - Generative: may create individuals and bind them.
enum class BuiltinBehavior { Test, Relational, Generative };

std::string_view to_string(BuiltinBehavior behavior);

/// Argument slot handed to an evaluator: the bound value, or nullopt.
using ArgSlot = std::optional<Value>;

/// Returns every complete argument tuple consistent with the bound slots, in
/// a deterministic order. Evaluators may assert facts into the KB.
using BuiltinEvaluator =
    std::function<std::vector<std::vector<Value>>(KnowledgeBase&, std::span<const ArgSlot>)>;

struct BuiltinSpec {
  Name name;
  std::size_t min_arity = 0;
  std::size_t max_arity = 0;
  BuiltinBehavior behavior = BuiltinBehavior::Test;
  /// Positions a Relational/Generative evaluator may bind.
  std::vector<std::size_t> bindable;
  BuiltinEvaluator evaluate;

  bool accepts_arity(std::size_t n) const { return n >= min_arity && n <= max_arity; }
  bool may_bind(std::size_t position) const;
};

class BuiltinRegistry {
 public:
  /// Throws EngineError on a duplicate name.
  void add(BuiltinSpec spec);
  const BuiltinSpec* find(const Name& name) const;
  std::vector<Name> names() const;
  std::size_t size() const { return specs_.size(); }

  /// Names in a built-in namespace (`swrlb:`, `3D_swrlb_*:`) must resolve to
  /// a registered built-in.
  static bool is_builtin_namespace(const Name& name);

 private:
  std::map<Name, BuiltinSpec> specs_;
};

/// Wraps a boolean predicate over fully bound arguments as a Test built-in.
BuiltinSpec make_test_builtin(Name name, std::size_t arity,
                              std::function<bool(std::span<const Value>)> predicate);

/// swrlb:greaterThan, lessThan, greaterThanOrEqual, lessThanOrEqual, equal.
void register_comparison_builtins(BuiltinRegistry& registry);

}  // namespace semcloud
