#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "semcloud/builtins.hpp"
#include "semcloud/kb.hpp"
#include "semcloud/rules.hpp"

namespace semcloud {

/// Left-to-right join of the body atoms. Class and property atoms match via
/// KnowledgeBase::query; built-ins dispatch on their behavior. Throws
/// EngineError when a Test built-in sees an unbound argument, or a built-in
/// is asked to bind a position it does not declare.
std::vector<Binding> evaluate_body(KnowledgeBase& kb, const BuiltinRegistry& registry,
                                   std::span<const RuleAtom> body);

/// Asserts the head atoms under `binding`; returns the number of new facts.
/// Heads may classify or relate existing individuals but never create one.
std::size_t assert_head(KnowledgeBase& kb, std::span<const RuleAtom> head, const Binding& binding);

/// Declares classes and properties that the rules mention but the KB lacks.
/// Unknown classes go under DomainConcept (when declared); one warning each.
std::vector<std::string> prepare_kb_for_rules(KnowledgeBase& kb, std::span<const Rule> rules);

struct RunStats {
  /// Passes executed, including the final one that added nothing.
  std::size_t iterations = 0;
  std::size_t facts_added = 0;
  /// Per rule: head instantiations that added at least one fact.
  std::vector<std::size_t> fire_counts;
  /// KB fact count after each pass.
  std::vector<std::size_t> facts_after_pass;
  std::vector<std::string> warnings;
};

struct RunOptions {
  std::size_t max_iters = 100;
  /// Called after every pass with the 1-based pass number.
  std::function<void(std::size_t, const KnowledgeBase&)> on_pass;
};

/// Repeats passes over the rules in order until a pass adds no fact.
/// Throws FixpointError, naming the rules still firing, when `max_iters`
/// passes were not enough.
RunStats run_to_fixpoint(KnowledgeBase& kb, const BuiltinRegistry& registry,
                         std::span<const Rule> rules, const RunOptions& options = {});

}  // namespace semcloud
