#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semcloud/builtins.hpp"
#include "semcloud/kb.hpp"

namespace semcloud {

struct ClassAtom {
  Name cls;
  Term arg;
  friend bool operator==(const ClassAtom&, const ClassAtom&) = default;
};

struct PropertyAtom {
  Name property;
  Term subject;
  Term object;
  friend bool operator==(const PropertyAtom&, const PropertyAtom&) = default;
};

struct BuiltinAtom {
  Name name;
  std::vector<Term> args;
  friend bool operator==(const BuiltinAtom&, const BuiltinAtom&) = default;
};

using RuleAtom = std::variant<ClassAtom, PropertyAtom, BuiltinAtom>;

/// Horn clause `body -> head`. Heads hold class and property atoms only.
struct Rule {
  std::string label;
  std::vector<RuleAtom> body;
  std::vector<RuleAtom> head;
  /// 1-based source line of the rule's first token; 0 when built in code.
  std::size_t line = 0;

  friend bool operator==(const Rule& a, const Rule& b) {
    return a.label == b.label && a.body == b.body && a.head == b.head;
  }
};

std::set<std::string> variables_of(const RuleAtom& atom);
/// Head variables that never occur in the body.
std::vector<std::string> unsafe_variables(const Rule& rule);

/// Parses rule text; built-in atoms are resolved against `registry`.
/// Throws ParseError with line/column on syntax errors, unknown built-ins,
/// arity mismatches and unsafe heads.
std::vector<Rule> parse_rules(std::string_view text, const BuiltinRegistry& registry);

/// Normalised single-line form; parse(to_string(r)) == r.
std::string to_string(const Rule& rule);
std::string to_string(const RuleAtom& atom);
/// One normalised rule per line.
std::string print_rules(std::span<const Rule> rules);

}  // namespace semcloud
