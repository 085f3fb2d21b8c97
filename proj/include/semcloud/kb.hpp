#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace semcloud {

/// Prefix applied to names written without one (`Mast` -> `dbb:Mast`).
inline constexpr std::string_view kDefaultPrefix = "dbb";

/// Prefixed identifier, rendered `prefix:local`.
///
/// Ordering and equality work on the rendered form, so sorted containers of
/// names come out in the same order as their textual dump.
class Name {
 public:
  Name() = default;
  Name(std::string_view prefix, std::string_view local);

  /// Parses `prefix:local`; a bare `local` gets kDefaultPrefix.
  static Name parse(std::string_view text);

  std::string_view prefix() const { return std::string_view(text_).substr(0, colon_); }
  std::string_view local() const { return std::string_view(text_).substr(colon_ + 1); }
  const std::string& str() const { return text_; }
  bool empty() const { return text_.empty(); }

  friend bool operator==(const Name& a, const Name& b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const Name& a, const Name& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  std::string text_;
  std::size_t colon_ = 0;
};

/// Tagged data value: finite real, string, or boolean.
class Literal {
 public:
  enum class Kind { Real, String, Boolean };

  static Literal real(double value);
  static Literal string(std::string value);
  static Literal boolean(bool value);

  Kind kind() const { return static_cast<Kind>(value_.index()); }
  bool is_real() const { return kind() == Kind::Real; }
  double as_real() const { return std::get<double>(value_); }
  const std::string& as_string() const { return std::get<std::string>(value_); }
  bool as_bool() const { return std::get<bool>(value_); }

  /// Triple-dump rendering: `"<value>"^^real|string|bool`, reals at 6 decimals.
  std::string str() const;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend bool operator<(const Literal& a, const Literal& b) { return a.value_ < b.value_; }

 private:
  explicit Literal(std::variant<double, std::string, bool> v) : value_(std::move(v)) {}
  std::variant<double, std::string, bool> value_;
};

using Value = std::variant<Name, Literal>;

std::string to_string(const Value& v);

/// Rule/query variable; the name carries its leading `?`.
struct Variable {
  std::string name;
  friend bool operator==(const Variable&, const Variable&) = default;
  friend bool operator<(const Variable& a, const Variable& b) { return a.name < b.name; }
};

using Term = std::variant<Variable, Name, Literal>;

std::string to_string(const Term& t);

struct Assertion {
  Name subject;
  Name predicate;
  Value object;

  friend bool operator==(const Assertion&, const Assertion&) = default;
  friend bool operator<(const Assertion& a, const Assertion& b);
};

/// Triple pattern; any position may hold a variable.
struct Pattern {
  Term subject;
  Term predicate;
  Term object;
};

/// Variable name (with `?`) to bound value.
using Binding = std::map<std::string, Value>;

enum class PropertyKind { Object, Data, Any };

/// In-memory fact store with a class DAG and a property hierarchy.
///
/// Queries answer over the entailed fact set: a type fact also holds for every
/// superclass of its class, and a property fact for every super-property.
/// Stored facts (and the dump) contain only what was asserted.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(const KnowledgeBase& other);
  KnowledgeBase& operator=(const KnowledgeBase& other);
  KnowledgeBase(KnowledgeBase&&) noexcept = default;
  KnowledgeBase& operator=(KnowledgeBase&&) noexcept = default;

  static const Name& type_predicate();

  void declare_class(const Name& cls, std::span<const Name> parents = {});
  void declare_class(const Name& cls, std::initializer_list<Name> parents) {
    declare_class(cls, std::span<const Name>(parents.begin(), parents.size()));
  }
  void declare_property(const Name& property, PropertyKind kind,
                        const std::optional<Name>& parent = std::nullopt);
  void add_individual(const Name& individual);

  bool has_class(const Name& cls) const { return class_parents_.contains(cls); }
  bool has_property(const Name& property) const { return properties_.contains(property); }
  bool has_individual(const Name& individual) const { return individuals_.contains(individual); }
  std::optional<PropertyKind> property_kind(const Name& property) const;

  /// Reflexive-transitive subsumption.
  bool is_subclass(const Name& sub, const Name& super) const;
  bool is_subproperty(const Name& sub, const Name& super) const;
  /// Every declared class below `cls`, including `cls`; sorted.
  std::vector<Name> subclasses_of(const Name& cls) const;
  std::vector<Name> superclasses_of(const Name& cls) const;
  std::vector<Name> parents_of(const Name& cls) const;
  /// Longest parent chain from `cls` to a root (roots have depth 0).
  std::size_t class_depth(const Name& cls) const;
  std::vector<Name> classes() const;

  /// Returns true iff the fact was new.
  bool assert_fact(const Assertion& fact);
  bool contains(const Assertion& fact) const { return facts_.contains(fact); }

  std::vector<Binding> query(const Pattern& pattern) const;

  std::vector<Name> individuals_of(const Name& cls) const;
  /// Asserted (not inferred) classes of an individual, sorted.
  std::vector<Name> types_of(const Name& individual) const;
  /// Smallest stored object of `property` on `individual` that is a literal.
  std::optional<Literal> data_value(const Name& individual, const Name& property) const;

  const std::set<Assertion>& facts() const { return facts_; }
  std::size_t fact_count() const { return facts_.size(); }
  const std::set<Name>& individuals() const { return individuals_; }

  /// Drops facts and individuals; the schema stays.
  void reset_facts();

  /// Tab-separated `subject predicate object` lines, sorted, newline-terminated.
  std::string dump() const;

 private:
  struct PropertyInfo {
    PropertyKind kind;
    std::optional<Name> parent;
  };

  std::vector<Name> subproperties_of(const Name& property) const;
  std::vector<Name> superproperties_of(const Name& property) const;
  void rebuild_indexes();
  void for_each_entailed(const Assertion& fact,
                         const std::function<void(const Name&, const Value&)>& fn) const;

  std::map<Name, std::set<Name>> class_parents_;
  std::map<Name, std::set<Name>> class_children_;
  std::map<Name, PropertyInfo> properties_;
  std::set<Name> individuals_;
  std::set<Assertion> facts_;
  std::map<Name, std::vector<const Assertion*>> by_predicate_;
  std::map<Name, std::vector<const Assertion*>> by_subject_;
};

/// Formats a real with a fixed number of decimals; never prints `-0.000`.
std::string format_fixed(double value, int decimals);

}  // namespace semcloud
