#include "semcloud/kb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>

#include "semcloud/error.hpp"

namespace semcloud {

namespace {

bool valid_name_part(std::string_view part) {
  if (part.empty()) return false;
  return std::none_of(part.begin(), part.end(), [](char c) {
    return c == ':' || c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

std::string escape_string(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out;
}

// Sort key for query results: rendered form first, exact value as tiebreak.
std::string sort_key(const Value& v) {
  if (const auto* n = std::get_if<Name>(&v)) return n->str();
  const auto& lit = std::get<Literal>(v);
  std::string key = lit.str();
  if (lit.is_real()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", lit.as_real());
    key += '\x01';
    key += buf;
  }
  return key;
}

bool bind_term(const Term& term, const Value& value, Binding& binding) {
  return std::visit(
      [&](const auto& t) -> bool {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Variable>) {
          auto [it, inserted] = binding.emplace(t.name, value);
          return inserted || it->second == value;
        } else {
          const auto* v = std::get_if<T>(&value);
          return v != nullptr && *v == t;
        }
      },
      term);
}

void collect_variables(const Term& term, std::vector<std::string>& names) {
  if (const auto* v = std::get_if<Variable>(&term)) {
    if (std::find(names.begin(), names.end(), v->name) == names.end()) names.push_back(v->name);
  }
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string out(buf);
  if (out.front() == '-' &&
      std::all_of(out.begin() + 1, out.end(), [](char c) { return c == '0' || c == '.'; })) {
    out.erase(out.begin());
  }
  return out;
}

Name::Name(std::string_view prefix, std::string_view local) {
  if (!valid_name_part(prefix) || !valid_name_part(local)) {
    throw KbError("invalid name '" + std::string(prefix) + ":" + std::string(local) + "'");
  }
  text_.reserve(prefix.size() + local.size() + 1);
  text_.append(prefix).append(1, ':').append(local);
  colon_ = prefix.size();
}

Name Name::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return Name(kDefaultPrefix, text);
  return Name(text.substr(0, colon), text.substr(colon + 1));
}

Literal Literal::real(double value) {
  if (!std::isfinite(value)) throw KbError("real literal must be finite");
  return Literal(value);
}

Literal Literal::string(std::string value) { return Literal(std::move(value)); }

Literal Literal::boolean(bool value) { return Literal(value); }

std::string Literal::str() const {
  switch (kind()) {
    case Kind::Real: return "\"" + format_fixed(as_real(), 6) + "\"^^real";
    case Kind::String: return "\"" + escape_string(as_string()) + "\"^^string";
    case Kind::Boolean: return std::string(as_bool() ? "\"true\"" : "\"false\"") + "^^bool";
  }
  return {};
}

std::string to_string(const Value& v) {
  if (const auto* n = std::get_if<Name>(&v)) return n->str();
  return std::get<Literal>(v).str();
}

std::string to_string(const Term& t) {
  if (const auto* v = std::get_if<Variable>(&t)) return v->name;
  if (const auto* n = std::get_if<Name>(&t)) return n->str();
  return std::get<Literal>(t).str();
}

bool operator<(const Assertion& a, const Assertion& b) {
  if (a.subject != b.subject) return a.subject < b.subject;
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  return a.object < b.object;
}

const Name& KnowledgeBase::type_predicate() {
  static const Name type("rdf", "type");
  return type;
}

void KnowledgeBase::declare_class(const Name& cls, std::span<const Name> parents) {
  for (const auto& parent : parents) {
    if (!has_class(parent)) {
      throw KbError("unknown parent class " + parent.str() + " for " + cls.str());
    }
    if (parent == cls || is_subclass(parent, cls)) {
      throw KbError("declaring " + cls.str() + " under " + parent.str() + " introduces a cycle");
    }
  }
  auto& own = class_parents_[cls];
  class_children_.try_emplace(cls);
  for (const auto& parent : parents) {
    own.insert(parent);
    class_children_[parent].insert(cls);
  }
}

void KnowledgeBase::declare_property(const Name& property, PropertyKind kind,
                                     const std::optional<Name>& parent) {
  if (parent) {
    if (!has_property(*parent)) {
      throw KbError("unknown parent property " + parent->str() + " for " + property.str());
    }
    if (*parent == property || is_subproperty(*parent, property)) {
      throw KbError("declaring " + property.str() + " under " + parent->str() +
                    " introduces a cycle");
    }
  }
  auto it = properties_.find(property);
  if (it == properties_.end()) {
    properties_.emplace(property, PropertyInfo{kind, parent});
    return;
  }
  auto& info = it->second;
  if (info.kind == PropertyKind::Any) {
    info.kind = kind;
  } else if (kind != PropertyKind::Any && kind != info.kind) {
    throw KbError("property " + property.str() + " redeclared with a different kind");
  }
  if (parent) info.parent = parent;
}

void KnowledgeBase::add_individual(const Name& individual) { individuals_.insert(individual); }

std::optional<PropertyKind> KnowledgeBase::property_kind(const Name& property) const {
  auto it = properties_.find(property);
  if (it == properties_.end()) return std::nullopt;
  return it->second.kind;
}

bool KnowledgeBase::is_subclass(const Name& sub, const Name& super) const {
  if (sub == super) return true;
  auto supers = superclasses_of(sub);
  return std::binary_search(supers.begin(), supers.end(), super);
}

bool KnowledgeBase::is_subproperty(const Name& sub, const Name& super) const {
  std::optional<Name> current = sub;
  while (current) {
    if (*current == super) return true;
    auto it = properties_.find(*current);
    if (it == properties_.end()) return false;
    current = it->second.parent;
  }
  return false;
}

std::vector<Name> KnowledgeBase::subclasses_of(const Name& cls) const {
  if (!has_class(cls)) return {};
  std::set<Name> seen{cls};
  std::deque<Name> frontier{cls};
  while (!frontier.empty()) {
    auto it = class_children_.find(frontier.front());
    frontier.pop_front();
    if (it == class_children_.end()) continue;
    for (const auto& child : it->second) {
      if (seen.insert(child).second) frontier.push_back(child);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Name> KnowledgeBase::superclasses_of(const Name& cls) const {
  std::set<Name> seen{cls};
  std::deque<Name> frontier{cls};
  while (!frontier.empty()) {
    auto it = class_parents_.find(frontier.front());
    frontier.pop_front();
    if (it == class_parents_.end()) continue;
    for (const auto& parent : it->second) {
      if (seen.insert(parent).second) frontier.push_back(parent);
    }
  }
  return {seen.begin(), seen.end()};
}

std::vector<Name> KnowledgeBase::parents_of(const Name& cls) const {
  auto it = class_parents_.find(cls);
  if (it == class_parents_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

std::size_t KnowledgeBase::class_depth(const Name& cls) const {
  std::size_t depth = 0;
  for (const auto& parent : parents_of(cls)) depth = std::max(depth, 1 + class_depth(parent));
  return depth;
}

std::vector<Name> KnowledgeBase::classes() const {
  std::vector<Name> out;
  out.reserve(class_parents_.size());
  for (const auto& [cls, parents] : class_parents_) out.push_back(cls);
  return out;
}

std::vector<Name> KnowledgeBase::subproperties_of(const Name& property) const {
  std::vector<Name> out;
  for (const auto& [name, info] : properties_) {
    if (is_subproperty(name, property)) out.push_back(name);
  }
  return out;
}

std::vector<Name> KnowledgeBase::superproperties_of(const Name& property) const {
  std::vector<Name> out;
  std::optional<Name> current = property;
  while (current) {
    out.push_back(*current);
    auto it = properties_.find(*current);
    if (it == properties_.end()) break;
    current = it->second.parent;
  }
  return out;
}

bool KnowledgeBase::assert_fact(const Assertion& fact) {
  if (fact.predicate == type_predicate()) {
    const auto* cls = std::get_if<Name>(&fact.object);
    if (cls == nullptr) throw KbError("type assertion on " + fact.subject.str() + " needs a class");
    if (!has_class(*cls)) throw KbError("undeclared class " + cls->str());
    individuals_.insert(fact.subject);
  } else {
    auto it = properties_.find(fact.predicate);
    if (it == properties_.end()) throw KbError("undeclared property " + fact.predicate.str());
    if (!has_individual(fact.subject)) {
      throw KbError("unknown individual " + fact.subject.str() + " in " + fact.predicate.str());
    }
    const auto kind = it->second.kind;
    if (const auto* object = std::get_if<Name>(&fact.object)) {
      if (kind == PropertyKind::Data) {
        throw KbError("data property " + fact.predicate.str() + " given an individual");
      }
      if (!has_individual(*object)) {
        throw KbError("unknown individual " + object->str() + " in " + fact.predicate.str());
      }
    } else if (kind == PropertyKind::Object) {
      throw KbError("object property " + fact.predicate.str() + " given a literal");
    }
  }

  auto [it, inserted] = facts_.insert(fact);
  if (inserted) {
    by_predicate_[it->predicate].push_back(&*it);
    by_subject_[it->subject].push_back(&*it);
  }
  return inserted;
}

void KnowledgeBase::for_each_entailed(
    const Assertion& fact, const std::function<void(const Name&, const Value&)>& fn) const {
  if (fact.predicate == type_predicate()) {
    for (const auto& cls : superclasses_of(std::get<Name>(fact.object))) fn(fact.predicate, cls);
  } else {
    for (const auto& property : superproperties_of(fact.predicate)) fn(property, fact.object);
  }
}

std::vector<Binding> KnowledgeBase::query(const Pattern& pattern) const {
  if (std::holds_alternative<Literal>(pattern.subject) ||
      std::holds_alternative<Literal>(pattern.predicate)) {
    return {};
  }

  std::vector<const Assertion*> candidates;
  const auto* subject = std::get_if<Name>(&pattern.subject);
  const auto* predicate = std::get_if<Name>(&pattern.predicate);
  if (subject != nullptr) {
    auto it = by_subject_.find(*subject);
    if (it == by_subject_.end()) return {};
    candidates = it->second;
  } else if (predicate != nullptr) {
    const auto predicates = *predicate == type_predicate()
                                ? std::vector<Name>{type_predicate()}
                                : subproperties_of(*predicate);
    for (const auto& p : predicates) {
      auto it = by_predicate_.find(p);
      if (it != by_predicate_.end()) {
        candidates.insert(candidates.end(), it->second.begin(), it->second.end());
      }
    }
  } else {
    candidates.reserve(facts_.size());
    for (const auto& f : facts_) candidates.push_back(&f);
  }

  std::vector<std::string> variables;
  collect_variables(pattern.subject, variables);
  collect_variables(pattern.predicate, variables);
  collect_variables(pattern.object, variables);

  std::map<std::vector<std::string>, Binding> results;
  for (const auto* fact : candidates) {
    for_each_entailed(*fact, [&](const Name& p, const Value& object) {
      Binding binding;
      if (!bind_term(pattern.subject, fact->subject, binding)) return;
      if (!bind_term(pattern.predicate, p, binding)) return;
      if (!bind_term(pattern.object, object, binding)) return;
      std::vector<std::string> key;
      key.reserve(variables.size());
      for (const auto& v : variables) key.push_back(sort_key(binding.at(v)));
      results.emplace(std::move(key), std::move(binding));
    });
  }

  std::vector<Binding> out;
  out.reserve(results.size());
  for (auto& [key, binding] : results) out.push_back(std::move(binding));
  return out;
}

std::vector<Name> KnowledgeBase::individuals_of(const Name& cls) const {
  std::set<Name> out;
  const auto classes = subclasses_of(cls);
  auto it = by_predicate_.find(type_predicate());
  if (it == by_predicate_.end()) return {};
  for (const auto* fact : it->second) {
    if (std::binary_search(classes.begin(), classes.end(), std::get<Name>(fact->object))) {
      out.insert(fact->subject);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Name> KnowledgeBase::types_of(const Name& individual) const {
  std::vector<Name> out;
  auto it = by_subject_.find(individual);
  if (it == by_subject_.end()) return out;
  for (const auto* fact : it->second) {
    if (fact->predicate == type_predicate()) out.push_back(std::get<Name>(fact->object));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Literal> KnowledgeBase::data_value(const Name& individual,
                                                 const Name& property) const {
  auto it = by_subject_.find(individual);
  if (it == by_subject_.end()) return std::nullopt;
  std::optional<Literal> best;
  for (const auto* fact : it->second) {
    if (fact->predicate != property) continue;
    if (const auto* lit = std::get_if<Literal>(&fact->object)) {
      if (!best || *lit < *best) best = *lit;
    }
  }
  return best;
}

KnowledgeBase::KnowledgeBase(const KnowledgeBase& other)
    : class_parents_(other.class_parents_),
      class_children_(other.class_children_),
      properties_(other.properties_),
      individuals_(other.individuals_),
      facts_(other.facts_) {
  rebuild_indexes();
}

KnowledgeBase& KnowledgeBase::operator=(const KnowledgeBase& other) {
  if (this != &other) {
    KnowledgeBase copy(other);
    *this = std::move(copy);
  }
  return *this;
}

// The indexes point into facts_, so a copy needs its own.
void KnowledgeBase::rebuild_indexes() {
  by_predicate_.clear();
  by_subject_.clear();
  for (const auto& fact : facts_) {
    by_predicate_[fact.predicate].push_back(&fact);
    by_subject_[fact.subject].push_back(&fact);
  }
}

void KnowledgeBase::reset_facts() {
  facts_.clear();
  by_predicate_.clear();
  by_subject_.clear();
  individuals_.clear();
}

std::string KnowledgeBase::dump() const {
  std::vector<std::string> lines;
  lines.reserve(facts_.size());
  for (const auto& f : facts_) {
    lines.push_back(f.subject.str() + "\t" + f.predicate.str() + "\t" + to_string(f.object));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace semcloud
