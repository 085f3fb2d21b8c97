#include "semcloud/annotate.hpp"

#include <charconv>
#include <set>

#include "semcloud/error.hpp"
#include "semcloud/schema.hpp"

namespace semcloud {

namespace {

constexpr std::string_view kDefaultRules =
#include "default_rules.inc"
    ;

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

}  // namespace

std::string_view default_rules() { return kDefaultRules; }

void declare_domain_classes(KnowledgeBase& kb) {
  const auto mast = Name::parse("Mast");
  const auto schaltanlage = Name::parse("Schaltanlage");
  const auto signal = Name::parse("Signal");
  kb.declare_class(mast, {vocab::FacilityElement});
  kb.declare_class(schaltanlage, {vocab::FacilityElement});
  kb.declare_class(signal, {vocab::FacilityElement});
  kb.declare_class(Name::parse("MainSignal"), {signal});
  kb.declare_class(Name::parse("DistantSignal"), {signal});
  kb.declare_class(Name::parse("SignalCandidate"), {vocab::VerticalBoundingBox});
}

ColorMap ColorMap::defaults() {
  ColorMap map;
  map.set(Name::parse("Mast"), {0.8, 0.1, 0.1});
  map.set(Name::parse("Schaltanlage"), {0.1, 0.1, 0.8});
  map.set(Name::parse("MainSignal"), {0.1, 0.7, 0.1});
  map.set(Name::parse("DistantSignal"), {0.9, 0.7, 0.1});
  map.set(vocab::Ground, {0.3, 0.3, 0.3});
  return map;
}

void ColorMap::set(const Name& cls, Color color) {
  for (double c : {color.r, color.g, color.b}) {
    if (!(c >= 0.0 && c <= 1.0)) throw IoError("colour of " + cls.str() + " outside [0, 1]");
  }
  colors_[cls] = color;
}

void ColorMap::set_fallback(Color color) {
  for (double c : {color.r, color.g, color.b}) {
    if (!(c >= 0.0 && c <= 1.0)) throw IoError("fallback colour outside [0, 1]");
  }
  fallback_ = color;
}

void ColorMap::apply_overrides(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = split_words(line);
    if (words.empty()) continue;
    const std::string where = "colour map line " + std::to_string(line_no);
    if (words.size() != 4) throw IoError(where + ": expected 'ClassName r g b'");
    double rgb[3];
    for (int i = 0; i < 3; ++i) {
      const auto w = words[i + 1];
      auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), rgb[i]);
      if (ec != std::errc() || ptr != w.data() + w.size()) {
        throw IoError(where + ": malformed component '" + std::string(w) + "'");
      }
    }
    Name cls;
    try {
      cls = Name::parse(words[0]);
    } catch (const KbError& e) {
      throw IoError(where + ": " + e.what());
    }
    set(cls, {rgb[0], rgb[1], rgb[2]});
  }
}

std::optional<Name> ColorMap::pick_class(const KnowledgeBase& kb, const Name& individual) const {
  std::set<Name> held;
  for (const auto& cls : kb.types_of(individual)) {
    for (const auto& super : kb.superclasses_of(cls)) held.insert(super);
  }
  std::optional<Name> best;
  std::size_t best_depth = 0;
  for (const auto& cls : held) {
    if (!colors_.contains(cls)) continue;
    const std::size_t depth = kb.class_depth(cls);
    // `held` iterates in name order, so strict > keeps the first name on ties.
    if (!best || depth > best_depth) {
      best = cls;
      best_depth = depth;
    }
  }
  return best;
}

Color ColorMap::color_for(const KnowledgeBase& kb, const Name& individual) const {
  if (auto cls = pick_class(kb, individual)) return colors_.at(*cls);
  return fallback_;
}

std::vector<ClassCount> summarize(const KnowledgeBase& kb) {
  std::vector<ClassCount> table;
  for (const auto& cls : kb.subclasses_of(vocab::DomainConcept)) {
    if (cls == vocab::DomainConcept) continue;
    table.push_back({cls, kb.individuals_of(cls).size()});
  }
  return table;
}

}  // namespace semcloud
