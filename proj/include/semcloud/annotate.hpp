#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semcloud/kb.hpp"

namespace semcloud {

/// Text of the shipped railway rule file.
std::string_view default_rules();

/// FacilityElement > {Mast, Schaltanlage, Signal > {MainSignal, DistantSignal}},
/// and SignalCandidate under Vertical_BoundingBox. Requires seed_schema.
void declare_domain_classes(KnowledgeBase& kb);

struct Color {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
  friend bool operator==(const Color&, const Color&) = default;
};

class ColorMap {
 public:
  /// Mast, Schaltanlage, MainSignal, DistantSignal and Ground colours; grey
  /// for everything else.
  static ColorMap defaults();

  /// Applies `ClassName r g b` lines (`#` comments allowed) on top of this
  /// map. Throws IoError on a malformed line or a component outside [0, 1].
  void apply_overrides(std::string_view text);

  void set(const Name& cls, Color color);
  const std::map<Name, Color>& colors() const { return colors_; }
  Color fallback() const { return fallback_; }
  void set_fallback(Color color);

  /// Most specific mapped class the individual belongs to (deepest in the
  /// hierarchy, ties by name).
  std::optional<Name> pick_class(const KnowledgeBase& kb, const Name& individual) const;
  Color color_for(const KnowledgeBase& kb, const Name& individual) const;

 private:
  std::map<Name, Color> colors_;
  Color fallback_{0.6, 0.6, 0.6};
};

struct ClassCount {
  Name cls;
  std::size_t count = 0;
  friend bool operator==(const ClassCount&, const ClassCount&) = default;
};

/// Instance counts (direct and inherited) for every proper subclass of
/// DomainConcept, sorted by name.
std::vector<ClassCount> summarize(const KnowledgeBase& kb);

}  // namespace semcloud
