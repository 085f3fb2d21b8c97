#include "semcloud/export.hpp"

#include <algorithm>

#include "semcloud/error.hpp"
#include "semcloud/schema.hpp"

namespace semcloud {

namespace {

std::string triple(double a, double b, double c) {
  return format_fixed(a, 4) + " " + format_fixed(b, 4) + " " + format_fixed(c, 4);
}

// Class named in the node comment: the colour-deciding class, else the
// deepest asserted class.
Name label_class(const KnowledgeBase& kb, const ColorMap& colors, const Name& individual) {
  if (auto cls = colors.pick_class(kb, individual)) return *cls;
  const auto types = kb.types_of(individual);
  return *std::max_element(types.begin(), types.end(), [&](const Name& a, const Name& b) {
    const auto da = kb.class_depth(a);
    const auto db = kb.class_depth(b);
    return da != db ? da < db : b < a;
  });
}

}  // namespace

std::string export_vrml(const KnowledgeBase& kb, const ColorMap& colors) {
  std::string out = "#VRML V2.0 utf8\n";
  for (const auto& individual : kb.individuals_of(vocab::Geometry)) {
    const auto box = box_of(kb, individual);
    if (!box) throw KbError("geometry " + individual.str() + " is missing a box data property");
    const Point3 c = box->center();
    const Point3 e = box->extent();
    const Color color = colors.color_for(kb, individual);

    out += "# " + individual.str() + " " + label_class(kb, colors, individual).str() + "\n";
    out += "Transform { translation " + triple(c.x, c.y, c.z) +
           " children [ Shape { appearance Appearance { material Material { diffuseColor " +
           triple(color.r, color.g, color.b) + " } } geometry Box { size " +
           triple(e.x, e.y, e.z) + " } } ] }\n";
  }
  return out;
}

std::string export_triples(const KnowledgeBase& kb) { return kb.dump(); }

}  // namespace semcloud
