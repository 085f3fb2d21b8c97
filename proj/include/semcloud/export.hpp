#pragma once

#include <string>

#include "semcloud/annotate.hpp"
#include "semcloud/kb.hpp"

namespace semcloud {

/// VRML97 world with one coloured Box per Geometry individual, ordered by
/// name. Each node is preceded by `# <id> <class>`. Throws KbError when a
/// geometry individual lacks one of its box data properties.
std::string export_vrml(const KnowledgeBase& kb, const ColorMap& colors);

/// Sorted triple dump of the KB.
std::string export_triples(const KnowledgeBase& kb);

}  // namespace semcloud
