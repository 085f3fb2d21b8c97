#pragma once

#include "semcloud/builtins.hpp"
#include "semcloud/geom.hpp"

namespace semcloud {

struct TopoParams {
  double contact_eps = 0.10;
  double upper_eps = 0.25;
  double distance_tolerance = 50.0;

  /// Throws GeometryError on a negative tolerance.
  void validate() const;
};

/// Overlap of positive extent on all three axes.
bool intersect(const Aabb& a, const Aabb& b);
/// Not intersecting, and no farther apart than `contact_eps`.
bool touch(const Aabb& a, const Aabb& b, double contact_eps);
/// `a` sits on or above the top of `b` (within `upper_eps`) and their xy
/// footprints overlap with positive area.
bool upper(const Aabb& a, const Aabb& b, double upper_eps);
/// Dominant-extent axes differ.
bool perpendicular(const Aabb& a, const Aabb& b);
/// Box-centre distance equals `distance` within `tolerance`.
bool is_distant_from(const Aabb& a, const Aabb& b, double distance, double tolerance);
bool is_connected(const Aabb& a, const Aabb& b, double contact_eps);

/// Registers the `3D_swrlb_Topology:` built-ins. Each is Relational on its two
/// geometry arguments; optional trailing literals override the tolerances:
///   Intersect(?x, ?y)            Perpendicular(?x, ?y)
///   Touch(?x, ?y [, eps])        IsConnected(?x, ?y [, eps])
///   Upper(?x, ?y [, eps])        IsDistantFrom(?x, ?y, d [, tol])
/// Every satisfied pair asserts the same-named object property.
void register_topology_builtins(BuiltinRegistry& registry, const TopoParams& params = {});

}  // namespace semcloud
