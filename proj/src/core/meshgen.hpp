#pragma once

#include <array>
#include <optional>

#include "core/mesh.hpp"

namespace dislox {

/// Structured unit-square triangulation: (n+1)^2 nodes, 2n^2 triangles with
/// a fixed bottom-left/top-right diagonal. Region tags come from axis boxes
/// (first match on the element centroid, default tag 1); fault segments must
/// be grid-aligned and become interior facets with the fault tag.
///
/// Boundary tags: 1 = bottom/left/right (clamped), 3 = top (traction-free),
/// 4 = the optional measurement sub-interval [xi0, xi1] of the top edge.
struct StructuredOpts {
  int n = 16;
  std::vector<std::pair<std::array<double, 4>, int>> region_boxes; // (x0,y0,x1,y1), tag
  std::set<int> omega_minus_tags;
  std::vector<std::array<double, 4>> fault_segments; // grid-aligned (x0,y0)-(x1,y1)
  std::optional<std::pair<double, double>> xi_interval;
};

struct GeneratedMesh {
  Mesh mesh;
  BoundaryRoles roles;
};

GeneratedMesh structured_square(const StructuredOpts& opts);

constexpr int kTagSigma = 1;
constexpr int kTagFault = 2;
constexpr int kTagFree = 3;
constexpr int kTagXi = 4;

} // namespace dislox
