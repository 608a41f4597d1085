#pragma once

#include <array>
#include <vector>

#include "core/geometry.hpp"

namespace dislox {

/// Constrained Delaunay triangulation of a point set in the plane.
/// Deterministic for a fixed input (fixed insertion order, no randomness).
/// Intended scale is a few thousand points; the implementation favors
/// robustness over asymptotics (cavities found by full scans).
struct CdtResult {
  std::vector<Vec2> points; // input points, same order
  std::vector<std::array<int, 3>> triangles; // CCW
};

CdtResult constrained_delaunay(const std::vector<Vec2>& points,
                               const std::vector<std::array<int, 2>>& segments);

/// Laplacian smoothing of non-locked vertices; a vertex move is kept only if
/// it does not invert any incident triangle and does not worsen the local
/// minimum angle. Deterministic sweep order.
void smooth_interior(CdtResult& cdt, const std::vector<char>& locked, int iterations);

/// Minimum interior angle over all triangles, degrees.
double min_angle_deg(const CdtResult& cdt);

} // namespace dislox
