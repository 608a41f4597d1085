#pragma once

#include <map>
#include <utility>
#include <vector>

#include "core/mesh.hpp"

namespace dislox {

/// An interface facet oriented so that its normal points out of the enclosed
/// side (rot90 of a->b, i.e. the left normal of the directed edge).
struct OrientedFacet {
  int a = -1;
  int b = -1;
  int elem_minus = -1; // adjacent element inside omega_minus
  int elem_plus = -1;  // adjacent element outside
};

/// Fault surface S, its closed extension Gamma = boundary of omega_minus,
/// and the split-node bookkeeping. Coordinates of the fault polyline and of
/// the fault boundary nodes are copied in so distance queries need no mesh.
struct FaultTopology {
  std::vector<OrientedFacet> s_facets;
  std::vector<OrientedFacet> gamma_facets;   // includes s_facets
  std::vector<int> s_boundary_nodes;         // nodes of the fault edge (not split)
  std::vector<int> s_interior_nodes;         // sorted; these get duplicated
  std::vector<int> gamma_nodes;              // sorted node ids on Gamma
  std::map<int, int> split_map;              // interior S node -> plus-side duplicate
  std::set<int> omega_minus_regions;

  std::vector<std::pair<Vec2, Vec2>> s_facet_coords;
  std::vector<Vec2> s_boundary_coords;
  double domain_diameter = 0.0;

  bool empty() const { return s_facets.empty(); }
  double fault_length() const;
};

/// Derive Gamma from the omega_minus region tags, collect the fault facets,
/// check Assumption-style geometry (Gamma closed and interior, S a manifold
/// strict subset of Gamma) and orient everything outward of omega_minus.
FaultTopology build_fault_topology(const Mesh& mesh, const BoundaryRoles& roles);

/// Duplicate every interior fault node, rebind the plus-side elements to the
/// duplicates and record the pairing in ft.split_map. Fault boundary nodes
/// are left alone, which is what keeps slips that vanish on the fault edge
/// representable exactly. Returns the split mesh; `mesh` is not modified.
Mesh split_fault_nodes(const Mesh& mesh, FaultTopology& ft);

/// Discrete weight: Euclidean distance from x (a point on S) to the fault
/// boundary node set. Positive strictly inside S, zero exactly on the ends.
double weight_function(const FaultTopology& ft, const Vec2& x);

} // namespace dislox
