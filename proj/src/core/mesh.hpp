#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "core/geometry.hpp"

namespace dislox {

/// Simplicial mesh with region-tagged elements and tagged facets.
/// 2D is the supported and tested path; `dim` is carried so the formats
/// stay stable if a 3D path is added later.
struct Mesh {
  int dim = 2;
  std::vector<Vec2> nodes;

  struct Element {
    int region = 0;
    std::array<int, 3> v{};
  };
  std::vector<Element> elements;

  struct Facet {
    int tag = 0;
    std::array<int, 2> v{};
  };
  std::vector<Facet> facets;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }

  double element_area(int e) const {
    const auto& el = elements[e];
    return 0.5 * signed_area2(nodes[el.v[0]], nodes[el.v[1]], nodes[el.v[2]]);
  }

  Vec2 element_centroid(int e) const {
    const auto& el = elements[e];
    return (nodes[el.v[0]] + nodes[el.v[1]] + nodes[el.v[2]]) / 3.0;
  }

  double diameter() const;
  std::set<int> region_tags() const;
};

/// Undirected edge key (sorted vertex pair).
struct EdgeKey {
  int a, b;
  EdgeKey(int u, int v) : a(u < v ? u : v), b(u < v ? v : u) {}
  bool operator<(const EdgeKey& o) const { return a != o.a ? a < o.a : b < o.b; }
  bool operator==(const EdgeKey& o) const { return a == o.a && b == o.b; }
};

/// Edge incidence of a mesh: for each edge, the (one or two) adjacent elements.
struct EdgeAdjacency {
  std::map<EdgeKey, std::array<int, 2>> edge_elems; // -1 marks "no element"

  static EdgeAdjacency build(const Mesh& mesh);
  bool is_boundary(const EdgeKey& e) const;
};

/// Facet-tag roles of the boundary and of the fault, per scenario.
struct BoundaryRoles {
  std::set<int> sigma_tags;           // clamped (buried) boundary
  std::set<int> free_tags;            // traction-free boundary
  std::set<int> xi_tags;              // measurement patch, subset of free
  std::set<int> fault_tags;           // interior fault facets
  std::set<int> omega_minus_regions;  // region tags whose union is the enclosed side
};

/// Full structural validation; throws TopologyError/ConfigError on violation.
/// Checks: vertex ids in range, positive element areas, conforming edges
/// (every edge shared by at most two elements), connected element union,
/// facet entries matching real mesh edges.
void validate_mesh(const Mesh& mesh);

/// Role validation against a validated mesh: sigma/free tags disjoint and
/// tiling the boundary exactly, xi contained in free, fault facets interior
/// and separating omega-minus from the rest.
void validate_roles(const Mesh& mesh, const BoundaryRoles& roles);

} // namespace dislox
