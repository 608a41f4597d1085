#include "core/meshgen.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace dislox {

namespace {

int grid_index(double v, int n, const char* what) {
  const double scaled = v * n;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9)
    throw ConfigError(std::string(what) + " coordinate " + std::to_string(v) +
                      " is not aligned to the 1/" + std::to_string(n) + " grid");
  const int idx = static_cast<int>(rounded);
  if (idx < 0 || idx > n)
    throw ConfigError(std::string(what) + " coordinate " + std::to_string(v) +
                      " is outside the unit square");
  return idx;
}

} // namespace

GeneratedMesh structured_square(const StructuredOpts& opts) {
  const int n = opts.n;
  if (n < 2) throw ConfigError("structured generator needs n >= 2");
  GeneratedMesh out;
  Mesh& mesh = out.mesh;
  mesh.dim = 2;

  const double h = 1.0 / n;
  auto node_id = [&](int i, int j) { return j * (n + 1) + i; };
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) mesh.nodes.push_back({i * h, j * h});

  auto region_of = [&](const Vec2& c) {
    for (const auto& [box, tag] : opts.region_boxes) {
      if (c.x >= box[0] && c.x <= box[2] && c.y >= box[1] && c.y <= box[3]) return tag;
    }
    return 1;
  };

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int v00 = node_id(i, j), v10 = node_id(i + 1, j);
      const int v01 = node_id(i, j + 1), v11 = node_id(i + 1, j + 1);
      Mesh::Element lower{0, {v00, v10, v11}};
      Mesh::Element upper{0, {v00, v11, v01}};
      lower.region = region_of((mesh.nodes[v00] + mesh.nodes[v10] + mesh.nodes[v11]) / 3.0);
      upper.region = region_of((mesh.nodes[v00] + mesh.nodes[v11] + mesh.nodes[v01]) / 3.0);
      mesh.elements.push_back(lower);
      mesh.elements.push_back(upper);
    }
  }

  int facet_id = 0;
  auto add_facet = [&](int tag, int a, int b) {
    mesh.facets.push_back({tag, {a, b}});
    ++facet_id;
  };

  // Boundary: bottom/left/right clamped, top free with optional xi window.
  int xi_lo = -1, xi_hi = -1;
  if (opts.xi_interval) {
    xi_lo = grid_index(opts.xi_interval->first, n, "xi");
    xi_hi = grid_index(opts.xi_interval->second, n, "xi");
    if (xi_lo >= xi_hi) throw ConfigError("empty xi interval");
  }
  for (int i = 0; i < n; ++i) add_facet(kTagSigma, node_id(i, 0), node_id(i + 1, 0));
  for (int j = 0; j < n; ++j) {
    add_facet(kTagSigma, node_id(0, j), node_id(0, j + 1));
    add_facet(kTagSigma, node_id(n, j), node_id(n, j + 1));
  }
  for (int i = 0; i < n; ++i) {
    const bool in_xi = xi_lo >= 0 && i >= xi_lo && i < xi_hi;
    add_facet(in_xi ? kTagXi : kTagFree, node_id(i, n), node_id(i + 1, n));
  }

  // Fault segments along grid lines.
  for (const auto& seg : opts.fault_segments) {
    const int i0 = grid_index(seg[0], n, "fault"), j0 = grid_index(seg[1], n, "fault");
    const int i1 = grid_index(seg[2], n, "fault"), j1 = grid_index(seg[3], n, "fault");
    if (j0 == j1) {
      for (int i = std::min(i0, i1); i < std::max(i0, i1); ++i)
        add_facet(kTagFault, node_id(i, j0), node_id(i + 1, j0));
    } else if (i0 == i1) {
      for (int j = std::min(j0, j1); j < std::max(j0, j1); ++j)
        add_facet(kTagFault, node_id(i0, j), node_id(i0, j + 1));
    } else {
      throw ConfigError("structured fault segments must be horizontal or vertical");
    }
  }

  out.roles.sigma_tags = {kTagSigma};
  out.roles.free_tags = {kTagFree};
  if (xi_lo >= 0) {
    out.roles.free_tags.insert(kTagXi);
    out.roles.xi_tags = {kTagXi};
  }
  if (!opts.fault_segments.empty()) out.roles.fault_tags = {kTagFault};
  out.roles.omega_minus_regions = opts.omega_minus_tags;

  validate_mesh(mesh);
  return out;
}

} // namespace dislox
