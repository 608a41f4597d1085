#include "core/fault_param.hpp"

#include <algorithm>
#include <cmath>

#include "core/cdt.hpp"
#include "core/errors.hpp"

namespace dislox {

void FaultParam::validate() const {
  if (knots.size() < 2) throw ConfigError("fault parameterization needs at least 2 knots");
  if (knots.size() != heights.size())
    throw ConfigError("fault knots and heights must have the same length");
  for (std::size_t i = 0; i + 1 < knots.size(); ++i)
    if (!(knots[i] < knots[i + 1])) throw ConfigError("fault knots must be strictly ascending");
}

std::vector<Vec2> fault_polyline(const FaultParam& fp) {
  fp.validate();
  std::vector<Vec2> out;
  out.reserve(fp.knots.size());
  for (std::size_t i = 0; i < fp.knots.size(); ++i)
    out.push_back(fp.frame_origin + rotate({fp.knots[i], fp.heights[i]}, fp.frame_angle));
  return out;
}

namespace {

// Deterministic jitter in [-0.5, 0.5) from integer coordinates.
double hash01(unsigned long long a, unsigned long long b, unsigned long long salt) {
  unsigned long long x = a * 0x9E3779B97F4A7C15ull ^ b * 0xC2B2AE3D27D4EB4Full ^ salt;
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDull;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ull;
  x ^= x >> 33;
  return static_cast<double>(x >> 11) / 9007199254740992.0 - 0.5;
}

// Subdivide the polyline so every chord is at most h long; subdivision
// points are exact convex combinations, so they lie on the polyline and the
// chord lengths sum to the polyline length.
std::vector<Vec2> densify(const std::vector<Vec2>& poly, double h) {
  std::vector<Vec2> out;
  out.push_back(poly[0]);
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    const double len = dist(poly[i], poly[i + 1]);
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / h)));
    for (int k = 1; k <= pieces; ++k) {
      const double t = static_cast<double>(k) / pieces;
      out.push_back(poly[i] * (1.0 - t) + poly[i + 1] * t);
    }
  }
  return out;
}

} // namespace

RealizedFault realize_fault(const FaultParam& fp, const MeshingOpts& opts) {
  fp.validate();
  const double h = opts.h;
  if (!(h > 0.0 && h <= 0.25)) throw ConfigError("mesh size h must be in (0, 0.25]");

  // Fault and closure polylines in physical coordinates.
  std::vector<Vec2> fault_frame, lower_frame;
  for (std::size_t i = 0; i < fp.knots.size(); ++i) {
    fault_frame.push_back({fp.knots[i], fp.heights[i]});
    lower_frame.push_back({fp.knots[i], fp.heights[i] - opts.depth});
  }
  auto to_phys = [&](const std::vector<Vec2>& fr) {
    std::vector<Vec2> out;
    for (const auto& p : fr) out.push_back(fp.frame_origin + rotate(p, fp.frame_angle));
    return out;
  };
  const std::vector<Vec2> fault_pts = densify(to_phys(fault_frame), h);
  const std::vector<Vec2> lower_pts = densify(to_phys(lower_frame), h);

  const auto& box = opts.safety_box;
  auto in_box = [&](const Vec2& p) {
    return p.x > box[0] && p.x < box[2] && p.y > box[1] && p.y < box[3];
  };
  for (const auto& p : fault_pts)
    if (!in_box(p)) throw GeometryError("fault curve leaves the safety box");
  for (const auto& p : lower_pts)
    if (!in_box(p)) throw GeometryError("fault closure leaves the safety box");

  // Side chains closing the enclosed region.
  auto side_chain = [&](const Vec2& top, const Vec2& bottom) {
    std::vector<Vec2> chain;
    const double len = dist(top, bottom);
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / h)));
    for (int k = 1; k < pieces; ++k) {
      const double t = static_cast<double>(k) / pieces;
      chain.push_back(top * (1.0 - t) + bottom * t);
    }
    return chain;
  };
  const std::vector<Vec2> left_chain = side_chain(fault_pts.front(), lower_pts.front());
  const std::vector<Vec2> right_chain = side_chain(fault_pts.back(), lower_pts.back());

  // Point set: boundary, constraint chains, jittered interior grid.
  std::vector<Vec2> pts;
  std::vector<std::array<int, 2>> segments;

  auto add_chain = [&](const std::vector<Vec2>& chain, bool closed_segments) {
    const int base = static_cast<int>(pts.size());
    for (const auto& p : chain) pts.push_back(p);
    if (closed_segments) {
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        segments.push_back({base + static_cast<int>(i), base + static_cast<int>(i) + 1});
    }
    return base;
  };

  // Outer boundary of the unit square with the measurement window endpoints
  // kept exact on the top side.
  const int nb = std::max(4, static_cast<int>(std::lround(1.0 / h)));
  auto side_params = [&](bool top) {
    std::vector<double> t;
    for (int i = 0; i <= nb; ++i) t.push_back(static_cast<double>(i) / nb);
    if (top) {
      t.push_back(opts.xi_interval.first);
      t.push_back(opts.xi_interval.second);
    }
    std::sort(t.begin(), t.end());
    std::vector<double> out;
    for (double v : t) {
      if (!out.empty() && v - out.back() < 0.3 / nb) {
        // keep the grid point only if no special point is that close
        if (v == opts.xi_interval.first || v == opts.xi_interval.second) out.back() = v;
        continue;
      }
      out.push_back(v);
    }
    return out;
  };

  std::vector<Vec2> boundary;
  for (double t : side_params(false))
    if (t < 1.0) boundary.push_back({t, 0.0});
  for (double t : side_params(false))
    if (t < 1.0) boundary.push_back({1.0, t});
  {
    auto tp = side_params(true);
    for (auto it = tp.rbegin(); it != tp.rend(); ++it)
      if (*it > 0.0) boundary.push_back({*it, 1.0});
  }
  for (double t : side_params(false))
    if (t < 1.0) boundary.push_back({0.0, 1.0 - t});
  const int b0 = add_chain(boundary, false);
  for (std::size_t i = 0; i < boundary.size(); ++i)
    segments.push_back(
        {b0 + static_cast<int>(i), b0 + static_cast<int>((i + 1) % boundary.size())});

  const int fault_base = add_chain(fault_pts, true);
  const int lower_base = add_chain(lower_pts, true);
  const int left_base = add_chain(left_chain, true);
  const int right_base = add_chain(right_chain, true);

  // Stitch the corners of the enclosed region.
  auto connect = [&](int a, int b) { segments.push_back({a, b}); };
  const int fl = fault_base, fr = fault_base + static_cast<int>(fault_pts.size()) - 1;
  const int ll = lower_base, lr = lower_base + static_cast<int>(lower_pts.size()) - 1;
  if (left_chain.empty()) {
    connect(fl, ll);
  } else {
    connect(fl, left_base);
    connect(left_base + static_cast<int>(left_chain.size()) - 1, ll);
  }
  if (right_chain.empty()) {
    connect(fr, lr);
  } else {
    connect(fr, right_base);
    connect(right_base + static_cast<int>(right_chain.size()) - 1, lr);
  }

  const int n_constraint_pts = static_cast<int>(pts.size());

  // Interior grid, jittered, kept away from constraints and the boundary.
  std::vector<std::pair<Vec2, Vec2>> seg_coords;
  for (const auto& s : segments) seg_coords.emplace_back(pts[s[0]], pts[s[1]]);
  const int ng = static_cast<int>(std::lround(1.0 / h));
  for (int j = 1; j < ng; ++j) {
    for (int i = 1; i < ng; ++i) {
      Vec2 p{i * h, j * h};
      p.x += 0.12 * h * hash01(i, j, 11);
      p.y += 0.12 * h * hash01(i, j, 77);
      double d = 1e300;
      for (const auto& [a, b] : seg_coords) d = std::min(d, point_segment_dist(p, a, b));
      if (d < 0.5 * h) continue;
      if (p.x < 0.6 * h || p.x > 1.0 - 0.6 * h || p.y < 0.6 * h || p.y > 1.0 - 0.6 * h) continue;
      pts.push_back(p);
    }
  }

  CdtResult cdt = constrained_delaunay(pts, segments);

  // Drop triangles outside the square (centroid test is enough: the square
  // boundary is constrained, so no triangle straddles it).
  std::vector<std::array<int, 3>> kept;
  for (const auto& t : cdt.triangles) {
    const Vec2 c = (cdt.points[t[0]] + cdt.points[t[1]] + cdt.points[t[2]]) / 3.0;
    if (c.x > 0.0 && c.x < 1.0 && c.y > 0.0 && c.y < 1.0) kept.push_back(t);
  }
  cdt.triangles = kept;

  std::vector<char> locked(cdt.points.size(), 0);
  for (int i = 0; i < n_constraint_pts; ++i) locked[i] = 1;
  smooth_interior(cdt, locked, opts.smooth_iterations);

  const double q = min_angle_deg(cdt);
  if (q < opts.min_angle_deg)
    throw GeometryError("mesh quality below the floor: min angle " + std::to_string(q) +
                        " deg < " + std::to_string(opts.min_angle_deg));

  // Region assignment: flood fill from a seed inside the enclosed region,
  // not crossing constrained edges.
  std::set<EdgeKey> constrained;
  for (const auto& s : segments) constrained.insert(EdgeKey(s[0], s[1]));
  std::map<EdgeKey, std::vector<int>> edge_tris;
  for (std::size_t t = 0; t < cdt.triangles.size(); ++t)
    for (int k = 0; k < 3; ++k)
      edge_tris[EdgeKey(cdt.triangles[t][k], cdt.triangles[t][(k + 1) % 3])].push_back(
          static_cast<int>(t));

  const Vec2 seed = fp.frame_origin +
                    rotate({0.5 * (fp.knots.front() + fp.knots.back()),
                            0.5 * (fp.heights.front() + fp.heights.back()) - 0.5 * opts.depth},
                           fp.frame_angle);
  int seed_tri = -1;
  for (std::size_t t = 0; t < cdt.triangles.size(); ++t) {
    const Vec2 &a = cdt.points[cdt.triangles[t][0]], &b = cdt.points[cdt.triangles[t][1]],
               &c = cdt.points[cdt.triangles[t][2]];
    if (signed_area2(a, b, seed) >= 0 && signed_area2(b, c, seed) >= 0 &&
        signed_area2(c, a, seed) >= 0) {
      seed_tri = static_cast<int>(t);
      break;
    }
  }
  if (seed_tri < 0) throw GeometryError("could not locate the enclosed-region seed");

  std::vector<int> region(cdt.triangles.size(), 1);
  std::vector<int> stack{seed_tri};
  region[seed_tri] = 2;
  while (!stack.empty()) {
    const int t = stack.back();
    stack.pop_back();
    for (int k = 0; k < 3; ++k) {
      const EdgeKey key(cdt.triangles[t][k], cdt.triangles[t][(k + 1) % 3]);
      if (constrained.count(key)) continue;
      for (int nb_t : edge_tris[key]) {
        if (nb_t != t && region[nb_t] == 1) {
          region[nb_t] = 2;
          stack.push_back(nb_t);
        }
      }
    }
  }

  // Assemble the mesh: drop unused points, keep deterministic ordering.
  RealizedFault out;
  Mesh& mesh = out.mesh;
  mesh.dim = 2;
  std::vector<int> remap(cdt.points.size(), -1);
  for (const auto& t : cdt.triangles)
    for (int k = 0; k < 3; ++k) remap[t[k]] = 0;
  for (std::size_t i = 0; i < cdt.points.size(); ++i) {
    if (remap[i] == 0) {
      remap[i] = mesh.num_nodes();
      mesh.nodes.push_back(cdt.points[i]);
    }
  }
  for (std::size_t t = 0; t < cdt.triangles.size(); ++t) {
    Mesh::Element el;
    el.region = region[t];
    for (int k = 0; k < 3; ++k) el.v[k] = remap[cdt.triangles[t][k]];
    mesh.elements.push_back(el);
  }

  // Facet tags: clamped bottom/left/right, free top with the measurement
  // window, fault facets along the fault chain.
  const double tol = 1e-12;
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const int a = b0 + static_cast<int>(i);
    const int b = b0 + static_cast<int>((i + 1) % boundary.size());
    const Vec2 pa = pts[a], pb = pts[b];
    int tag = kTagSigma;
    if (pa.y > 1.0 - tol && pb.y > 1.0 - tol) {
      const double x0 = std::min(pa.x, pb.x), x1 = std::max(pa.x, pb.x);
      tag = (x0 >= opts.xi_interval.first - tol && x1 <= opts.xi_interval.second + tol)
                ? kTagXi
                : kTagFree;
    }
    mesh.facets.push_back({tag, {remap[a], remap[b]}});
  }
  for (std::size_t i = 0; i + 1 < fault_pts.size(); ++i) {
    const int a = fault_base + static_cast<int>(i);
    mesh.facets.push_back({kTagFault, {remap[a], remap[a + 1]}});
  }

  validate_mesh(mesh);
  out.roles.sigma_tags = {kTagSigma};
  out.roles.free_tags = {kTagFree, kTagXi};
  out.roles.xi_tags = {kTagXi};
  out.roles.fault_tags = {kTagFault};
  out.roles.omega_minus_regions = {2};
  out.topo = build_fault_topology(mesh, out.roles);
  return out;
}

FaultChain fault_chain(const Mesh& mesh, const FaultTopology& ft) {
  if (ft.s_facets.empty()) throw DomainError("fault is empty");
  // Walk the chain from one boundary node to the other.
  std::map<int, std::vector<int>> next; // node -> adjacent fault nodes
  for (const auto& sf : ft.s_facets) {
    next[sf.a].push_back(sf.b);
    next[sf.b].push_back(sf.a);
  }
  FaultChain chain;
  int cur = ft.s_boundary_nodes.front();
  int prev = -1;
  chain.nodes.push_back(cur);
  while (true) {
    const auto& nbrs = next.at(cur);
    int nxt = -1;
    for (int cand : nbrs)
      if (cand != prev) nxt = cand;
    if (nxt < 0) break;
    chain.nodes.push_back(nxt);
    prev = cur;
    cur = nxt;
    if (next.at(cur).size() == 1) break;
  }
  if (chain.nodes.size() != ft.s_facets.size() + 1)
    throw GeometryError("fault facets do not form a single chain");

  chain.s.resize(chain.nodes.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < chain.nodes.size(); ++i) {
    total += dist(mesh.nodes[chain.nodes[i]], mesh.nodes[chain.nodes[i + 1]]);
    chain.s[i + 1] = total;
  }
  for (auto& v : chain.s) v /= total;

  chain.tangent.resize(chain.nodes.size());
  chain.normal.resize(chain.nodes.size());
  for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
    Vec2 t{0, 0};
    if (i > 0) {
      const Vec2 d = mesh.nodes[chain.nodes[i]] - mesh.nodes[chain.nodes[i - 1]];
      t += d / norm(d);
    }
    if (i + 1 < chain.nodes.size()) {
      const Vec2 d = mesh.nodes[chain.nodes[i + 1]] - mesh.nodes[chain.nodes[i]];
      t += d / norm(d);
    }
    chain.tangent[i] = t / norm(t);
    chain.normal[i] = rot90(chain.tangent[i]);
  }
  return chain;
}

void SlipParam::validate() const {
  if (modes < 2 || modes % 2 != 0) throw ConfigError("slip_modes must be a positive even number");
  if (coeffs.size() != modes) throw ConfigError("slip coefficient count must equal slip_modes");
}

SlipField slip_basis_field(const Mesh& mesh, const FaultTopology& ft, int modes, int mode) {
  if (mode < 0 || mode >= modes) throw ConfigError("slip mode index out of range");
  FaultChain chain = fault_chain(mesh, ft);
  const int half = modes / 2;
  const int k = mode % half + 1;
  const bool tangential = mode < half;
  SlipField slip;
  for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
    const double s = chain.s[i];
    const double val = (s <= 0.0 || s >= 1.0) ? 0.0 : std::sin(k * 3.14159265358979323846 * s);
    const Vec2 dir = tangential ? chain.tangent[i] : chain.normal[i];
    slip.values[chain.nodes[i]] = dir * val;
  }
  return slip;
}

SlipField slip_from_param(const Mesh& mesh, const FaultTopology& ft, const SlipParam& sp) {
  sp.validate();
  SlipField total;
  FaultChain chain = fault_chain(mesh, ft);
  for (int node : chain.nodes) total.values[node] = {0, 0};
  for (int m = 0; m < sp.modes; ++m) {
    if (sp.coeffs[m] == 0.0) continue;
    SlipField basis = slip_basis_field(mesh, ft, sp.modes, m);
    for (auto& [node, v] : total.values) v += basis.at(node) * sp.coeffs[m];
  }
  validate_slip(total, ft);
  return total;
}

} // namespace dislox
