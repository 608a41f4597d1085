#include "core/forward_map.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/split_solver.hpp"

namespace dislox {

XiSampling make_xi_sampling(const Mesh& mesh, const BoundaryRoles& roles) {
  XiSampling xs;
  std::vector<Vec2> pts;
  std::set<int> seen_nodes;
  for (const auto& fa : mesh.facets) {
    if (!roles.xi_tags.count(fa.tag)) continue;
    for (int k = 0; k < 2; ++k)
      if (seen_nodes.insert(fa.v[k]).second) pts.push_back(mesh.nodes[fa.v[k]]);
    pts.push_back((mesh.nodes[fa.v[0]] + mesh.nodes[fa.v[1]]) * 0.5);
  }
  if (pts.empty()) throw ConfigError("no xi-tagged facets to sample");
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  xs.points = pts;
  return xs;
}

std::vector<Vec2> sample_on_boundary(const Mesh& mesh, const std::vector<Vec2>& u,
                                     const XiSampling& sampling) {
  // Candidate facets: boundary edges only.
  EdgeAdjacency adj = EdgeAdjacency::build(mesh);
  std::vector<std::array<int, 2>> bedges;
  for (const auto& [key, pair] : adj.edge_elems)
    if (pair[1] == -1) bedges.push_back({key.a, key.b});

  const double tol = 1e-9 * std::max(1.0, mesh.diameter());
  std::vector<Vec2> out;
  out.reserve(sampling.points.size());
  for (const Vec2& p : sampling.points) {
    double best = 1e300;
    Vec2 value{0, 0};
    for (const auto& e : bedges) {
      const Vec2 a = mesh.nodes[e[0]], b = mesh.nodes[e[1]];
      const double d = point_segment_dist(p, a, b);
      if (d < best) {
        best = d;
        const Vec2 dir = b - a;
        const double len2 = dot(dir, dir);
        double t = len2 > 0 ? dot(p - a, dir) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        value = u[e[0]] * (1.0 - t) + u[e[1]] * t;
      }
    }
    if (best > tol)
      throw DomainError("sample point (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                        ") is not on the mesh boundary");
    out.push_back(value);
  }
  return out;
}

Eigen::VectorXd SurfaceData::stacked() const {
  Eigen::VectorXd v(2 * values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    v[2 * i] = values[i].x;
    v[2 * i + 1] = values[i].y;
  }
  return v;
}

SurfaceData forward_on_realized(const RealizedFault& rf, const ElasticModel& model,
                                const SlipField& slip, const SolverOptions& solver,
                                const XiSampling& sampling) {
  (void)solver; // the split-node path is a direct solve
  ProblemSetup ps = ProblemSetup::create(rf.mesh, rf.roles, model, LoadSpec{}, slip);
  DirectSolution sol = solve_split_node(ps);
  // Boundary nodes are never split, so original ids address the field.
  std::vector<Vec2> u(rf.mesh.num_nodes());
  for (int n = 0; n < rf.mesh.num_nodes(); ++n) u[n] = sol.u[n];
  SurfaceData data;
  data.sampling = sampling;
  data.values = sample_on_boundary(rf.mesh, u, sampling);
  return data;
}

SurfaceData forward_map(const FaultParam& fp, const SlipParam& sp, const ForwardContext& ctx,
                        const XiSampling& sampling) {
  RealizedFault rf = realize_fault(fp, ctx.meshing);
  ElasticModel model = build_elastic_model(ctx.material, rf.mesh);
  SlipField slip = slip_from_param(rf.mesh, rf.topo, sp);
  return forward_on_realized(rf, model, slip, ctx.solver, sampling);
}

void add_noise(SurfaceData& data, double sigma, unsigned long long seed) {
  if (sigma <= 0.0) return;
  data.noise_sigma = sigma;
  std::mt19937_64 rng(seed);
  auto gauss = [&rng]() {
    // Box-Muller on the half-open mantissa; keeps the stream pinned to the
    // engine rather than a library distribution.
    const double u1 =
        (static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0; // (0,1)
    const double u2 = (static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  };
  for (auto& v : data.values) {
    v.x += sigma * gauss();
    v.y += sigma * gauss();
  }
}

} // namespace dislox
