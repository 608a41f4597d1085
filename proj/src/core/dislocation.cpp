#include "core/dislocation.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace dislox {

ProblemSetup ProblemSetup::create(const Mesh& mesh, const BoundaryRoles& roles,
                                  const ElasticModel& model, const LoadSpec& loads,
                                  const SlipField& slip) {
  ProblemSetup ps;
  ps.mesh = &mesh;
  ps.roles = &roles;
  ps.model = &model;
  ps.loads = loads;
  ps.slip = slip;
  if (!roles.omega_minus_regions.empty() || !roles.fault_tags.empty()) {
    ps.ft = build_fault_topology(mesh, roles);
    validate_slip(slip, ps.ft);
  }
  ps.split = split_fault_nodes(mesh, ps.ft);
  return ps;
}

std::vector<FacetLoad> boundary_loads(const Mesh& mesh, const LoadSpec& loads) {
  std::vector<FacetLoad> out;
  for (const auto& fa : mesh.facets) {
    auto it = loads.tractions.find(fa.tag);
    if (it == loads.tractions.end()) continue;
    out.push_back(FacetLoad{{fa.v[0], fa.v[1]}, it->second});
  }
  return out;
}

Vector fault_datum_load(const Mesh& split, const FaultTopology& ft, const DofMap& dofs,
                        const LoadSpec& loads) {
  Vector l = Vector::Zero(dofs.num_dofs());
  if (!loads.fault_traction_jump) return l;
  const auto& rule = edge_rule(4);
  for (std::size_t f = 0; f < ft.s_facets.size(); ++f) {
    const auto& sf = ft.s_facets[f];
    const auto& [pa, pb] = ft.s_facet_coords[f];
    const double len = dist(pa, pb);
    const int ends[2] = {sf.a, sf.b};
    for (const auto& q : rule) {
      const Vec2 x = pa * (1.0 - q.t) + pb * q.t;
      const Vec2 j = loads.fault_traction_jump(x);
      const double hats[2] = {1.0 - q.t, q.t};
      for (int k = 0; k < 2; ++k) {
        const int nminus = ends[k];
        auto dup = ft.split_map.find(nminus);
        const int nplus = dup == ft.split_map.end() ? nminus : dup->second;
        // weak form carries -<j, v>; halves merge under the jump constraint
        for (int side = 0; side < 2; ++side) {
          const int node = side == 0 ? nminus : nplus;
          l[dofs.dof(node, 0)] += -0.5 * len * q.w * j.x * hats[k];
          l[dofs.dof(node, 1)] += -0.5 * len * q.w * j.y * hats[k];
        }
      }
    }
  }
  return l;
}

Vector fault_datum_trace_functional(const FaultTopology& ft, const LoadSpec& loads) {
  Vector w = Vector::Zero(static_cast<int>(ft.gamma_nodes.size()) * 2);
  if (!loads.fault_traction_jump) return w;
  std::map<int, int> trace_index;
  for (std::size_t i = 0; i < ft.gamma_nodes.size(); ++i)
    trace_index[ft.gamma_nodes[i]] = static_cast<int>(i);
  const auto& rule = edge_rule(4);
  for (std::size_t f = 0; f < ft.s_facets.size(); ++f) {
    const auto& sf = ft.s_facets[f];
    const auto& [pa, pb] = ft.s_facet_coords[f];
    const double len = dist(pa, pb);
    const int idx[2] = {trace_index.at(sf.a), trace_index.at(sf.b)};
    for (const auto& q : rule) {
      const Vec2 x = pa * (1.0 - q.t) + pb * q.t;
      const Vec2 j = loads.fault_traction_jump(x);
      const double hats[2] = {1.0 - q.t, q.t};
      for (int k = 0; k < 2; ++k) {
        w[2 * idx[k]] += len * q.w * j.x * hats[k];
        w[2 * idx[k] + 1] += len * q.w * j.y * hats[k];
      }
    }
  }
  return w;
}

namespace {

double l2_sq(const Mesh& mesh, const std::function<Vec2(int)>& a) {
  const auto& rule = tri_rule(2);
  double acc = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& el = mesh.elements[e];
    const double area = mesh.element_area(e);
    for (const auto& q : rule) {
      const Vec2 v =
          a(el.v[0]) * q.l0 + a(el.v[1]) * q.l1 + a(el.v[2]) * q.l2;
      acc += area * q.w * dot(v, v);
    }
  }
  return acc;
}

} // namespace

double field_l2(const Mesh& mesh, const std::vector<Vec2>& u) {
  return std::sqrt(l2_sq(mesh, [&](int n) { return u[n]; }));
}

double field_l2_diff(const Mesh& mesh, const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  return std::sqrt(l2_sq(mesh, [&](int n) { return a[n] - b[n]; }));
}

std::string TransmissionReport::summary() const {
  std::ostringstream os;
  os << "jump residual on S:        " << jump_err_s << "\n"
     << "jump residual on Gamma\\S:  " << jump_err_gamma << "\n"
     << "traction balance on S:     " << traction_res_s << " (relative)\n"
     << "traction balance Gamma\\S:  " << traction_res_gamma << " (relative)\n"
     << "stress jump on S:          " << stress_jump_s << " (dual surrogate)\n"
     << "stress jump on Gamma\\S:    " << stress_jump_gamma << " (dual surrogate)\n"
     << "interior residual:         " << interior_residual << " (relative)\n";
  return os.str();
}

} // namespace dislox
