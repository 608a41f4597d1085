#include "core/transmission.hpp"

#include <algorithm>
#include <cmath>

#include "core/quadrature.hpp"
#include "core/split_solver.hpp"
#include "core/trace_space.hpp"

namespace dislox {

namespace {

Vector gather_dofs(const DofMap& dm, const std::vector<Vec2>& u) {
  Vector x(dm.num_dofs());
  for (int d = 0; d < dm.num_dofs(); ++d) {
    const Vec2& v = u[dm.dof_node(d)];
    x[d] = dm.dof_comp(d) == 0 ? v.x : v.y;
  }
  return x;
}

} // namespace

TransmissionReport compute_transmission(const ProblemSetup& ps, const DirectSolution& sol) {
  TransmissionReport rep;
  const Mesh& split = ps.split;
  const FaultTopology& ft = ps.ft;

  // (d) residual of the global reduced system at this solution.
  {
    const bool constrained = !ps.roles->sigma_tags.empty();
    SplitSystem sys = build_split_system(ps, constrained ? SplitSystem::Sigma::Constrained
                                                         : SplitSystem::Sigma::FreeFloating);
    const Vector x = sys.reduced_from_nodal(sol.u);
    const Vector r = sys.A * x - sys.b;
    const double scale = std::max(sys.b.norm(), 1e-300);
    rep.interior_residual = r.norm() / scale;
  }

  if (ft.s_facets.empty()) return rep;

  // (a) nodal jump against the slip on the split pairs; exact zero at the
  // unsplit fault boundary nodes by construction.
  for (const auto& [orig, dup] : ft.split_map) {
    const Vec2 g = ps.slip.at(orig);
    const Vec2 jump = sol.u[dup] - sol.u[orig];
    rep.jump_err_s = std::max({rep.jump_err_s, std::abs(jump.x - g.x), std::abs(jump.y - g.y)});
  }

  // (b) jump away from the fault, available when the method kept two-sided
  // interface traces (single-valued fields are continuous there by layout).
  if (!sol.trace_plus.empty()) {
    for (std::size_t i = 0; i < ft.gamma_nodes.size(); ++i) {
      const int node = ft.gamma_nodes[i];
      if (std::binary_search(ft.s_interior_nodes.begin(), ft.s_interior_nodes.end(), node))
        continue;
      const Vec2 d = sol.trace_plus[i] - sol.trace_minus[i];
      rep.jump_err_gamma = std::max({rep.jump_err_gamma, std::abs(d.x), std::abs(d.y)});
    }
  }

  // (c) two-sided consistent flux on the interface.
  const TraceSpace ts = TraceSpace::build(ft, *ps.mesh);
  const CholeskySolver mass_solve(ts.mass);
  auto dual_norm = [&](const Vector& f) { return std::sqrt(f.dot(mass_solve.solve(f))); };

  DofMap dm_minus =
      build_dofmap(split, elements_in_regions(split, ft.omega_minus_regions, false));
  DofMap dm_plus = build_dofmap(split, elements_in_regions(split, ft.omega_minus_regions, true));
  const SpMat K_minus = assemble_stiffness(split, *ps.model, dm_minus);
  const SpMat K_plus = assemble_stiffness(split, *ps.model, dm_plus);
  const Vector l_minus = assemble_body_force(split, dm_minus, ps.loads.body);
  const Vector l_plus = assemble_body_force(split, dm_plus, ps.loads.body) +
                        assemble_facet_load(split, dm_plus, boundary_loads(split, ps.loads));

  std::vector<int> minus_nodes = ft.gamma_nodes;
  std::vector<int> plus_nodes = ft.gamma_nodes;
  for (auto& n : plus_nodes) {
    auto it = ft.split_map.find(n);
    if (it != ft.split_map.end()) n = it->second;
  }
  const auto t_minus = recover_traction(K_minus, gather_dofs(dm_minus, sol.u), l_minus, dm_minus,
                                        minus_nodes);
  const auto t_plus =
      recover_traction(K_plus, gather_dofs(dm_plus, sol.u), l_plus, dm_plus, plus_nodes);

  const Vector w = fault_datum_trace_functional(ft, ps.loads);
  Vector rho(ts.dim()), tp(ts.dim()), tm(ts.dim());
  for (int i = 0; i < static_cast<int>(ts.nodes.size()); ++i) {
    tp[2 * i] = t_plus[i].x;
    tp[2 * i + 1] = t_plus[i].y;
    tm[2 * i] = t_minus[i].x;
    tm[2 * i + 1] = t_minus[i].y;
  }
  rho = tp + tm + w; // action-reaction: the two fluxes balance the datum

  Vector rho_s = rho, rho_g = rho;
  for (int i = 0; i < static_cast<int>(ts.nodes.size()); ++i) {
    if (ts.s_interior[i]) {
      rho_g[2 * i] = rho_g[2 * i + 1] = 0.0;
    } else {
      rho_s[2 * i] = rho_s[2 * i + 1] = 0.0;
    }
  }

  rep.traction_scale = std::max(dual_norm(tp), dual_norm(tm));
  const double scale = std::max(rep.traction_scale, 1e-300);
  rep.traction_res_s = dual_norm(rho_s) / scale;
  rep.traction_res_gamma = dual_norm(rho_g) / scale;

  // Elementwise stress jump across the interface (pointwise sigma of the P1
  // field, minus the prescribed fault datum on S), integrated against the
  // trace hats.
  {
    const auto& rule = edge_rule(2);
    Vector sj = Vector::Zero(ts.dim());
    for (const auto& gf : ft.gamma_facets) {
      const Vec2 pa = ps.mesh->nodes[gf.a], pb = ps.mesh->nodes[gf.b];
      const double len = dist(pa, pb);
      const Vec2 nrm = rot90(pb - pa) / len;
      auto stress_of = [&](int elem) {
        const auto& el = split.elements[elem];
        const Vec2 q0 = split.nodes[el.v[0]], q1 = split.nodes[el.v[1]], q2 = split.nodes[el.v[2]];
        const double a2 = signed_area2(q0, q1, q2);
        const Vec2 g0 = rot90(q2 - q1) / a2, g1 = rot90(q0 - q2) / a2, g2 = rot90(q1 - q0) / a2;
        const Vec2 u0 = sol.u[el.v[0]], u1 = sol.u[el.v[1]], u2 = sol.u[el.v[2]];
        std::array<double, 3> eps{};
        const Vec2 gs[3] = {g0, g1, g2};
        const Vec2 us[3] = {u0, u1, u2};
        for (int k = 0; k < 3; ++k) {
          eps[0] += us[k].x * gs[k].x;
          eps[1] += us[k].y * gs[k].y;
          eps[2] += 0.5 * (us[k].x * gs[k].y + us[k].y * gs[k].x);
        }
        return std::pair<int, std::array<double, 3>>{el.region, eps};
      };
      auto [reg_m, eps_m] = stress_of(gf.elem_minus);
      auto [reg_p, eps_p] = stress_of(gf.elem_plus);
      const bool s_facet = [&] {
        for (const auto& sf : ft.s_facets)
          if (EdgeKey(sf.a, sf.b) == EdgeKey(gf.a, gf.b)) return true;
        return false;
      }();
      const int ia = ts.index.at(gf.a), ib = ts.index.at(gf.b);
      for (const auto& q : rule) {
        const Vec2 x = pa * (1.0 - q.t) + pb * q.t;
        const auto sm = ps.model->apply(reg_m, x, eps_m);
        const auto sp = ps.model->apply(reg_p, x, eps_p);
        Vec2 jump{(sp[0] - sm[0]) * nrm.x + (sp[2] - sm[2]) * nrm.y,
                  (sp[2] - sm[2]) * nrm.x + (sp[1] - sm[1]) * nrm.y};
        if (s_facet && ps.loads.fault_traction_jump) {
          const Vec2 j = ps.loads.fault_traction_jump(x);
          jump.x -= j.x;
          jump.y -= j.y;
        }
        const double hats[2] = {1.0 - q.t, q.t};
        sj[2 * ia] += len * q.w * jump.x * hats[0];
        sj[2 * ia + 1] += len * q.w * jump.y * hats[0];
        sj[2 * ib] += len * q.w * jump.x * hats[1];
        sj[2 * ib + 1] += len * q.w * jump.y * hats[1];
      }
    }
    Vector sj_s = sj, sj_g = sj;
    for (int i = 0; i < static_cast<int>(ts.nodes.size()); ++i) {
      if (ts.s_interior[i]) {
        sj_g[2 * i] = sj_g[2 * i + 1] = 0.0;
      } else {
        sj_s[2 * i] = sj_s[2 * i + 1] = 0.0;
      }
    }
    rep.stress_jump_s = dual_norm(sj_s);
    rep.stress_jump_gamma = dual_norm(sj_g);
  }
  return rep;
}

} // namespace dislox
