#include "core/neumann.hpp"

#include "core/errors.hpp"
#include "core/split_solver.hpp"
#include "core/transmission.hpp"

namespace dislox {

DirectSolution solve_split_floating(const ProblemSetup& ps) {
  SplitSystem sys = build_split_system(ps, SplitSystem::Sigma::FreeFloating);
  BorderedNeumannSolver bordered(sys.A, sys.reduced_mass(), sys.reduced_rigid_basis());
  auto res = bordered.solve(sys.b);

  DirectSolution sol;
  sol.method = "neumann";
  sol.u = sys.nodal_from_reduced(res.u);
  sol.report = compute_transmission(ps, sol);
  return sol;
}

NeumannVariant solve_neumann_variant(const ProblemSetup& ps) {
  if (!ps.roles->sigma_tags.empty())
    throw ConfigError("the Neumann variant expects an all-Neumann boundary (empty sigma)");

  NeumannVariant out;

  // Slip only, traction free.
  {
    ProblemSetup ring = ps;
    ring.loads.body = {};
    ring.loads.tractions.clear();
    out.u_ring = solve_split_floating(ring);
    out.u_ring.method = "neumann_u_ring";
  }

  // Boundary load only, no slip: a continuous transmission problem.
  {
    ProblemSetup wps = ps;
    wps.slip = SlipField{};
    for (int node : ps.ft.s_interior_nodes) wps.slip.values[node] = {0.0, 0.0};
    for (int node : ps.ft.s_boundary_nodes) wps.slip.values[node] = {0.0, 0.0};
    out.w = solve_split_floating(wps);
    out.w.method = "neumann_w";
  }

  out.sum = out.u_ring;
  out.sum.method = "neumann";
  for (std::size_t i = 0; i < out.sum.u.size(); ++i) out.sum.u[i] += out.w.u[i];
  out.sum.report = compute_transmission(ps, out.sum);

  out.combined = solve_split_floating(ps);
  return out;
}

} // namespace dislox
