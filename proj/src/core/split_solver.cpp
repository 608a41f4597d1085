#include "core/split_solver.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/transmission.hpp"

namespace dislox {

SplitSystem build_split_system(const ProblemSetup& ps, SplitSystem::Sigma sigma) {
  SplitSystem sys;
  sys.split_ = &ps.split;
  const std::set<int> sigma_tags =
      sigma == SplitSystem::Sigma::Constrained ? ps.roles->sigma_tags : std::set<int>{};
  sys.dm = build_dofmap(ps.split, all_elements(ps.split), sigma_tags, ps.loads.dirichlet);

  sys.K = assemble_stiffness(ps.split, *ps.model, sys.dm);
  sys.l = assemble_body_force(ps.split, sys.dm, ps.loads.body) +
          assemble_facet_load(ps.split, sys.dm, boundary_loads(ps.split, ps.loads)) +
          fault_datum_load(ps.split, ps.ft, sys.dm, ps.loads);

  const int nfull = sys.dm.num_dofs();
  sys.master.resize(nfull);
  sys.jump_offset.assign(nfull, 0.0);
  for (int d = 0; d < nfull; ++d) sys.master[d] = d;
  for (const auto& [orig, dup] : ps.ft.split_map) {
    const Vec2 g = ps.slip.at(orig);
    for (int c = 0; c < 2; ++c) {
      const int d = sys.dm.dof(dup, c);
      sys.master[d] = sys.dm.dof(orig, c);
      sys.jump_offset[d] = c == 0 ? g.x : g.y;
    }
  }

  sys.red_index.assign(nfull, -1);
  for (int d = 0; d < nfull; ++d)
    if (sys.master[d] == d && !sys.dm.is_constrained[d]) sys.red_index[d] = sys.n_red++;

  sys.b = Vector::Zero(sys.n_red);
  for (int d = 0; d < nfull; ++d) {
    const int m = sys.master[d];
    if (!sys.dm.is_constrained[m] && sys.red_index[m] >= 0) sys.b[sys.red_index[m]] += sys.l[d];
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(sys.K.nonZeros());
  for (int col = 0; col < sys.K.outerSize(); ++col) {
    const int cm = sys.master[col];
    const double off = sys.jump_offset[col];
    const bool col_constrained = sys.dm.is_constrained[cm] != 0;
    for (SpMat::InnerIterator it(sys.K, col); it; ++it) {
      const int rm = sys.master[static_cast<int>(it.row())];
      if (sys.dm.is_constrained[rm]) continue;
      const int fr = sys.red_index[rm];
      if (off != 0.0) sys.b[fr] -= it.value() * off;
      if (col_constrained) {
        sys.b[fr] -= it.value() * sys.dm.dirichlet_value[cm];
      } else {
        trip.emplace_back(fr, sys.red_index[cm], it.value());
      }
    }
  }
  sys.A.resize(sys.n_red, sys.n_red);
  sys.A.setFromTriplets(trip.begin(), trip.end());
  return sys;
}

Vector SplitSystem::reduced_mass() const {
  Vector mfull = lumped_mass(*split_, dm);
  Vector m = Vector::Zero(n_red);
  for (int d = 0; d < dm.num_dofs(); ++d) {
    const int fr = red_index[master[d]];
    if (fr >= 0) m[fr] += mfull[d];
  }
  return m;
}

Eigen::MatrixXd SplitSystem::reduced_rigid_basis() const {
  Eigen::MatrixXd R(n_red, 3);
  R.setZero();
  for (int d = 0; d < dm.num_dofs(); ++d) {
    const int fr = red_index[d];
    if (fr < 0) continue;
    const Vec2& p = split_->nodes[dm.dof_node(d)];
    if (dm.dof_comp(d) == 0) {
      R(fr, 0) = 1.0;
      R(fr, 2) = -p.y;
    } else {
      R(fr, 1) = 1.0;
      R(fr, 2) = p.x;
    }
  }
  const Vector m = reduced_mass();
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < k; ++j) {
      const double proj = (R.col(j).array() * m.array() * R.col(k).array()).sum();
      R.col(k) -= proj * R.col(j);
    }
    R.col(k) /= std::sqrt((R.col(k).array() * m.array() * R.col(k).array()).sum());
  }
  return R;
}

Vector SplitSystem::full_from_reduced(const Vector& x) const {
  Vector u(dm.num_dofs());
  for (int d = 0; d < dm.num_dofs(); ++d) {
    const int m = master[d];
    double v = dm.is_constrained[m] ? dm.dirichlet_value[m] : x[red_index[m]];
    u[d] = v + jump_offset[d];
  }
  return u;
}

std::vector<Vec2> SplitSystem::nodal_from_reduced(const Vector& x) const {
  const Vector u = full_from_reduced(x);
  std::vector<Vec2> out(split_->num_nodes());
  for (int n = 0; n < split_->num_nodes(); ++n)
    out[n] = {u[dm.dof(n, 0)], u[dm.dof(n, 1)]};
  return out;
}

Vector SplitSystem::reduced_from_nodal(const std::vector<Vec2>& u) const {
  Vector x = Vector::Zero(n_red);
  for (int d = 0; d < dm.num_dofs(); ++d) {
    if (red_index[d] < 0) continue;
    const Vec2& v = u[dm.dof_node(d)];
    x[red_index[d]] = dm.dof_comp(d) == 0 ? v.x : v.y;
  }
  return x;
}

DirectSolution solve_split_node(const ProblemSetup& ps) {
  SplitSystem sys = build_split_system(ps, SplitSystem::Sigma::Constrained);
  CholeskySolver chol(sys.A);
  const Vector x = chol.solve(sys.b);

  DirectSolution sol;
  sol.method = "split_node";
  sol.u = sys.nodal_from_reduced(x);
  sol.report = compute_transmission(ps, sol);
  return sol;
}

std::vector<Vec2> solve_unsplit(const ProblemSetup& ps) {
  DofMap dm = build_dofmap(*ps.mesh, all_elements(*ps.mesh), ps.roles->sigma_tags,
                           ps.loads.dirichlet);
  const SpMat K = assemble_stiffness(*ps.mesh, *ps.model, dm);
  const Vector l = assemble_body_force(*ps.mesh, dm, ps.loads.body) +
                   assemble_facet_load(*ps.mesh, dm, boundary_loads(*ps.mesh, ps.loads));
  ReducedSystem red = reduce_system(K, l, dm);
  CholeskySolver chol(red.A);
  Vector x_free = chol.solve(red.b);
  const Vector u = expand_solution(x_free, dm);
  std::vector<Vec2> out(ps.mesh->num_nodes());
  for (int n = 0; n < ps.mesh->num_nodes(); ++n) out[n] = {u[dm.dof(n, 0)], u[dm.dof(n, 1)]};
  return out;
}

} // namespace dislox
