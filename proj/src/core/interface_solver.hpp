#pragma once

#include <memory>

#include "core/dislocation.hpp"
#include "core/trace_space.hpp"

namespace dislox {

/// Neumann-to-Dirichlet machinery on the closed interface. Holds the
/// factorized mixed problem on the outer subdomain (clamped on sigma,
/// traction-free elsewhere), the factorized bordered pure-Neumann problem on
/// the enclosed subdomain (rigid motions pinned by Lagrange multipliers) and
/// the interface mass matrix realizing the duality pairing. Immutable after
/// construction; applications are const.
class InterfaceOperator {
public:
  InterfaceOperator(const ProblemSetup& ps, const SolverOptions& opts = {});

  const TraceSpace& trace() const { return ts_; }
  int dim() const { return ts_.dim(); }

  /// Trace of the outer solution with interface Neumann data phi (the weak
  /// form carries -<phi, v> since the interface normal points inward there).
  Vector apply_nd_plus(const Vector& phi) const;

  /// Trace of the enclosed-side solution with Neumann data phi, normalized
  /// against rigid motions by the bordered system.
  Vector apply_nd_minus(const Vector& phi) const;

  /// Galerkin operator A phi = M (N- phi - N+ phi); symmetric positive
  /// definite on the trace space.
  Vector apply_galerkin(const Vector& phi) const;

  /// Mass-preconditioned CG on the Galerkin operator. The iteration is run
  /// in the dual norm induced by the inverse interface mass; hard iteration
  /// cap of twice the trace dof count.
  Vector solve_galerkin(const Vector& rhs, int* iters = nullptr) const;

  /// Dual pairing <psi, A phi> used by the symmetry/positivity checks.
  double galerkin_pair(const Vector& psi, const Vector& phi) const;

  // Pieces used by the assembled solve.
  Vector mass_apply(const Vector& phi) const { return ts_.mass * phi; }
  Vector mass_solve(const Vector& f) const { return mass_llt_->solve(f); }
  Vector plus_field(const Vector& phi, bool with_loads) const;
  struct MinusField {
    Vector u;
    Eigen::Vector3d multipliers;
  };
  MinusField minus_field(const Vector& phi, bool with_loads) const;
  Vector trace_of_plus(const Vector& u_full) const;
  Vector trace_of_minus(const Vector& u_full) const;
  const Eigen::MatrixXd& minus_rigid() const { return bordered_->rigid(); }
  const DofMap& plus_dofs() const { return dm_plus_; }
  const DofMap& minus_dofs() const { return dm_minus_; }
  const Vector& minus_load() const { return l_minus_; }

private:
  const ProblemSetup* ps_;
  SolverOptions opts_;
  TraceSpace ts_;
  std::unique_ptr<CholeskySolver> mass_llt_;

  DofMap dm_plus_;
  std::unique_ptr<CholeskySolver> chol_plus_;
  Vector l_plus_;        // loads incl. boundary tractions and fault datum
  Vector b_plus_affine_; // reduced rhs of the load solve (Dirichlet folded in)

  DofMap dm_minus_;
  std::unique_ptr<BorderedNeumannSolver> bordered_;
  Vector l_minus_;

  Vector scatter_plus(const Vector& q) const;  // trace functional -> free rhs
  Vector scatter_minus(const Vector& q) const;
};

/// Galerkin solution of <psi, (-N+ + N-) phi> = <psi, -gtilde> for the
/// zero-extended slip; returns the interface traction coefficients.
Vector solve_interface_equation(const InterfaceOperator& op, const std::vector<Vec2>& gtilde,
                                int* iters = nullptr);

/// Full constructive solve: interface equation bordered by the three rigid
/// compatibility conditions of the enclosed side, then one final solve per
/// subdomain and assembly onto the split mesh.
DirectSolution solve_interface_method(const ProblemSetup& ps, const SolverOptions& opts = {});

} // namespace dislox
