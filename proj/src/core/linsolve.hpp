#pragma once

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <memory>

#include "core/assembly.hpp"

namespace dislox {

struct SolverOptions {
  double cg_tol = 1e-10;       // relative residual
  int cg_maxiter_factor = 10;  // max iterations = factor * n
  double interface_tol = 1e-10;
};

/// Jacobi-preconditioned conjugate gradients for SPD systems. Deterministic
/// for a fixed matrix and right-hand side. Throws SolveError on stagnation
/// past the iteration budget or when a non-positive curvature direction is
/// met (indefinite matrix).
Vector solve_spd(const SpMat& A, const Vector& b, double tol = 1e-10, int maxiter_factor = 10,
                 int* iters_out = nullptr);

/// Sparse Cholesky, factored once, reused for many right-hand sides.
class CholeskySolver {
public:
  explicit CholeskySolver(const SpMat& A);
  Vector solve(const Vector& b) const;
  int n() const { return n_; }

private:
  Eigen::SimplicialLLT<SpMat> llt_;
  int n_ = 0;
};

/// Pure-Neumann solver: the stiffness bordered by three Lagrange multiplier
/// rows enforcing lumped-mass orthogonality to the rigid motions,
///   [ K   M R ] [u]   [f]
///   [(MR)^T 0 ] [s] = [0].
/// The multiplier block absorbs rigid-incompatible load components, so the
/// solve exists for any f; compatibility of f shows up as s ~ 0.
class BorderedNeumannSolver {
public:
  BorderedNeumannSolver(const SpMat& K, const Vector& lumped_mass, const Eigen::MatrixXd& rigid);

  struct Result {
    Vector u;
    Eigen::Vector3d multipliers;
  };
  Result solve(const Vector& f) const;
  int n() const { return n_; }
  const Eigen::MatrixXd& rigid() const { return rigid_; }
  const Vector& mass() const { return mass_; }

private:
  Eigen::SparseLU<SpMat> lu_;
  Eigen::MatrixXd rigid_;
  Vector mass_;
  int n_ = 0;
};

} // namespace dislox
