#include "core/linsolve.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace dislox {

Vector solve_spd(const SpMat& A, const Vector& b, double tol, int maxiter_factor,
                 int* iters_out) {
  const int n = static_cast<int>(b.size());
  if (iters_out) *iters_out = 0;
  const double bnorm = b.norm();
  if (bnorm == 0.0) return Vector::Zero(n);

  Vector dinv(n);
  for (int i = 0; i < n; ++i) {
    const double d = A.coeff(i, i);
    if (!(d > 0.0)) throw SolveError("non-positive diagonal entry; matrix is not SPD");
    dinv[i] = 1.0 / d;
  }

  Vector x = Vector::Zero(n);
  Vector r = b;
  Vector z = dinv.asDiagonal() * r;
  Vector p = z;
  double rz = r.dot(z);
  const long maxiter = static_cast<long>(maxiter_factor) * n;

  for (long it = 1; it <= maxiter; ++it) {
    const Vector Ap = A * p;
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) throw SolveError("indefinite matrix detected in CG");
    const double alpha = rz / pAp;
    x += alpha * p;
    r -= alpha * Ap;
    if (iters_out) *iters_out = static_cast<int>(it);
    if (r.norm() <= tol * bnorm) return x;
    z = dinv.asDiagonal() * r;
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  throw SolveError("CG failed to reach relative residual " + std::to_string(tol) + " in " +
                   std::to_string(maxiter) + " iterations");
}

CholeskySolver::CholeskySolver(const SpMat& A) : n_(static_cast<int>(A.rows())) {
  llt_.compute(A);
  if (llt_.info() != Eigen::Success)
    throw SolveError("sparse Cholesky factorization failed (matrix not SPD?)");
}

Vector CholeskySolver::solve(const Vector& b) const {
  Vector x = llt_.solve(b);
  if (llt_.info() != Eigen::Success) throw SolveError("sparse Cholesky solve failed");
  return x;
}

BorderedNeumannSolver::BorderedNeumannSolver(const SpMat& K, const Vector& lumped_mass,
                                             const Eigen::MatrixXd& rigid)
    : rigid_(rigid), mass_(lumped_mass), n_(static_cast<int>(K.rows())) {
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(K.nonZeros() + 6 * n_);
  for (int col = 0; col < K.outerSize(); ++col)
    for (SpMat::InnerIterator it(K, col); it; ++it)
      trip.emplace_back(static_cast<int>(it.row()), col, it.value());
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < n_; ++i) {
      const double v = mass_[i] * rigid_(i, k);
      if (v != 0.0) {
        trip.emplace_back(i, n_ + k, v);
        trip.emplace_back(n_ + k, i, v);
      }
    }
  }
  SpMat B(n_ + 3, n_ + 3);
  B.setFromTriplets(trip.begin(), trip.end());
  B.makeCompressed();
  lu_.compute(B);
  if (lu_.info() != Eigen::Success)
    throw SolveError("bordered Neumann factorization failed (disconnected subdomain?)");
}

BorderedNeumannSolver::Result BorderedNeumannSolver::solve(const Vector& f) const {
  Vector rhs = Vector::Zero(n_ + 3);
  rhs.head(n_) = f;
  Vector sol = lu_.solve(rhs);
  if (lu_.info() != Eigen::Success) throw SolveError("bordered Neumann solve failed");
  Result res;
  res.u = sol.head(n_);
  res.multipliers = sol.tail(3);
  return res;
}

} // namespace dislox
