#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "core/errors.hpp"
#include "core/inversion.hpp"

using namespace dislox;

namespace {

ForwardContext small_ctx() {
  ForwardContext ctx;
  ctx.material.regions[1] = {AffineField{1, 0, 0}, AffineField{1, 0, 0}};
  ctx.material.regions[2] = {AffineField{1, 0, 0}, AffineField{1, 0, 0}};
  ctx.material.alpha0 = 0.5;
  ctx.material.beta0 = 2.0;
  ctx.meshing.h = 1.0 / 12.0;
  return ctx;
}

FaultParam flatish_fault() {
  FaultParam fp;
  fp.knots = {0.3, 0.5, 0.7};
  fp.heights = {0.5, 0.51, 0.49};
  return fp;
}

SlipParam coeffs(std::initializer_list<double> vals) {
  SlipParam sp;
  sp.modes = static_cast<int>(vals.size());
  sp.coeffs = Eigen::VectorXd(sp.modes);
  int i = 0;
  for (double v : vals) sp.coeffs[i++] = v;
  return sp;
}

} // namespace

TEST_CASE("slip basis functions vanish at both fault ends") {
  FaultParam fp = flatish_fault();
  ForwardContext ctx = small_ctx();
  RealizedFault rf = realize_fault(fp, ctx.meshing);
  const int modes = 8;
  for (int m = 0; m < modes; ++m) {
    SlipField basis = slip_basis_field(rf.mesh, rf.topo, modes, m);
    for (int node : rf.topo.s_boundary_nodes) {
      CHECK(basis.at(node).x == 0.0);
      CHECK(basis.at(node).y == 0.0);
    }
  }
}

TEST_CASE("forward map: zero slip, linearity, amplitude doubling") {
  FaultParam fp = flatish_fault();
  ForwardContext ctx = small_ctx();
  RealizedFault rf = realize_fault(fp, ctx.meshing);
  XiSampling xs = make_xi_sampling(rf.mesh, rf.roles);

  SurfaceData zero = forward_map(fp, coeffs({0, 0, 0, 0}), ctx, xs);
  CHECK(zero.stacked().norm() == 0.0);

  SlipParam c1 = coeffs({0.5, -0.2, 0.1, 0.05});
  SlipParam c2 = coeffs({-0.1, 0.3, 0.0, 0.2});
  SlipParam sum = coeffs({0.4, 0.1, 0.1, 0.25});
  const Eigen::VectorXd f1 = forward_map(fp, c1, ctx, xs).stacked();
  const Eigen::VectorXd f2 = forward_map(fp, c2, ctx, xs).stacked();
  const Eigen::VectorXd fs = forward_map(fp, sum, ctx, xs).stacked();
  CHECK((fs - f1 - f2).norm() <= 1e-9 * (f1.norm() + f2.norm()));

  SlipParam twice = c1;
  twice.coeffs *= 2.0;
  const Eigen::VectorXd fd = forward_map(fp, twice, ctx, xs).stacked();
  CHECK(fd.cwiseAbs().maxCoeff() ==
        doctest::Approx(2.0 * f1.cwiseAbs().maxCoeff()).epsilon(1e-9));
}

TEST_CASE("fd_gradient: analytic quadratic and Richardson order") {
  auto quad = [](const Eigen::VectorXd& p) { return p.squaredNorm(); };
  Eigen::VectorXd p0(2);
  p0 << 1.0, 2.0;
  const Eigen::VectorXd g = fd_gradient(quad, p0, 1e-6);
  CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(g[1] == doctest::Approx(4.0).epsilon(1e-8));

  // Central differences converge at second order in the step.
  auto cubic = [](const Eigen::VectorXd& p) { return p[0] * p[0] * p[0]; };
  Eigen::VectorXd x(1);
  x << 1.0;
  const double exact = 3.0;
  const double e1 = std::abs(fd_gradient(cubic, x, 1e-2)[0] - exact);
  const double e2 = std::abs(fd_gradient(cubic, x, 5e-3)[0] - exact);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("misfit basics and fd gradient against the normal equations") {
  FaultParam fp = flatish_fault();
  ForwardContext ctx = small_ctx();
  RealizedFault rf = realize_fault(fp, ctx.meshing);
  XiSampling xs = make_xi_sampling(rf.mesh, rf.roles);

  SlipParam truth = coeffs({0.6, 0.2, -0.1, 0.15});
  SurfaceData data = forward_map(fp, truth, ctx, xs);

  // Exact data reproduce themselves: J = 0 at the truth with alpha = 0.
  CHECK(misfit(fp, truth, ctx, data, 0.0) <= 1e-20);

  // Zero data, zero parameters.
  SurfaceData zero_data = data;
  for (auto& v : zero_data.values) v = {0, 0};
  CHECK(misfit(fp, coeffs({0, 0, 0, 0}), ctx, zero_data, 0.0) == 0.0);

  // A positive penalty only adds.
  CHECK(misfit(fp, truth, ctx, data, 1e-3) > misfit(fp, truth, ctx, data, 0.0));

  // Gradient in the coefficients matches F^T (F c - d) + 2 alpha c.
  ElasticModel model = build_elastic_model(ctx.material, rf.mesh);
  const Eigen::MatrixXd F = assemble_forward_operator(rf, model, ctx, 4, xs);
  SlipParam c0 = coeffs({0.1, -0.3, 0.2, 0.0});
  const double alpha = 1e-4;
  auto j_of = [&](const Eigen::VectorXd& c) {
    SlipParam sp = c0;
    sp.coeffs = c;
    return misfit(fp, sp, ctx, data, alpha);
  };
  const Eigen::VectorXd g_fd = fd_gradient(j_of, c0.coeffs, 1e-5);
  const Eigen::VectorXd g_exact =
      F.transpose() * (F * c0.coeffs - data.stacked()) + 2.0 * alpha * c0.coeffs;
  CHECK((g_fd - g_exact).norm() <= 1e-6 * g_exact.norm());
}

TEST_CASE("reconstruct: stationary at the truth") {
  FaultParam fp = flatish_fault();
  ForwardContext ctx = small_ctx();
  RealizedFault rf = realize_fault(fp, ctx.meshing);
  XiSampling xs = make_xi_sampling(rf.mesh, rf.roles);
  SlipParam truth = coeffs({0.6, 0.2, -0.1, 0.15});
  SurfaceData data = forward_map(fp, truth, ctx, xs);

  InverseOptions opts;
  opts.slip_modes = 4;
  opts.max_iterations = 3;
  SlipParam sp0 = truth;
  ReconstructResult res = reconstruct(data, fp, sp0, ctx, opts);
  CHECK(res.converged);
  CHECK(res.trace.size() <= 2);
  double param_err = 0.0;
  for (std::size_t k = 0; k < fp.heights.size(); ++k)
    param_err = std::max(param_err, std::abs(res.fault.heights[k] - fp.heights[k]));
  param_err = std::max(param_err, (res.slip.coeffs - truth.coeffs).cwiseAbs().maxCoeff());
  CHECK(param_err <= 1e-8);
}

TEST_CASE("frozen fault: linear recovery matches the explicit least-squares oracle") {
  FaultParam fp = flatish_fault();
  ForwardContext ctx = small_ctx();
  RealizedFault rf = realize_fault(fp, ctx.meshing);
  XiSampling xs = make_xi_sampling(rf.mesh, rf.roles);
  SlipParam truth = coeffs({0.8, 0.3, -0.2, 0.1, 0.15, -0.1});
  SurfaceData data = forward_map(fp, truth, ctx, xs);

  InverseOptions opts;
  opts.slip_modes = 6;
  opts.freeze_fault = true;
  SlipParam sp0 = coeffs({0, 0, 0, 0, 0, 0});
  ReconstructResult res = reconstruct(data, fp, sp0, ctx, opts);

  // Oracle: assemble the operator column by column and solve dense LSQ.
  ElasticModel model = build_elastic_model(ctx.material, rf.mesh);
  const Eigen::MatrixXd F = assemble_forward_operator(rf, model, ctx, 6, xs);
  const Eigen::VectorXd c_oracle =
      (F.transpose() * F).ldlt().solve(F.transpose() * data.stacked());

  CHECK((res.slip.coeffs - c_oracle).norm() <= 1e-6 * c_oracle.norm());
  CHECK((res.slip.coeffs - truth.coeffs).norm() <= 0.05 * truth.coeffs.norm());
}

TEST_CASE("distinguishability: identical cases give a vanishing gap") {
  FaultParam fp = flatish_fault();
  ForwardContext ctx = small_ctx();
  SlipParam sp = coeffs({0.5, 0.2, -0.1, 0.05});
  GapReport rep = distinguishability_experiment(fp, sp, fp, sp, ctx, 1e-3);
  CHECK(rep.gap <= 1e-8);
  CHECK_FALSE(rep.exceeds_floor);
}

TEST_CASE("distinguishability: parallel faults are told apart") {
  ForwardContext ctx = small_ctx();
  FaultParam fp1, fp2;
  fp1.knots = fp2.knots = {0.3, 0.5, 0.7};
  fp1.heights = {0.55, 0.55, 0.55};
  const double sep = 0.1 * std::sqrt(2.0);
  fp2.heights = {0.55 - sep, 0.55 - sep, 0.55 - sep};
  SlipParam sp = coeffs({0.8, 0.3, -0.2, 0.1});
  GapReport rep = distinguishability_experiment(fp1, sp, fp2, sp, ctx, 1e-3);
  CHECK(rep.gap > 1e-3);
  CHECK(rep.exceeds_floor);
}

TEST_CASE("regularization sweep: recovery error is U-shaped or monotone") {
  FaultParam fp = flatish_fault();
  ForwardContext ctx = small_ctx();
  RealizedFault rf = realize_fault(fp, ctx.meshing);
  XiSampling xs = make_xi_sampling(rf.mesh, rf.roles);
  SlipParam truth = coeffs({0.6, 0.2, -0.1, 0.15});
  SurfaceData data = forward_map(fp, truth, ctx, xs);
  add_noise(data, 1e-4, 99);

  ElasticModel model = build_elastic_model(ctx.material, rf.mesh);
  const Eigen::MatrixXd F = assemble_forward_operator(rf, model, ctx, 4, xs);

  std::vector<double> errors;
  for (double alpha : {1e-8, 1e-5, 1e-2}) {
    const Eigen::MatrixXd N =
        F.transpose() * F + 2.0 * alpha * Eigen::MatrixXd::Identity(4, 4);
    const Eigen::VectorXd c = N.ldlt().solve(F.transpose() * data.stacked());
    errors.push_back((c - truth.coeffs).norm() / truth.coeffs.norm());
    INFO("alpha sweep: alpha=", alpha, " error=", errors.back());
  }
  // At most one direction change, and if one occurs it is a dip (U shape).
  int changes = 0;
  bool last_up = errors[1] > errors[0];
  for (std::size_t i = 2; i < errors.size(); ++i) {
    const bool up = errors[i] > errors[i - 1];
    if (up != last_up) {
      ++changes;
      CHECK(up); // a change must turn upward: down then up
    }
    last_up = up;
  }
  CHECK(changes <= 1);
}

TEST_CASE("fd diagnostics expose the two-sided evaluations") {
  auto f = [](const Eigen::VectorXd& p) { return p[0] * p[0]; };
  Eigen::VectorXd x(1);
  x << 3.0;
  FdDiagnostics diag;
  const Eigen::VectorXd g = fd_gradient(f, x, 0.5, &diag);
  CHECK(diag.plus[0] == doctest::Approx(12.25));
  CHECK(diag.minus[0] == doctest::Approx(6.25));
  CHECK(g[0] == doctest::Approx(6.0));
}
