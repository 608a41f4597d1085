#pragma once

#include "core/forward_map.hpp"

namespace dislox {

struct InverseOptions {
  double alpha = 0.0;      // Tikhonov weight on coefficients and knot curvature
  int max_iterations = 12;
  double tol = 1e-8;       // relative misfit decrease
  double lm_lambda0 = 1e-2;
  int lm_max_rejects = 6;
  double fd_step = 5e-4;   // central-difference step for the knot Jacobian
  int slip_modes = 8;
  unsigned long long seed = 1234;
  double noise_sigma = 0.0;
  bool freeze_fault = false;
};

/// One data column per slip mode on a fixed realized fault.
Eigen::MatrixXd assemble_forward_operator(const RealizedFault& rf, const ElasticModel& model,
                                          const ForwardContext& ctx, int modes,
                                          const XiSampling& sampling);

/// Output least squares J = 1/2 sum |F - d|^2 + alpha (|c|^2 + |D2 theta|^2).
double misfit(const FaultParam& fp, const SlipParam& sp, const ForwardContext& ctx,
              const SurfaceData& data, double alpha);

/// Second differences of the knot heights (the curvature penalty).
Eigen::VectorXd second_differences(const std::vector<double>& heights);

/// Per-parameter plus/minus evaluations behind a central-difference
/// gradient, kept for diagnostics.
struct FdDiagnostics {
  Eigen::VectorXd plus;
  Eigen::VectorXd minus;
};

/// Central finite differences of a scalar function of parameters. Solver
/// failures are rethrown annotated with the perturbed parameter index.
Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& params, double step,
                            FdDiagnostics* diag = nullptr);

struct ReconstructTraceRow {
  int iteration = 0;
  double misfit_value = 0.0;
  bool lm_rejected = false;
  std::vector<double> heights;
  Eigen::VectorXd coeffs;
};

struct ReconstructResult {
  FaultParam fault;
  SlipParam slip;
  std::vector<ReconstructTraceRow> trace;
  bool converged = false;
  double final_misfit = 0.0;
};

/// Alternating scheme: exact Tikhonov least squares in the slip coefficients
/// for the frozen fault, then one Levenberg-Marquardt step on the knot
/// heights with a finite-difference Jacobian. Never throws away work: on
/// non-convergence the best iterate is returned with converged = false.
ReconstructResult reconstruct(const SurfaceData& data, const FaultParam& fp0,
                              const SlipParam& sp0, const ForwardContext& ctx,
                              const InverseOptions& opts);

struct GapReport {
  double gap = 0.0;        // relative data distance between the two cases
  double floor = 0.0;
  bool exceeds_floor = false;
  double norm1 = 0.0, norm2 = 0.0;
};

/// Discrete shadow of the uniqueness statement: two candidate (fault, slip)
/// pairs solved on their own conforming meshes, compared on a common patch
/// sampling.
GapReport distinguishability_experiment(const FaultParam& fp1, const SlipParam& sp1,
                                        const FaultParam& fp2, const SlipParam& sp2,
                                        const ForwardContext& ctx, double floor);

} // namespace dislox
