#pragma once

#include "core/dislocation.hpp"
#include "core/fault_param.hpp"

namespace dislox {

/// Fixed measurement sampling on the surface patch: nodes and facet
/// midpoints of the xi-tagged facets, serialized sorted by position so every
/// candidate mesh is sampled at identical points.
struct XiSampling {
  std::vector<Vec2> points;
  int size() const { return static_cast<int>(points.size()); }
};

XiSampling make_xi_sampling(const Mesh& mesh, const BoundaryRoles& roles);

struct SurfaceData {
  XiSampling sampling;
  std::vector<Vec2> values;
  double noise_sigma = 0.0;

  Eigen::VectorXd stacked() const;
};

/// P1 interpolation of a nodal field at points lying on boundary facets of
/// the given mesh (within tolerance).
std::vector<Vec2> sample_on_boundary(const Mesh& mesh, const std::vector<Vec2>& u,
                                     const XiSampling& sampling);

/// Full forward map: realize the fault, build the slip from the modal
/// coefficients, run the split-node solve, sample on the patch. Linear in
/// the slip coefficients for a fixed fault.
struct ForwardContext {
  MaterialSpec material;
  MeshingOpts meshing;
  SolverOptions solver;
};

SurfaceData forward_map(const FaultParam& fp, const SlipParam& sp, const ForwardContext& ctx,
                        const XiSampling& sampling);

/// Forward solve on an already realized fault (re-used when assembling the
/// linear-in-coefficients operator).
SurfaceData forward_on_realized(const RealizedFault& rf, const ElasticModel& model,
                                const SlipField& slip, const SolverOptions& solver,
                                const XiSampling& sampling);

/// Additive Gaussian measurement noise, deterministic for a fixed seed.
void add_noise(SurfaceData& data, double sigma, unsigned long long seed);

} // namespace dislox
