#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>

#include "core/meshgen.hpp"
#include "core/slip.hpp"
#include "core/topology.hpp"

namespace dislox {

/// Graph fault in a rotated frame: the curve eta = psi(xi), piecewise linear
/// over fixed knot abscissae, mapped to physical coordinates by
/// x = origin + R(angle) (xi, eta).
struct FaultParam {
  double frame_angle = 0.0;
  Vec2 frame_origin = {0.0, 0.0};
  std::vector<double> knots;   // ascending abscissae
  std::vector<double> heights; // same length

  void validate() const;
};

/// Physical fault polyline at the knots (no densification).
std::vector<Vec2> fault_polyline(const FaultParam& fp);

struct MeshingOpts {
  double h = 1.0 / 24.0;
  double depth = 0.18; // offset of the closure curve below the fault (frame units)
  std::array<double, 4> safety_box = {0.08, 0.14, 0.92, 0.86};
  double min_angle_deg = 15.0;
  int smooth_iterations = 10;
  std::pair<double, double> xi_interval = {0.375, 0.625};
};

struct RealizedFault {
  Mesh mesh;
  BoundaryRoles roles;
  FaultTopology topo;
};

/// Conforming triangulation of the unit square with the fault polyline as
/// interior facets and the enclosed region closed off by an offset copy of
/// the curve. Deterministic for fixed inputs; rejects geometries leaving the
/// safety box or dropping below the quality floor.
RealizedFault realize_fault(const FaultParam& fp, const MeshingOpts& opts);

/// Slip coefficients over sine modes in the arclength fraction s of the
/// fault: coefficients [tangential k=1..p/2 | normal k=1..p/2], each mode
/// sin(k pi s), vanishing at both fault ends by construction.
struct SlipParam {
  int modes = 8;
  Eigen::VectorXd coeffs; // size == modes

  void validate() const;
};

/// Evaluate one basis slip field (mode index 0..modes-1) or a full
/// coefficient combination on the realized fault.
SlipField slip_basis_field(const Mesh& mesh, const FaultTopology& ft, int modes, int mode);
SlipField slip_from_param(const Mesh& mesh, const FaultTopology& ft, const SlipParam& sp);

/// Arclength fractions and unit tangent/normal per fault-chain node,
/// ordered along the chain from one end to the other.
struct FaultChain {
  std::vector<int> nodes;      // along the chain, both ends included
  std::vector<double> s;       // arclength fraction in [0, 1]
  std::vector<Vec2> tangent;   // averaged facet tangents
  std::vector<Vec2> normal;    // rot90(tangent)
};
FaultChain fault_chain(const Mesh& mesh, const FaultTopology& ft);

} // namespace dislox
