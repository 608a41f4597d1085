#pragma once

#include <functional>
#include <map>

#include "core/topology.hpp"

namespace dislox {

/// Nodal slip vector g on the closure of the fault. Identically zero on the
/// fault boundary nodes; that is the discrete trace condition that makes the
/// zero extension to Gamma legitimate.
struct SlipField {
  std::map<int, Vec2> values; // node id on S closure -> slip vector

  Vec2 at(int node) const {
    auto it = values.find(node);
    return it == values.end() ? Vec2{0.0, 0.0} : it->second;
  }
};

/// Build a slip field by sampling a function of position on the fault nodes;
/// values at the fault boundary nodes are forced to zero exactly.
SlipField make_slip(const Mesh& mesh, const FaultTopology& ft,
                    const std::function<Vec2(const Vec2&)>& g);

/// Throws InvariantError if g is nonzero on a fault boundary node or not finite.
void validate_slip(const SlipField& slip, const FaultTopology& ft);

/// Surrogate for the weighted trace norm:
///   ||g|| = sqrt(sum \int |g|^2) + sqrt(sum \int |g|^2 / rho)
/// with a 2-point Gauss rule per fault facet (quadrature points avoid the
/// zeros of rho).
double weighted_slip_norm(const SlipField& slip, const FaultTopology& ft);

/// Zero extension of g to the whole interface: values on gamma_nodes order,
/// equal to g on interior fault nodes and zero elsewhere.
std::vector<Vec2> extend_slip(const SlipField& slip, const FaultTopology& ft);

} // namespace dislox
