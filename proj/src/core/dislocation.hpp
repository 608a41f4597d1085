#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>

#include "core/assembly.hpp"
#include "core/linsolve.hpp"
#include "core/slip.hpp"
#include "core/topology.hpp"

namespace dislox {

/// Data of the boundary-value problem besides the slip: body force per
/// region, tractions per boundary facet tag, an optional prescribed traction
/// jump across the fault (used by manufactured cases; the physical problem
/// has none), and optional inhomogeneous Dirichlet values on sigma.
struct LoadSpec {
  BodyForce body;
  std::map<int, std::function<Vec2(const Vec2&)>> tractions; // facet tag -> h
  std::function<Vec2(const Vec2&)> fault_traction_jump;      // j = [sigma n] on S
  std::function<Vec2(int, const Vec2&)> dirichlet;           // values on sigma nodes
};

/// Everything the direct solvers share: the original mesh, the fault
/// topology with its split-node map, the split mesh, material, loads, slip.
struct ProblemSetup {
  const Mesh* mesh = nullptr;
  const BoundaryRoles* roles = nullptr;
  const ElasticModel* model = nullptr;
  FaultTopology ft;
  Mesh split;
  LoadSpec loads;
  SlipField slip;

  static ProblemSetup create(const Mesh& mesh, const BoundaryRoles& roles,
                             const ElasticModel& model, const LoadSpec& loads,
                             const SlipField& slip);

  bool has_fault() const { return !ft.s_facets.empty(); }
};

struct TransmissionReport {
  double jump_err_s = 0.0;        // max nodal |[u] - g| over interior fault nodes
  double jump_err_gamma = 0.0;    // max nodal |[u]| over Gamma \ S
  double traction_res_s = 0.0;    // consistent-flux balance defect, relative
  double traction_res_gamma = 0.0;
  double traction_scale = 0.0;    // max of the one-sided traction dual norms
  // Elementwise stress jump across the interface in the dual surrogate norm.
  // The consistent-flux defect above is a solver diagnostic (zero up to the
  // linear solver); this one measures the discretization and decays under
  // refinement.
  double stress_jump_s = 0.0;
  double stress_jump_gamma = 0.0;
  double interior_residual = 0.0; // relative residual of the global reduced system
  std::string summary() const;
};

struct DirectSolution {
  std::string method; // "interface" | "split_node" | "neumann"
  std::vector<Vec2> u; // one value per split-mesh node
  TransmissionReport report;
  int interface_iterations = 0;
  // Two-sided interface traces (on ft.gamma_nodes) when the method keeps
  // them; used by the jump diagnostics of the interface method.
  std::vector<Vec2> trace_plus, trace_minus;
};

/// Boundary facet loads present in the spec, resolved against the facet tags.
std::vector<FacetLoad> boundary_loads(const Mesh& mesh, const LoadSpec& loads);

/// Consistent load of the fault traction datum on the split mesh, spread
/// half/half onto the two sides of each split pair (the halves merge when
/// the jump constraint is eliminated). Zero vector when no datum is set.
Vector fault_datum_load(const Mesh& split, const FaultTopology& ft, const DofMap& dofs,
                        const LoadSpec& loads);

/// \int_S j . hat_i per interface trace dof (full weight), in the ordering of
/// ft.gamma_nodes. Zero when no datum is set.
Vector fault_datum_trace_functional(const FaultTopology& ft, const LoadSpec& loads);

/// L2 norm / difference of nodal fields over a mesh (P1-exact quadrature).
double field_l2(const Mesh& mesh, const std::vector<Vec2>& u);
double field_l2_diff(const Mesh& mesh, const std::vector<Vec2>& a, const std::vector<Vec2>& b);

} // namespace dislox
