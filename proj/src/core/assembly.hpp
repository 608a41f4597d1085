#pragma once

#include <Eigen/Sparse>
#include <functional>

#include "core/dofmap.hpp"
#include "core/material.hpp"

namespace dislox {

using SpMat = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;

/// P1 plane-strain stiffness over the map's element subset, on the full dof
/// set of the map (no boundary conditions applied). One-point quadrature at
/// the centroid, exact for constant strains with affine Lame fields.
SpMat assemble_stiffness(const Mesh& mesh, const ElasticModel& model, const DofMap& dofs);

using BodyForce = std::function<Vec2(int region, const Vec2&)>;

/// Volume load \int f . phi_i with a degree-6 triangle rule.
Vector assemble_body_force(const Mesh& mesh, const DofMap& dofs, const BodyForce& f);

/// A traction datum on a set of mesh edges (by node pair).
struct FacetLoad {
  std::array<int, 2> v{};
  std::function<Vec2(const Vec2&)> h;
};

/// Boundary/interface load \int h . phi_i with a 4-point Gauss rule per edge.
Vector assemble_facet_load(const Mesh& mesh, const DofMap& dofs,
                           const std::vector<FacetLoad>& loads);

/// Diagonal (lumped) mass per dof: sum of area/3 over incident subset elements.
Vector lumped_mass(const Mesh& mesh, const DofMap& dofs);

/// Two translations and one infinitesimal rotation over the subset,
/// orthonormalized in the lumped-mass inner product. Columns span the
/// discrete kernel of the unconstrained stiffness on a connected subset.
Eigen::MatrixXd rigid_motion_basis(const Mesh& mesh, const DofMap& dofs);

/// Consistent (residual-based) boundary flux: t_i = (K u - l)_i for the dofs
/// of the given nodes. u and l are full dof vectors of the map. This is the
/// discrete conormal derivative in duality with the trace hats, not a
/// pointwise stress evaluation.
std::vector<Vec2> recover_traction(const SpMat& K, const Vector& u, const Vector& l,
                                   const DofMap& dofs, const std::vector<int>& nodes);

/// Dirichlet reduction by symmetric elimination: returns the free-free block
/// and the load with constrained columns moved to the right-hand side.
struct ReducedSystem {
  SpMat A;
  Vector b;
};
ReducedSystem reduce_system(const SpMat& K, const Vector& l, const DofMap& dofs);

/// Scatter a free-dof vector back to the full dof set, filling Dirichlet values.
Vector expand_solution(const Vector& x_free, const DofMap& dofs);

} // namespace dislox
