#pragma once

#include "core/dislocation.hpp"

namespace dislox {

/// Global system on the split mesh with the jump constraint
/// u(plus copy) = u(minus copy) + g eliminated by substitution and, when
/// sigma is constrained, Dirichlet rows/columns eliminated symmetrically.
/// The reduced matrix stays SPD (or singular-with-rigid-kernel in the
/// free-floating variant used by the Neumann problem).
struct SplitSystem {
  enum class Sigma { Constrained, FreeFloating };

  DofMap dm;                       // full dof map on the split mesh
  SpMat K;                         // full stiffness, no constraints applied
  Vector l;                        // full load
  std::vector<int> master;         // full dof -> master full dof (self if kept)
  std::vector<double> jump_offset; // +g component on plus copies
  std::vector<int> red_index;      // full dof -> reduced index, -1 if eliminated
  int n_red = 0;
  SpMat A;
  Vector b;

  Vector reduced_mass() const;                  // lumped mass folded onto masters
  Eigen::MatrixXd reduced_rigid_basis() const;  // mass-orthonormal, 3 columns
  Vector full_from_reduced(const Vector& x) const;
  std::vector<Vec2> nodal_from_reduced(const Vector& x) const;
  Vector reduced_from_nodal(const std::vector<Vec2>& u) const;

private:
  friend SplitSystem build_split_system(const ProblemSetup& ps, Sigma sigma);
  const Mesh* split_ = nullptr;
};

SplitSystem build_split_system(const ProblemSetup& ps,
                               SplitSystem::Sigma sigma = SplitSystem::Sigma::Constrained);

/// Direct split-node solve; the nodal jump across split pairs equals g
/// exactly by construction.
DirectSolution solve_split_node(const ProblemSetup& ps);

/// Continuous solve on the original (unsplit) mesh, ignoring fault and slip.
/// Companion oracle for the zero-slip collapse checks.
std::vector<Vec2> solve_unsplit(const ProblemSetup& ps);

} // namespace dislox
