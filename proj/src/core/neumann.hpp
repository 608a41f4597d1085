#pragma once

#include "core/dislocation.hpp"

namespace dislox {

/// Pure-Neumann dislocation problem (whole boundary loaded, no clamped
/// part), solved in the rigid-motion-free space via the bordered system.
/// The solution decomposes as u_ring (slip only, traction-free) plus w
/// (boundary load only, no slip); the combined single solve is returned
/// alongside the two pieces so superposition can be verified.
struct NeumannVariant {
  DirectSolution u_ring;   // slip only
  DirectSolution w;        // boundary load only, continuous across the fault
  DirectSolution sum;      // u_ring + w, the decomposition's answer
  DirectSolution combined; // one solve with both data
};

NeumannVariant solve_neumann_variant(const ProblemSetup& ps);

/// Free-floating split-mesh solve (slip + loads, no Dirichlet part),
/// normalized against global rigid motions.
DirectSolution solve_split_floating(const ProblemSetup& ps);

} // namespace dislox
