#pragma once

#include "core/dislocation.hpp"

namespace dislox {

/// Transmission diagnostics of a computed solution:
///  (a) max nodal |[u] - g| over interior fault nodes,
///  (b) max nodal |[u]| over the rest of the interface (two-sided traces
///      when the solution carries them, exactly zero for single-valued
///      split-mesh fields),
///  (c) dual-norm surrogate of the traction-jump residual on S and on
///      Gamma \ S via two-sided consistent flux recovery (the prescribed
///      fault traction datum, when present, is accounted for),
///  (d) relative residual of the global reduced system.
TransmissionReport compute_transmission(const ProblemSetup& ps, const DirectSolution& sol);

} // namespace dislox
