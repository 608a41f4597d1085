#pragma once

#include <string>

#include "core/mesh.hpp"

namespace dislox {

/// Parse a `dmesh 1` ASCII document. Node/element ids are re-indexed densely
/// from 0 preserving input order. Throws SyntaxError with the offending line
/// number, or TopologyError for connectivity violations.
Mesh parse_mesh(const std::string& text);

/// Canonical `dmesh 1` serialization (LF line endings, 17 significant digits,
/// dense ids). parse_mesh(write_mesh(m)) reproduces m exactly.
std::string write_mesh(const Mesh& mesh);

} // namespace dislox
