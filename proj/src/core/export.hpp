#pragma once

#include <string>
#include <vector>

#include "core/forward_map.hpp"
#include "core/mesh.hpp"

namespace dislox {

/// Write-temp-then-rename so partially written outputs never appear.
void atomic_write(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

/// Legacy ASCII VTK unstructured grid with a point vector field
/// `displacement`. Split nodes appear as distinct points, making the jump
/// visible in a viewer.
std::string vtk_displacement(const Mesh& mesh, const std::vector<Vec2>& u);

/// CSV `node_id,x,y,ux,uy` with 17 significant digits (bitwise round trip).
std::string csv_displacement(const Mesh& mesh, const std::vector<Vec2>& u);
std::vector<Vec2> parse_csv_displacement(const std::string& text, int expected_nodes);

/// Surface data CSV `x,y,ux,uy`.
std::string csv_surface_data(const SurfaceData& data);
SurfaceData parse_csv_surface_data(const std::string& text);

/// FNV-1a 64-bit content hash, hex-encoded.
std::string content_hash(const std::string& text);

} // namespace dislox
