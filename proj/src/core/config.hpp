#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/fault_param.hpp"
#include "core/inversion.hpp"
#include "core/material.hpp"
#include "core/mesh.hpp"
#include "core/mms.hpp"

namespace dislox {

/// One parsed config value: number, bare/quoted string, boolean, numeric
/// array, or inline table.
struct ConfigValue {
  int line = 0;
  std::variant<double, std::string, bool, std::vector<double>,
               std::map<std::string, ConfigValue>>
      v;

  double as_number(const std::string& key) const;
  long long as_int(const std::string& key) const;
  bool as_bool(const std::string& key) const;
  const std::string& as_string(const std::string& key) const;
  const std::vector<double>& as_array(const std::string& key) const;
  const std::map<std::string, ConfigValue>& as_table(const std::string& key) const;
};

/// INI-style document: [section] headers, key = value lines, '#' comments.
/// Section and key names are validated against the schema; unknown names are
/// hard errors naming the offender and its line.
struct ConfigDoc {
  std::map<std::string, std::map<std::string, ConfigValue>> sections;
  bool has(const std::string& section) const { return sections.count(section) > 0; }
};

ConfigDoc parse_config_text(const std::string& text);

/// Slip specification: nodal file, analytic bump over the fault arclength,
/// or modal coefficients.
struct SlipSpec {
  enum class Kind { None, File, Bump, Modes };
  Kind kind = Kind::None;
  std::string file;
  double bump_center = 0.5, bump_halfwidth = 0.25, bump_amplitude = 1.0;
  Vec2 bump_direction = {1.0, 0.0};
  bool bump_along_tangent = false, bump_along_normal = false;
  std::vector<double> mode_coeffs;
};

struct InverseConfig {
  FaultParam fault0;          // initial fault (knots + heights0)
  MeshingOpts meshing;
  InverseOptions options;
  std::string data_file;      // measurement CSV; empty if synthetic
  std::vector<double> synth_heights;
  std::vector<double> synth_coeffs;
};

/// Fully resolved scenario: mesh + roles (from file or generator), material,
/// slip, solver options, optional manufactured-case and inverse blocks.
struct Scenario {
  std::string config_text;
  std::string base_dir;

  Mesh mesh;
  BoundaryRoles roles;
  bool mesh_from_generator = false;
  std::string generator; // "", "unit_square", "mms", "fault_param"
  int n = 16;
  MmsKind mms_kind = MmsKind::SmoothJump;
  bool has_mms = false;

  std::optional<FaultParam> fault_param;
  MeshingOpts meshing;
  std::optional<std::array<double, 4>> fault_box;
  std::optional<std::array<double, 4>> fault_alt_box;
  std::optional<std::array<double, 4>> fault_segment;

  MaterialSpec material;
  SlipSpec slip;
  SolverOptions solver;
  std::string default_method = "split";

  std::optional<InverseConfig> inverse;

  std::string output_dir = "out";
  std::string export_format = "csv";

  /// Command-specific requirements ("forward", "inverse", "mms", "check",
  /// "export"); throws ConfigError when a required block is missing.
  void require_for(const std::string& command) const;

  /// Materialize the slip field on a fault topology.
  SlipField build_slip(const Mesh& mesh, const FaultTopology& ft) const;
};

Scenario parse_scenario(const std::string& text, const std::string& base_dir);
Scenario load_scenario(const std::string& config_path);

/// CSV with rows `node_id,gx,gy` (header optional).
SlipField read_slip_csv(const std::string& path);

} // namespace dislox
