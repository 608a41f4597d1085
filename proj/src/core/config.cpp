#include "core/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"
#include "core/meshgen.hpp"
#include "core/mesh_io.hpp"

namespace dislox {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  std::size_t b = s.find_last_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

bool parse_number(const std::string& tok, double& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

// Split a comma-separated list at the top level (no nested brackets here).
std::vector<std::string> split_top(const std::string& s, int line) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
      continue;
    }
    cur.push_back(c);
  }
  if (depth != 0) throw ConfigError("line " + std::to_string(line) + ": unbalanced brackets");
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

ConfigValue parse_value(const std::string& raw, int line) {
  ConfigValue v;
  v.line = line;
  const std::string s = trim(raw);
  if (s.empty()) throw ConfigError("line " + std::to_string(line) + ": empty value");

  if (s.front() == '[') {
    if (s.back() != ']')
      throw ConfigError("line " + std::to_string(line) + ": unterminated array");
    std::vector<double> arr;
    for (const auto& item : split_top(s.substr(1, s.size() - 2), line)) {
      if (item.empty()) continue;
      double d;
      if (!parse_number(item, d))
        throw ConfigError("line " + std::to_string(line) + ": array entry '" + item +
                          "' is not a number");
      arr.push_back(d);
    }
    v.v = arr;
    return v;
  }
  if (s.front() == '{') {
    if (s.back() != '}')
      throw ConfigError("line " + std::to_string(line) + ": unterminated table");
    std::map<std::string, ConfigValue> table;
    for (const auto& item : split_top(s.substr(1, s.size() - 2), line)) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(line) + ": table entry '" + item +
                          "' is not key = value");
      const std::string key = trim(item.substr(0, eq));
      table.emplace(key, parse_value(item.substr(eq + 1), line));
    }
    v.v = table;
    return v;
  }
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"')
      throw ConfigError("line " + std::to_string(line) + ": unterminated string");
    v.v = s.substr(1, s.size() - 2);
    return v;
  }
  if (s == "true" || s == "false") {
    v.v = (s == "true");
    return v;
  }
  double d;
  if (parse_number(s, d)) {
    v.v = d;
    return v;
  }
  v.v = s; // bare string
  return v;
}

[[noreturn]] void type_error(const std::string& key, int line, const char* want) {
  throw ConfigError("key '" + key + "' (line " + std::to_string(line) + ") must be a " + want);
}

const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> s = {
      {"mesh", {"file", "generator", "n", "kind", "h"}},
      {"roles", {"sigma_tags", "free_tags", "xi_tags", "xi_window"}},
      {"fault",
       {"tags", "omega_minus_regions", "segment", "box", "alt_box", "knots", "heights",
        "frame_angle", "frame_origin", "depth", "safety_box"}},
      {"admissibility", {"alpha0", "beta0", "M"}},
      {"slip", {"file", "bump", "modes"}},
      {"solver", {"cg_tol", "cg_maxiter_factor", "interface_tol", "method"}},
      {"inverse",
       {"knots", "heights0", "frame_angle", "frame_origin", "slip_modes", "alpha",
        "max_iterations", "tol", "lm_lambda0", "fd_step", "seed", "noise_sigma", "mesh_h",
        "depth", "safety_box", "xi", "data", "synth_heights", "synth_coeffs", "freeze_fault"}},
      {"output", {"dir", "format"}},
  };
  return s;
}

void check_schema(const ConfigDoc& doc) {
  for (const auto& [section, keys] : doc.sections) {
    std::string lookup = section;
    if (section.rfind("material.", 0) == 0) {
      const std::string tag = section.substr(9);
      long long t;
      auto [p, ec] = std::from_chars(tag.data(), tag.data() + tag.size(), t);
      if (ec != std::errc() || p != tag.data() + tag.size())
        throw ConfigError("material section '[" + section + "]' needs a numeric region tag");
      for (const auto& [key, val] : keys) {
        if (key != "lambda" && key != "mu")
          throw ConfigError("unknown key '" + key + "' (line " + std::to_string(val.line) +
                            ") in [" + section + "]");
      }
      continue;
    }
    auto it = schema().find(lookup);
    if (it == schema().end()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, val] : keys) {
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
        throw ConfigError("unknown key '" + key + "' (line " + std::to_string(val.line) +
                          ") in [" + section + "]");
    }
  }
}

std::set<int> tag_set(const std::vector<double>& arr, const std::string& key) {
  std::set<int> out;
  for (double v : arr) {
    const int t = static_cast<int>(std::lround(v));
    if (std::abs(v - t) > 0)
      throw ConfigError("key '" + key + "': tag " + std::to_string(v) + " is not an integer");
    out.insert(t);
  }
  return out;
}

AffineField affine_from(const ConfigValue& v, const std::string& key) {
  if (std::holds_alternative<double>(v.v)) return {std::get<double>(v.v), 0.0, 0.0};
  const auto& arr = v.as_array(key);
  if (arr.size() != 3)
    throw ConfigError("key '" + key + "' must be a scalar or [a, b1, b2] affine coefficients");
  return {arr[0], arr[1], arr[2]};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string join_path(const std::string& base, const std::string& rel) {
  if (rel.empty() || rel.front() == '/' || base.empty()) return rel;
  return base + "/" + rel;
}

} // namespace

double ConfigValue::as_number(const std::string& key) const {
  if (!std::holds_alternative<double>(v)) type_error(key, line, "number");
  return std::get<double>(v);
}

long long ConfigValue::as_int(const std::string& key) const {
  const double d = as_number(key);
  const long long i = static_cast<long long>(std::llround(d));
  if (std::abs(d - static_cast<double>(i)) > 0) type_error(key, line, "integer");
  return i;
}

bool ConfigValue::as_bool(const std::string& key) const {
  if (!std::holds_alternative<bool>(v)) type_error(key, line, "boolean");
  return std::get<bool>(v);
}

const std::string& ConfigValue::as_string(const std::string& key) const {
  if (!std::holds_alternative<std::string>(v)) type_error(key, line, "string");
  return std::get<std::string>(v);
}

const std::vector<double>& ConfigValue::as_array(const std::string& key) const {
  if (!std::holds_alternative<std::vector<double>>(v)) type_error(key, line, "array");
  return std::get<std::vector<double>>(v);
}

const std::map<std::string, ConfigValue>& ConfigValue::as_table(const std::string& key) const {
  if (!std::holds_alternative<std::map<std::string, ConfigValue>>(v))
    type_error(key, line, "table");
  return std::get<std::map<std::string, ConfigValue>>(v);
}

ConfigDoc parse_config_text(const std::string& text) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments outside quotes
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (!quoted && (line[i] == '#' || line[i] == ';')) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": empty section name");
      doc.sections[section]; // create
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    auto [it, inserted] =
        doc.sections[section].emplace(key, parse_value(line.substr(eq + 1), lineno));
    if (!inserted)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "' in [" +
                        section + "]");
  }
  check_schema(doc);
  return doc;
}

SlipField read_slip_csv(const std::string& path) {
  const std::string text = read_file(path);
  SlipField slip;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.find("node_id") != std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    long long node;
    double gx, gy;
    if (!(row >> node >> gx >> gy))
      throw ConfigError("slip file " + path + " line " + std::to_string(lineno) +
                        ": expected node_id, gx, gy");
    slip.values[static_cast<int>(node)] = {gx, gy};
  }
  return slip;
}

Scenario parse_scenario(const std::string& text, const std::string& base_dir) {
  ConfigDoc doc = parse_config_text(text);
  Scenario sc;
  sc.config_text = text;
  sc.base_dir = base_dir;

  auto get = [&](const std::string& section, const std::string& key) -> const ConfigValue* {
    auto sit = doc.sections.find(section);
    if (sit == doc.sections.end()) return nullptr;
    auto kit = sit->second.find(key);
    return kit == sit->second.end() ? nullptr : &kit->second;
  };

  // --- mesh ---
  if (!doc.has("mesh")) throw ConfigError("missing [mesh] section");
  const ConfigValue* file = get("mesh", "file");
  const ConfigValue* gen = get("mesh", "generator");
  if ((file != nullptr) == (gen != nullptr))
    throw ConfigError("[mesh] needs exactly one of 'file' or 'generator'");
  if (const auto* n = get("mesh", "n")) sc.n = static_cast<int>(n->as_int("n"));

  // --- fault block (read before mesh generation, generators use it) ---
  if (const auto* v = get("fault", "segment")) {
    const auto& a = v->as_array("segment");
    if (a.size() != 4) throw ConfigError("fault segment must be [x0, y0, x1, y1]");
    sc.fault_segment = {a[0], a[1], a[2], a[3]};
  }
  if (const auto* v = get("fault", "box")) {
    const auto& a = v->as_array("box");
    if (a.size() != 4) throw ConfigError("fault box must be [x0, y0, x1, y1]");
    sc.fault_box = {a[0], a[1], a[2], a[3]};
  }
  if (const auto* v = get("fault", "alt_box")) {
    const auto& a = v->as_array("alt_box");
    if (a.size() != 4) throw ConfigError("fault alt_box must be [x0, y0, x1, y1]");
    sc.fault_alt_box = {a[0], a[1], a[2], a[3]};
  }
  if (const auto* v = get("fault", "depth")) sc.meshing.depth = v->as_number("depth");
  if (const auto* v = get("fault", "safety_box")) {
    const auto& a = v->as_array("safety_box");
    if (a.size() != 4) throw ConfigError("fault safety_box must be [x0, y0, x1, y1]");
    sc.meshing.safety_box = {a[0], a[1], a[2], a[3]};
  }
  if (const auto* v = get("mesh", "h")) sc.meshing.h = v->as_number("h");
  if (get("fault", "knots")) {
    FaultParam fp;
    fp.knots = get("fault", "knots")->as_array("knots");
    if (const auto* hv = get("fault", "heights")) fp.heights = hv->as_array("heights");
    if (const auto* av = get("fault", "frame_angle"))
      fp.frame_angle = av->as_number("frame_angle");
    if (const auto* ov = get("fault", "frame_origin")) {
      const auto& a = ov->as_array("frame_origin");
      if (a.size() != 2) throw ConfigError("frame_origin must be [x, y]");
      fp.frame_origin = {a[0], a[1]};
    }
    fp.validate();
    sc.fault_param = fp;
  }

  std::optional<std::pair<double, double>> xi_window;
  if (const auto* v = get("roles", "xi_window")) {
    const auto& a = v->as_array("xi_window");
    if (a.size() != 2) throw ConfigError("xi_window must be [x0, x1]");
    xi_window = {a[0], a[1]};
    sc.meshing.xi_interval = *xi_window;
  }

  if (file) {
    const std::string path = join_path(base_dir, file->as_string("file"));
    sc.mesh = parse_mesh(read_file(path));
    if (const auto* v = get("roles", "sigma_tags"))
      sc.roles.sigma_tags = tag_set(v->as_array("sigma_tags"), "sigma_tags");
    if (const auto* v = get("roles", "free_tags"))
      sc.roles.free_tags = tag_set(v->as_array("free_tags"), "free_tags");
    if (const auto* v = get("roles", "xi_tags"))
      sc.roles.xi_tags = tag_set(v->as_array("xi_tags"), "xi_tags");
    if (const auto* v = get("fault", "tags"))
      sc.roles.fault_tags = tag_set(v->as_array("tags"), "tags");
    if (const auto* v = get("fault", "omega_minus_regions"))
      sc.roles.omega_minus_regions =
          tag_set(v->as_array("omega_minus_regions"), "omega_minus_regions");
  } else {
    sc.mesh_from_generator = true;
    sc.generator = gen->as_string("generator");
    if (sc.generator == "unit_square") {
      StructuredOpts o;
      o.n = sc.n;
      if (sc.fault_box) {
        o.region_boxes.push_back({*sc.fault_box, 2});
        o.omega_minus_tags = {2};
      }
      if (sc.fault_segment) o.fault_segments.push_back(*sc.fault_segment);
      if (xi_window) o.xi_interval = *xi_window;
      GeneratedMesh gm = structured_square(o);
      sc.mesh = std::move(gm.mesh);
      sc.roles = gm.roles;
    } else if (sc.generator == "mms") {
      sc.has_mms = true;
      if (const auto* v = get("mesh", "kind"))
        sc.mms_kind = mms_kind_from_string(v->as_string("kind"));
      if (doc.has("admissibility"))
        throw ConfigError("the mms generator defines its own admissibility constants");
      for (const auto& [section, keys] : doc.sections)
        if (section.rfind("material.", 0) == 0)
          throw ConfigError("the mms generator defines its own material");
      MmsCase c = manufactured_case(sc.mms_kind, sc.n);
      sc.mesh = std::move(c.gm.mesh);
      sc.roles = c.gm.roles;
      sc.material = c.mspec;
    } else if (sc.generator == "fault_param") {
      if (!sc.fault_param)
        throw ConfigError("generator fault_param needs [fault] knots and heights");
      RealizedFault rf = realize_fault(*sc.fault_param, sc.meshing);
      sc.mesh = std::move(rf.mesh);
      sc.roles = rf.roles;
    } else {
      throw ConfigError("unknown mesh generator '" + sc.generator + "'");
    }
  }
  validate_mesh(sc.mesh);
  validate_roles(sc.mesh, sc.roles);

  // --- material ---
  if (!sc.has_mms) {
    for (const auto& [section, keys] : doc.sections) {
      if (section.rfind("material.", 0) != 0) continue;
      const int tag = std::stoi(section.substr(9));
      AffineField lam, mu;
      auto lit = keys.find("lambda");
      auto mit = keys.find("mu");
      if (lit == keys.end() || mit == keys.end())
        throw ConfigError("[" + section + "] needs both 'lambda' and 'mu'");
      lam = affine_from(lit->second, "lambda");
      mu = affine_from(mit->second, "mu");
      sc.material.regions[tag] = {lam, mu};
    }
    if (const auto* v = get("admissibility", "alpha0")) sc.material.alpha0 = v->as_number("alpha0");
    if (const auto* v = get("admissibility", "beta0")) sc.material.beta0 = v->as_number("beta0");
    if (const auto* v = get("admissibility", "M")) sc.material.lipschitz_M = v->as_number("M");
    // Every scenario that parses must be runnable by `check`.
    for (int tag : sc.mesh.region_tags())
      if (!sc.material.regions.count(tag))
        throw ConfigError("material section missing for mesh region " + std::to_string(tag));
  }

  // --- slip ---
  if (doc.has("slip")) {
    const bool has_file = get("slip", "file") != nullptr;
    const bool has_bump = get("slip", "bump") != nullptr;
    const bool has_modes = get("slip", "modes") != nullptr;
    if (has_file + has_bump + has_modes != 1)
      throw ConfigError("[slip] needs exactly one of 'file', 'bump' or 'modes'");
    if (has_file) {
      sc.slip.kind = SlipSpec::Kind::File;
      sc.slip.file = join_path(base_dir, get("slip", "file")->as_string("file"));
    } else if (has_modes) {
      sc.slip.kind = SlipSpec::Kind::Modes;
      sc.slip.mode_coeffs = get("slip", "modes")->as_array("modes");
    } else {
      sc.slip.kind = SlipSpec::Kind::Bump;
      const auto& table = get("slip", "bump")->as_table("bump");
      for (const auto& [key, val] : table) {
        if (key == "center")
          sc.slip.bump_center = val.as_number("center");
        else if (key == "halfwidth")
          sc.slip.bump_halfwidth = val.as_number("halfwidth");
        else if (key == "amplitude")
          sc.slip.bump_amplitude = val.as_number("amplitude");
        else if (key == "direction") {
          if (std::holds_alternative<std::string>(val.v)) {
            const std::string& dir = std::get<std::string>(val.v);
            if (dir == "tangent")
              sc.slip.bump_along_tangent = true;
            else if (dir == "normal")
              sc.slip.bump_along_normal = true;
            else
              throw ConfigError("bump direction must be [dx, dy], 'tangent' or 'normal'");
          } else {
            const auto& a = val.as_array("direction");
            if (a.size() != 2) throw ConfigError("bump direction must be [dx, dy]");
            sc.slip.bump_direction = {a[0], a[1]};
          }
        } else {
          throw ConfigError("unknown bump key '" + key + "' (line " + std::to_string(val.line) +
                            ")");
        }
      }
      if (!(sc.slip.bump_halfwidth > 0.0)) throw ConfigError("bump halfwidth must be positive");
    }
  }

  // --- solver ---
  if (const auto* v = get("solver", "cg_tol")) sc.solver.cg_tol = v->as_number("cg_tol");
  if (const auto* v = get("solver", "cg_maxiter_factor"))
    sc.solver.cg_maxiter_factor = static_cast<int>(v->as_int("cg_maxiter_factor"));
  if (const auto* v = get("solver", "interface_tol"))
    sc.solver.interface_tol = v->as_number("interface_tol");
  if (const auto* v = get("solver", "method")) {
    sc.default_method = v->as_string("method");
    if (sc.default_method != "split" && sc.default_method != "interface")
      throw ConfigError("solver method must be 'split' or 'interface'");
  }

  // --- inverse ---
  if (doc.has("inverse")) {
    InverseConfig inv;
    const auto* knots = get("inverse", "knots");
    if (!knots) throw ConfigError("[inverse] needs 'knots'");
    inv.fault0.knots = knots->as_array("knots");
    if (const auto* v = get("inverse", "heights0"))
      inv.fault0.heights = v->as_array("heights0");
    else
      inv.fault0.heights.assign(inv.fault0.knots.size(), 0.5);
    if (const auto* v = get("inverse", "frame_angle"))
      inv.fault0.frame_angle = v->as_number("frame_angle");
    if (const auto* v = get("inverse", "frame_origin")) {
      const auto& a = v->as_array("frame_origin");
      if (a.size() != 2) throw ConfigError("frame_origin must be [x, y]");
      inv.fault0.frame_origin = {a[0], a[1]};
    }
    inv.fault0.validate();
    inv.meshing = sc.meshing;
    if (const auto* v = get("inverse", "mesh_h")) inv.meshing.h = v->as_number("mesh_h");
    if (const auto* v = get("inverse", "depth")) inv.meshing.depth = v->as_number("depth");
    if (const auto* v = get("inverse", "safety_box")) {
      const auto& a = v->as_array("safety_box");
      if (a.size() != 4) throw ConfigError("safety_box must be [x0, y0, x1, y1]");
      inv.meshing.safety_box = {a[0], a[1], a[2], a[3]};
    }
    if (const auto* v = get("inverse", "xi")) {
      const auto& a = v->as_array("xi");
      if (a.size() != 2) throw ConfigError("xi must be [x0, x1]");
      inv.meshing.xi_interval = {a[0], a[1]};
    }
    if (const auto* v = get("inverse", "slip_modes"))
      inv.options.slip_modes = static_cast<int>(v->as_int("slip_modes"));
    if (const auto* v = get("inverse", "alpha")) inv.options.alpha = v->as_number("alpha");
    if (const auto* v = get("inverse", "max_iterations"))
      inv.options.max_iterations = static_cast<int>(v->as_int("max_iterations"));
    if (const auto* v = get("inverse", "tol")) inv.options.tol = v->as_number("tol");
    if (const auto* v = get("inverse", "lm_lambda0"))
      inv.options.lm_lambda0 = v->as_number("lm_lambda0");
    if (const auto* v = get("inverse", "fd_step")) inv.options.fd_step = v->as_number("fd_step");
    if (const auto* v = get("inverse", "seed"))
      inv.options.seed = static_cast<unsigned long long>(v->as_int("seed"));
    if (const auto* v = get("inverse", "noise_sigma"))
      inv.options.noise_sigma = v->as_number("noise_sigma");
    if (const auto* v = get("inverse", "freeze_fault"))
      inv.options.freeze_fault = v->as_bool("freeze_fault");
    if (const auto* v = get("inverse", "data"))
      inv.data_file = join_path(base_dir, v->as_string("data"));
    if (const auto* v = get("inverse", "synth_heights"))
      inv.synth_heights = v->as_array("synth_heights");
    if (const auto* v = get("inverse", "synth_coeffs"))
      inv.synth_coeffs = v->as_array("synth_coeffs");
    sc.inverse = std::move(inv);
  }

  // --- output ---
  if (const auto* v = get("output", "dir")) sc.output_dir = join_path(base_dir, v->as_string("dir"));
  if (const auto* v = get("output", "format")) {
    sc.export_format = v->as_string("format");
    if (sc.export_format != "csv" && sc.export_format != "vtk")
      throw ConfigError("output format must be 'csv' or 'vtk'");
  }

  return sc;
}

Scenario load_scenario(const std::string& config_path) {
  std::string base;
  const auto slash = config_path.find_last_of('/');
  if (slash != std::string::npos) base = config_path.substr(0, slash);
  return parse_scenario(read_file(config_path), base);
}

void Scenario::require_for(const std::string& command) const {
  const bool has_fault = !roles.fault_tags.empty() || fault_param.has_value();
  if (command == "forward" || command == "export") {
    if (has_mms) return;
    if (!has_fault) throw ConfigError(command + " needs a fault configuration");
    if (material.regions.empty()) throw ConfigError(command + " needs material sections");
    if (slip.kind == SlipSpec::Kind::None) throw ConfigError(command + " needs a [slip] section");
  } else if (command == "inverse") {
    if (!inverse) throw ConfigError("inverse mode needs an [inverse] section");
    if (inverse->data_file.empty() && inverse->synth_heights.empty())
      throw ConfigError("[inverse] needs 'data' or synth_heights/synth_coeffs");
    if (material.regions.empty()) throw ConfigError("inverse needs material sections");
  } else if (command == "mms") {
    if (!has_mms) throw ConfigError("mms mode needs [mesh] generator = mms");
  } else if (command == "check") {
    // anything that parses can be checked
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
}

SlipField Scenario::build_slip(const Mesh& m, const FaultTopology& ft) const {
  switch (slip.kind) {
    case SlipSpec::Kind::None: {
      SlipField zero;
      for (int node : ft.s_interior_nodes) zero.values[node] = {0, 0};
      for (int node : ft.s_boundary_nodes) zero.values[node] = {0, 0};
      return zero;
    }
    case SlipSpec::Kind::File: {
      SlipField s = read_slip_csv(slip.file);
      validate_slip(s, ft);
      return s;
    }
    case SlipSpec::Kind::Modes: {
      SlipParam sp;
      sp.modes = static_cast<int>(slip.mode_coeffs.size());
      sp.coeffs = Eigen::Map<const Eigen::VectorXd>(slip.mode_coeffs.data(),
                                                    slip.mode_coeffs.size());
      return slip_from_param(m, ft, sp);
    }
    case SlipSpec::Kind::Bump: {
      FaultChain chain = fault_chain(m, ft);
      SlipField s;
      const double c = slip.bump_center, w = slip.bump_halfwidth;
      for (std::size_t i = 0; i < chain.nodes.size(); ++i) {
        const double t = chain.s[i];
        double val = 0.0;
        if (t > c - w && t < c + w && t > 0.0 && t < 1.0) {
          const double q = (t - (c - w)) * ((c + w) - t) / (w * w);
          val = slip.bump_amplitude * q * q;
        }
        Vec2 dir = slip.bump_direction;
        if (slip.bump_along_tangent) dir = chain.tangent[i];
        if (slip.bump_along_normal) dir = chain.normal[i];
        s.values[chain.nodes[i]] = dir * val;
      }
      validate_slip(s, ft);
      return s;
    }
  }
  throw ConfigError("unreachable slip kind");
}

} // namespace dislox
