#include "core/export.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/errors.hpp"

namespace dislox {

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string vtk_displacement(const Mesh& mesh, const std::vector<Vec2>& u) {
  std::ostringstream os;
  char buf[96];
  os << "# vtk DataFile Version 3.0\n";
  os << "displacement field\n";
  os << "ASCII\n";
  os << "DATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.num_nodes() << " double\n";
  for (const auto& p : mesh.nodes) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g 0\n", p.x, p.y);
    os << buf;
  }
  os << "CELLS " << mesh.num_elements() << " " << 4 * mesh.num_elements() << "\n";
  for (const auto& el : mesh.elements)
    os << "3 " << el.v[0] << " " << el.v[1] << " " << el.v[2] << "\n";
  os << "CELL_TYPES " << mesh.num_elements() << "\n";
  for (int e = 0; e < mesh.num_elements(); ++e) os << "5\n";
  os << "POINT_DATA " << mesh.num_nodes() << "\n";
  os << "VECTORS displacement double\n";
  for (const auto& v : u) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g 0\n", v.x, v.y);
    os << buf;
  }
  return os.str();
}

std::string csv_displacement(const Mesh& mesh, const std::vector<Vec2>& u) {
  std::ostringstream os;
  char buf[160];
  os << "node_id,x,y,ux,uy\n";
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g\n", n, mesh.nodes[n].x,
                  mesh.nodes[n].y, u[n].x, u[n].y);
    os << buf;
  }
  return os.str();
}

std::vector<Vec2> parse_csv_displacement(const std::string& text, int expected_nodes) {
  std::vector<Vec2> u(expected_nodes, Vec2{0, 0});
  std::istringstream in(text);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("node_id", 0) == 0 || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    int id;
    double x, y, ux, uy;
    if (!(row >> id >> x >> y >> ux >> uy)) throw IoError("malformed displacement CSV row");
    if (id < 0 || id >= expected_nodes) throw IoError("displacement CSV node id out of range");
    u[id] = {ux, uy};
    ++rows;
  }
  if (rows != expected_nodes) throw IoError("displacement CSV row count mismatch");
  return u;
}

std::string csv_surface_data(const SurfaceData& data) {
  std::ostringstream os;
  char buf[160];
  os << "x,y,ux,uy\n";
  for (std::size_t i = 0; i < data.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", data.sampling.points[i].x,
                  data.sampling.points[i].y, data.values[i].x, data.values[i].y);
    os << buf;
  }
  return os.str();
}

SurfaceData parse_csv_surface_data(const std::string& text) {
  SurfaceData data;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("x,", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x, y, ux, uy;
    if (!(row >> x >> y >> ux >> uy)) throw IoError("malformed surface data CSV row");
    data.sampling.points.push_back({x, y});
    data.values.push_back({ux, uy});
  }
  if (data.values.empty()) throw IoError("surface data CSV is empty");
  return data;
}

std::string content_hash(const std::string& text) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return buf;
}

} // namespace dislox
