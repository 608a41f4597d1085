#include "core/mesh_io.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "core/errors.hpp"

namespace dislox {

namespace {

struct Tokenizer {
  std::vector<std::pair<std::string, int>> tokens; // token, line number
  std::size_t pos = 0;

  explicit Tokenizer(const std::string& text) {
    int line = 1;
    std::string cur;
    bool in_comment = false;
    auto flush = [&]() {
      if (!cur.empty()) {
        tokens.emplace_back(cur, line);
        cur.clear();
      }
    };
    for (char c : text) {
      if (c == '\n') {
        flush();
        in_comment = false;
        ++line;
        continue;
      }
      if (in_comment) continue;
      if (c == '#') {
        flush();
        in_comment = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        flush();
        continue;
      }
      cur.push_back(c);
    }
    flush();
  }

  bool done() const { return pos >= tokens.size(); }
  int line() const {
    if (done()) return tokens.empty() ? 1 : tokens.back().second;
    return tokens[pos].second;
  }

  std::string next(const char* what) {
    if (done())
      throw SyntaxError("line " + std::to_string(line()) + ": unexpected end of document, expected " +
                        what);
    return tokens[pos++].first;
  }

  void expect(const char* literal) {
    std::string tok = next(literal);
    if (tok != literal)
      throw SyntaxError("line " + std::to_string(tokens[pos - 1].second) + ": expected '" +
                        literal + "', got '" + tok + "'");
  }

  long long next_int(const char* what) {
    std::string tok = next(what);
    long long value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw SyntaxError("line " + std::to_string(tokens[pos - 1].second) + ": expected integer " +
                        what + ", got '" + tok + "'");
    return value;
  }

  // Locale-independent decimal parse ('.' decimal point).
  double next_double(const char* what) {
    std::string tok = next(what);
    double value = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw SyntaxError("line " + std::to_string(tokens[pos - 1].second) + ": expected number " +
                        what + ", got '" + tok + "'");
    return value;
  }
};

} // namespace

Mesh parse_mesh(const std::string& text) {
  Tokenizer tk(text);
  tk.expect("dmesh");
  long long version = tk.next_int("format version");
  if (version != 1) throw SyntaxError("unsupported dmesh version " + std::to_string(version));
  tk.expect("dim");
  long long dim = tk.next_int("dimension");
  if (dim != 2) throw SyntaxError("only dim 2 is supported, got " + std::to_string(dim));

  Mesh mesh;
  mesh.dim = 2;

  tk.expect("nodes");
  long long nn = tk.next_int("node count");
  if (nn < 0) throw SyntaxError("negative node count");
  std::map<long long, int> node_index;
  mesh.nodes.reserve(static_cast<std::size_t>(nn));
  for (long long i = 0; i < nn; ++i) {
    long long id = tk.next_int("node id");
    double x = tk.next_double("x coordinate");
    double y = tk.next_double("y coordinate");
    auto [it, inserted] = node_index.try_emplace(id, static_cast<int>(mesh.nodes.size()));
    if (!inserted) throw SyntaxError("duplicate node id " + std::to_string(id));
    (void)it;
    mesh.nodes.push_back({x, y});
  }

  auto lookup = [&](long long id) {
    auto it = node_index.find(id);
    if (it == node_index.end())
      throw TopologyError("reference to unknown node id " + std::to_string(id));
    return it->second;
  };

  tk.expect("elements");
  long long ne = tk.next_int("element count");
  if (ne < 0) throw SyntaxError("negative element count");
  std::map<long long, bool> elem_ids;
  mesh.elements.reserve(static_cast<std::size_t>(ne));
  for (long long i = 0; i < ne; ++i) {
    long long id = tk.next_int("element id");
    if (!elem_ids.emplace(id, true).second)
      throw SyntaxError("duplicate element id " + std::to_string(id));
    Mesh::Element el;
    el.region = static_cast<int>(tk.next_int("region tag"));
    for (int k = 0; k < 3; ++k) el.v[k] = lookup(tk.next_int("element vertex"));
    mesh.elements.push_back(el);
  }

  tk.expect("facets");
  long long nf = tk.next_int("facet count");
  if (nf < 0) throw SyntaxError("negative facet count");
  mesh.facets.reserve(static_cast<std::size_t>(nf));
  for (long long i = 0; i < nf; ++i) {
    (void)tk.next_int("facet id");
    Mesh::Facet fa;
    fa.tag = static_cast<int>(tk.next_int("facet tag"));
    for (int k = 0; k < 2; ++k) fa.v[k] = lookup(tk.next_int("facet vertex"));
    mesh.facets.push_back(fa);
  }

  if (!tk.done())
    throw SyntaxError("line " + std::to_string(tk.line()) + ": trailing content '" +
                      tk.next("") + "'");

  validate_mesh(mesh);
  return mesh;
}

std::string write_mesh(const Mesh& mesh) {
  std::ostringstream os;
  char buf[64];
  os << "dmesh 1\n";
  os << "dim " << mesh.dim << "\n";
  os << "nodes " << mesh.nodes.size() << "\n";
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%zu %.17g %.17g\n", i, mesh.nodes[i].x, mesh.nodes[i].y);
    os << buf;
  }
  os << "elements " << mesh.elements.size() << "\n";
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    const auto& el = mesh.elements[i];
    os << i << " " << el.region << " " << el.v[0] << " " << el.v[1] << " " << el.v[2] << "\n";
  }
  os << "facets " << mesh.facets.size() << "\n";
  for (std::size_t i = 0; i < mesh.facets.size(); ++i) {
    const auto& fa = mesh.facets[i];
    os << i << " " << fa.tag << " " << fa.v[0] << " " << fa.v[1] << "\n";
  }
  return os.str();
}

} // namespace dislox
