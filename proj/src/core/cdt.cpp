#include "core/cdt.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "core/errors.hpp"
#include "core/mesh.hpp"

namespace dislox {

namespace {

using Tri = std::array<int, 3>;

long double orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  const long double acx = (long double)a.x - c.x, acy = (long double)a.y - c.y;
  const long double bcx = (long double)b.x - c.x, bcy = (long double)b.y - c.y;
  return acx * bcy - acy * bcx;
}

// Positive when d lies strictly inside the circumcircle of CCW (a, b, c).
long double incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const long double adx = (long double)a.x - d.x, ady = (long double)a.y - d.y;
  const long double bdx = (long double)b.x - d.x, bdy = (long double)b.y - d.y;
  const long double cdx = (long double)c.x - d.x, cdy = (long double)c.y - d.y;
  const long double ad = adx * adx + ady * ady;
  const long double bd = bdx * bdx + bdy * bdy;
  const long double cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
         ad * (bdx * cdy - bdy * cdx);
}

bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const long double o1 = orient(a, b, c), o2 = orient(a, b, d);
  const long double o3 = orient(c, d, a), o4 = orient(c, d, b);
  return ((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 && o3 != 0 &&
         o4 != 0;
}

struct Mesher {
  std::vector<Vec2> pts;
  std::vector<Tri> tris;
  std::vector<char> dead;

  void bowyer_watson_insert(int p) {
    // Cavity: all live triangles whose circumcircle contains p.
    std::vector<int> cavity;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (dead[t]) continue;
      if (incircle(pts[tris[t][0]], pts[tris[t][1]], pts[tris[t][2]], pts[p]) > 0)
        cavity.push_back(static_cast<int>(t));
    }
    if (cavity.empty()) throw GeometryError("point insertion found no cavity (duplicate point?)");

    // Boundary = directed edges of cavity triangles that appear only once.
    std::map<std::pair<int, int>, int> count;
    for (int t : cavity) {
      for (int k = 0; k < 3; ++k) {
        const int u = tris[t][k], v = tris[t][(k + 1) % 3];
        count[{std::min(u, v), std::max(u, v)}]++;
      }
    }
    std::vector<std::pair<int, int>> boundary;
    for (int t : cavity) {
      for (int k = 0; k < 3; ++k) {
        const int u = tris[t][k], v = tris[t][(k + 1) % 3];
        if (count[{std::min(u, v), std::max(u, v)}] == 1) boundary.emplace_back(u, v);
      }
    }
    for (int t : cavity) dead[t] = 1;
    for (const auto& [u, v] : boundary) {
      if (orient(pts[u], pts[v], pts[p]) <= 0)
        throw GeometryError("degenerate cavity during triangulation");
      tris.push_back({u, v, p});
      dead.push_back(0);
    }
  }

  bool edge_exists(int a, int b) const {
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (dead[t]) continue;
      for (int k = 0; k < 3; ++k) {
        const int u = tris[t][k], v = tris[t][(k + 1) % 3];
        if ((u == a && v == b) || (u == b && v == a)) return true;
      }
    }
    return false;
  }

  // Sloan-style constraint recovery: flip edges crossing (a, b) until the
  // edge appears.
  void recover_edge(int a, int b) {
    for (int guard = 0; guard < 10000; ++guard) {
      if (edge_exists(a, b)) return;

      // Edge -> adjacent live triangles.
      std::map<std::pair<int, int>, std::vector<int>> edge_tris;
      for (std::size_t t = 0; t < tris.size(); ++t) {
        if (dead[t]) continue;
        for (int k = 0; k < 3; ++k) {
          const int u = tris[t][k], v = tris[t][(k + 1) % 3];
          edge_tris[{std::min(u, v), std::max(u, v)}].push_back(static_cast<int>(t));
        }
      }

      bool flipped = false;
      for (auto& [key, owners] : edge_tris) {
        const auto [u, v] = key;
        if (u == a || u == b || v == a || v == b) continue;
        if (owners.size() != 2) continue;
        if (!segments_cross(pts[a], pts[b], pts[u], pts[v])) continue;
        // Opposite vertices of the quad around (u, v).
        int t1 = owners[0], t2 = owners[1];
        auto opposite = [&](int t) {
          for (int k = 0; k < 3; ++k)
            if (tris[t][k] != u && tris[t][k] != v) return tris[t][k];
          return -1;
        };
        const int p = opposite(t1), q = opposite(t2);
        // Flip only strictly convex quads.
        if (orient(pts[u], pts[p], pts[q]) == 0 || orient(pts[v], pts[p], pts[q]) == 0) continue;
        if ((orient(pts[p], pts[q], pts[u]) > 0) == (orient(pts[p], pts[q], pts[v]) > 0)) continue;
        dead[t1] = dead[t2] = 1;
        auto push = [&](int x, int y, int z) {
          if (orient(pts[x], pts[y], pts[z]) <= 0) std::swap(y, z);
          tris.push_back({x, y, z});
          dead.push_back(0);
        };
        push(p, q, u);
        push(p, q, v);
        flipped = true;
        break;
      }
      if (!flipped && !edge_exists(a, b))
        throw GeometryError("constraint edge recovery failed (crossing constraints?)");
    }
    throw GeometryError("constraint edge recovery did not terminate");
  }
};

} // namespace

CdtResult constrained_delaunay(const std::vector<Vec2>& points,
                               const std::vector<std::array<int, 2>>& segments) {
  if (points.size() < 3) throw GeometryError("triangulation needs at least 3 points");
  Mesher m;
  m.pts = points;

  // Super-triangle (appended after the user points).
  double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
  for (const auto& p : points) {
    lo_x = std::min(lo_x, p.x);
    hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max(hi_x - lo_x, hi_y - lo_y) + 1.0;
  const Vec2 mid{0.5 * (lo_x + hi_x), 0.5 * (lo_y + hi_y)};
  const int s0 = static_cast<int>(m.pts.size());
  m.pts.push_back({mid.x - 20.0 * span, mid.y - 10.0 * span});
  m.pts.push_back({mid.x + 20.0 * span, mid.y - 10.0 * span});
  m.pts.push_back({mid.x, mid.y + 20.0 * span});
  m.tris.push_back({s0, s0 + 1, s0 + 2});
  m.dead.push_back(0);

  for (std::size_t p = 0; p < points.size(); ++p) m.bowyer_watson_insert(static_cast<int>(p));
  for (const auto& seg : segments) m.recover_edge(seg[0], seg[1]);

  CdtResult out;
  out.points = points;
  for (std::size_t t = 0; t < m.tris.size(); ++t) {
    if (m.dead[t]) continue;
    const Tri& tri = m.tris[t];
    if (tri[0] >= s0 || tri[1] >= s0 || tri[2] >= s0) continue; // touches the super-triangle
    out.triangles.push_back(tri);
  }
  return out;
}

void smooth_interior(CdtResult& cdt, const std::vector<char>& locked, int iterations) {
  std::vector<std::set<int>> nbr(cdt.points.size());
  std::vector<std::vector<int>> star(cdt.points.size());
  for (std::size_t t = 0; t < cdt.triangles.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = cdt.triangles[t][k];
      nbr[v].insert(cdt.triangles[t][(k + 1) % 3]);
      nbr[v].insert(cdt.triangles[t][(k + 2) % 3]);
      star[v].push_back(static_cast<int>(t));
    }
  }
  auto local_quality = [&](int v) {
    double worst = 1e300;
    for (int t : star[v]) {
      const auto& tri = cdt.triangles[t];
      const Vec2 &a = cdt.points[tri[0]], &b = cdt.points[tri[1]], &c = cdt.points[tri[2]];
      const double area2 = signed_area2(a, b, c);
      const double l2 = dot(b - a, b - a) + dot(c - b, c - b) + dot(a - c, a - c);
      worst = std::min(worst, area2 / std::max(l2, 1e-300)); // scale-free quality
    }
    return worst;
  };
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t v = 0; v < cdt.points.size(); ++v) {
      if (locked[v] || nbr[v].empty()) continue;
      const double before = local_quality(static_cast<int>(v));
      const Vec2 old = cdt.points[v];
      Vec2 avg{0, 0};
      for (int w : nbr[v]) avg += cdt.points[w];
      cdt.points[v] = avg / static_cast<double>(nbr[v].size());
      if (local_quality(static_cast<int>(v)) <= before) cdt.points[v] = old;
    }
  }
}

double min_angle_deg(const CdtResult& cdt) {
  double worst = 180.0;
  for (const auto& tri : cdt.triangles) {
    for (int k = 0; k < 3; ++k) {
      const Vec2 &a = cdt.points[tri[k]], &b = cdt.points[tri[(k + 1) % 3]],
                 &c = cdt.points[tri[(k + 2) % 3]];
      const Vec2 u = b - a, v = c - a;
      const double ang =
          std::atan2(std::abs(cross(u, v)), dot(u, v)) * 180.0 / 3.14159265358979323846;
      worst = std::min(worst, ang);
    }
  }
  return worst;
}

} // namespace dislox
