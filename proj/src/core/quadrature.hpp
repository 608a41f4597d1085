#pragma once

#include <array>
#include <vector>

#include "core/geometry.hpp"

namespace dislox {

struct TriQuadPoint {
  double l0, l1, l2; // barycentric coordinates
  double w;          // weight, sums to 1 over the rule
};

/// Triangle rules by polynomial exactness degree: 1 (centroid), 2 (edge
/// midpoints), 6 (Dunavant 12-point). Weights are area fractions.
inline const std::vector<TriQuadPoint>& tri_rule(int degree) {
  static const std::vector<TriQuadPoint> deg1 = {{1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0}};
  static const std::vector<TriQuadPoint> deg2 = {
      {0.5, 0.5, 0.0, 1.0 / 3}, {0.0, 0.5, 0.5, 1.0 / 3}, {0.5, 0.0, 0.5, 1.0 / 3}};
  static const std::vector<TriQuadPoint> deg6 = [] {
    std::vector<TriQuadPoint> pts;
    auto push3 = [&](double a, double b, double w) {
      pts.push_back({a, b, b, w});
      pts.push_back({b, a, b, w});
      pts.push_back({b, b, a, w});
    };
    auto push6 = [&](double a, double b, double c, double w) {
      pts.push_back({a, b, c, w});
      pts.push_back({a, c, b, w});
      pts.push_back({b, a, c, w});
      pts.push_back({b, c, a, w});
      pts.push_back({c, a, b, w});
      pts.push_back({c, b, a, w});
    };
    push3(0.501426509658179, 0.249286745170910, 0.116786275726379);
    push3(0.873821971016996, 0.063089014491502, 0.050844906370207);
    push6(0.053145049844816, 0.310352451033785, 0.636502499121399, 0.082851075618374);
    return pts;
  }();
  if (degree <= 1) return deg1;
  if (degree <= 2) return deg2;
  return deg6;
}

struct EdgeQuadPoint {
  double t; // parameter in [0, 1]
  double w; // weight, sums to 1
};

/// Gauss-Legendre on [0,1]; npts in 1..4 (exact degrees 1, 3, 5, 7).
inline const std::vector<EdgeQuadPoint>& edge_rule(int npts) {
  static const std::vector<EdgeQuadPoint> g1 = {{0.5, 1.0}};
  static const std::vector<EdgeQuadPoint> g2 = {{0.5 - 0.5 / 1.7320508075688772, 0.5},
                                                {0.5 + 0.5 / 1.7320508075688772, 0.5}};
  static const std::vector<EdgeQuadPoint> g3 = {
      {0.5 - 0.5 * 0.7745966692414834, 5.0 / 18.0},
      {0.5, 4.0 / 9.0},
      {0.5 + 0.5 * 0.7745966692414834, 5.0 / 18.0}};
  static const std::vector<EdgeQuadPoint> g4 = [] {
    const double x1 = 0.3399810435848563, x2 = 0.8611363115940526;
    const double w1 = 0.6521451548625461, w2 = 0.3478548451374538;
    return std::vector<EdgeQuadPoint>{{0.5 - 0.5 * x2, 0.5 * w2},
                                      {0.5 - 0.5 * x1, 0.5 * w1},
                                      {0.5 + 0.5 * x1, 0.5 * w1},
                                      {0.5 + 0.5 * x2, 0.5 * w2}};
  }();
  if (npts <= 1) return g1;
  if (npts == 2) return g2;
  if (npts == 3) return g3;
  return g4;
}

} // namespace dislox
