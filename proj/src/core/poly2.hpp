#pragma once

#include <array>
#include <vector>

#include "core/geometry.hpp"
#include "core/material.hpp"

namespace dislox {

/// Dense bivariate polynomial sum_{i,j} c(i,j) x^i y^j. Small degrees only;
/// used to manufacture exact solutions and their analytic loads.
class Poly2 {
public:
  Poly2() : nx_(1), ny_(1), c_(1, 0.0) {}
  Poly2(int deg_x, int deg_y) : nx_(deg_x + 1), ny_(deg_y + 1), c_(nx_ * ny_, 0.0) {}

  static Poly2 constant(double v);
  static Poly2 var_x();
  static Poly2 var_y();
  static Poly2 affine(const AffineField& f); // a + b1 x + b2 y

  double& at(int i, int j) { return c_[i * ny_ + j]; }
  double at(int i, int j) const { return c_[i * ny_ + j]; }
  int deg_x() const { return nx_ - 1; }
  int deg_y() const { return ny_ - 1; }

  double eval(const Vec2& p) const;
  Poly2 dx() const;
  Poly2 dy() const;

  Poly2 operator+(const Poly2& o) const;
  Poly2 operator-(const Poly2& o) const;
  Poly2 operator*(const Poly2& o) const;
  Poly2 operator*(double s) const;

private:
  int nx_, ny_;
  std::vector<double> c_;
};

/// Vector-valued polynomial field (ux, uy).
struct PolyField {
  Poly2 x, y;
  Vec2 eval(const Vec2& p) const { return {x.eval(p), y.eval(p)}; }
};

/// Symmetric-gradient components (exx, eyy, exy) of a polynomial field.
std::array<Poly2, 3> poly_strain(const PolyField& u);

/// Plane-strain stress components (sxx, syy, sxy) for affine Lame fields.
std::array<Poly2, 3> poly_stress(const PolyField& u, const AffineField& lambda,
                                 const AffineField& mu);

/// Body force f = -div(sigma(u)), exact.
PolyField poly_neg_div_stress(const PolyField& u, const AffineField& lambda,
                              const AffineField& mu);

/// Traction sigma(u(p)) * n.
Vec2 poly_traction(const std::array<Poly2, 3>& stress, const Vec2& p, const Vec2& n);

} // namespace dislox
