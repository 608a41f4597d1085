#include "core/poly2.hpp"

#include <algorithm>

namespace dislox {

Poly2 Poly2::constant(double v) {
  Poly2 p(0, 0);
  p.at(0, 0) = v;
  return p;
}

Poly2 Poly2::var_x() {
  Poly2 p(1, 0);
  p.at(1, 0) = 1.0;
  return p;
}

Poly2 Poly2::var_y() {
  Poly2 p(0, 1);
  p.at(0, 1) = 1.0;
  return p;
}

Poly2 Poly2::affine(const AffineField& f) {
  Poly2 p(1, 1);
  p.at(0, 0) = f.a;
  p.at(1, 0) = f.b1;
  p.at(0, 1) = f.b2;
  return p;
}

double Poly2::eval(const Vec2& p) const {
  // Horner in x of Horner-in-y rows.
  double acc = 0.0;
  for (int i = nx_ - 1; i >= 0; --i) {
    double row = 0.0;
    for (int j = ny_ - 1; j >= 0; --j) row = row * p.y + at(i, j);
    acc = acc * p.x + row;
  }
  return acc;
}

Poly2 Poly2::dx() const {
  if (nx_ == 1) return Poly2();
  Poly2 r(nx_ - 2, ny_ - 1);
  for (int i = 1; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) r.at(i - 1, j) = i * at(i, j);
  return r;
}

Poly2 Poly2::dy() const {
  if (ny_ == 1) return Poly2();
  Poly2 r(nx_ - 1, ny_ - 2);
  for (int i = 0; i < nx_; ++i)
    for (int j = 1; j < ny_; ++j) r.at(i, j - 1) = j * at(i, j);
  return r;
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Poly2 r(std::max(deg_x(), o.deg_x()), std::max(deg_y(), o.deg_y()));
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) r.at(i, j) += at(i, j);
  for (int i = 0; i < o.nx_; ++i)
    for (int j = 0; j < o.ny_; ++j) r.at(i, j) += o.at(i, j);
  return r;
}

Poly2 Poly2::operator-(const Poly2& o) const { return *this + o * -1.0; }

Poly2 Poly2::operator*(const Poly2& o) const {
  Poly2 r(deg_x() + o.deg_x(), deg_y() + o.deg_y());
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) {
      if (at(i, j) == 0.0) continue;
      for (int k = 0; k < o.nx_; ++k)
        for (int l = 0; l < o.ny_; ++l) r.at(i + k, j + l) += at(i, j) * o.at(k, l);
    }
  return r;
}

Poly2 Poly2::operator*(double s) const {
  Poly2 r = *this;
  for (double& v : r.c_) v *= s;
  return r;
}

std::array<Poly2, 3> poly_strain(const PolyField& u) {
  return {u.x.dx(), u.y.dy(), (u.x.dy() + u.y.dx()) * 0.5};
}

std::array<Poly2, 3> poly_stress(const PolyField& u, const AffineField& lambda,
                                 const AffineField& mu) {
  const auto eps = poly_strain(u);
  const Poly2 lam = Poly2::affine(lambda), mupoly = Poly2::affine(mu);
  const Poly2 tr = eps[0] + eps[1];
  return {lam * tr + mupoly * eps[0] * 2.0, lam * tr + mupoly * eps[1] * 2.0,
          mupoly * eps[2] * 2.0};
}

PolyField poly_neg_div_stress(const PolyField& u, const AffineField& lambda,
                              const AffineField& mu) {
  const auto s = poly_stress(u, lambda, mu);
  PolyField f;
  f.x = (s[0].dx() + s[2].dy()) * -1.0;
  f.y = (s[2].dx() + s[1].dy()) * -1.0;
  return f;
}

Vec2 poly_traction(const std::array<Poly2, 3>& stress, const Vec2& p, const Vec2& n) {
  const double sxx = stress[0].eval(p), syy = stress[1].eval(p), sxy = stress[2].eval(p);
  return {sxx * n.x + sxy * n.y, sxy * n.x + syy * n.y};
}

} // namespace dislox
