#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "core/mesh.hpp"

namespace dislox {

/// Scalar affine field a + b1*x + b2*y. Affine-per-region is the only
/// coefficient class: extremes over a region are attained at its nodes and
/// the gradient is the constant (b1, b2), so admissibility checks are exact.
struct AffineField {
  double a = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;

  double operator()(const Vec2& p) const { return a + b1 * p.x + b2 * p.y; }
  double grad_norm() const { return std::sqrt(b1 * b1 + b2 * b2); }
  bool finite() const {
    return std::isfinite(a) && std::isfinite(b1) && std::isfinite(b2);
  }
};

struct MaterialSpec {
  std::map<int, std::pair<AffineField, AffineField>> regions; // tag -> (lambda, mu)
  double alpha0 = 1.0; // lower bound on mu
  double beta0 = 1.0;  // lower bound on 3*lambda + 2*mu
  double lipschitz_M = 1e30;
};

/// Piecewise-isotropic plane-strain elasticity: per region k,
/// sigma = lambda_k tr(eps) I + 2 mu_k eps, with the 3D admissibility
/// inequalities kept verbatim (mu >= alpha0, 3 lambda + 2 mu >= beta0).
class ElasticModel {
public:
  ElasticModel() = default;

  double lambda(int region, const Vec2& p) const { return field(region).first(p); }
  double mu(int region, const Vec2& p) const { return field(region).second(p); }
  const std::pair<AffineField, AffineField>& field(int region) const;
  bool has_region(int region) const { return spec_.regions.count(region) > 0; }

  const MaterialSpec& spec() const { return spec_; }

  /// sigma = lambda(x) tr(eps) I + 2 mu(x) eps for a symmetric 2x2 strain.
  std::array<double, 3> apply(int region, const Vec2& p,
                              const std::array<double, 3>& strain) const; // (xx, yy, xy)

  friend ElasticModel build_elastic_model(const MaterialSpec& spec, const Mesh& mesh);

private:
  MaterialSpec spec_;
};

/// Validates coverage (one entry per mesh region) and finiteness; the
/// admissibility inequalities are checked separately by check_admissibility.
ElasticModel build_elastic_model(const MaterialSpec& spec, const Mesh& mesh);

struct AdmissibilityReport {
  struct Region {
    int tag = 0;
    double min_mu = 0.0;
    double min_3lambda_2mu = 0.0;
    double c01_norm = 0.0; // sup|lambda|+sup|grad lambda| + same for mu
    bool pass = false;
  };
  std::vector<Region> regions;
  bool pass = false;
  std::string summary() const;
};

/// Per-region extremes of the affine fields over the region's nodes (exact
/// for affine coefficients) against alpha0 / beta0 / M. Failures are report
/// entries, never exceptions.
AdmissibilityReport check_admissibility(const ElasticModel& model, const Mesh& mesh);

} // namespace dislox
