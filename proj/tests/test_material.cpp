#include <doctest.h>

#include <random>

#include "core/errors.hpp"
#include "core/material.hpp"
#include "core/meshgen.hpp"

using namespace dislox;

namespace {

Mesh unit_square_mesh(int n = 2) {
  StructuredOpts o;
  o.n = n;
  return structured_square(o).mesh;
}

MaterialSpec constant_spec(double lam, double mu, double a0 = 0.5, double b0 = 0.5,
                           double M = 10.0) {
  MaterialSpec spec;
  spec.regions[1] = {AffineField{lam, 0, 0}, AffineField{mu, 0, 0}};
  spec.alpha0 = a0;
  spec.beta0 = b0;
  spec.lipschitz_M = M;
  return spec;
}

} // namespace

TEST_CASE("constant-coefficient model builds") {
  Mesh m = unit_square_mesh();
  ElasticModel model = build_elastic_model(constant_spec(1e9, 1e9), m);
  CHECK(model.lambda(1, {0.3, 0.7}) == 1e9);
  CHECK(model.mu(1, {0.3, 0.7}) == 1e9);
}

TEST_CASE("affine coefficient evaluates with its gradient") {
  Mesh m = unit_square_mesh();
  MaterialSpec spec = constant_spec(0, 0);
  spec.regions[1] = {AffineField{1e9, 0, 1e6}, AffineField{1e9, 0, 0}};
  ElasticModel model = build_elastic_model(spec, m);
  CHECK(model.lambda(1, {0.0, 1.0}) == doctest::Approx(1e9 + 1e6));
  CHECK(model.field(1).first.b2 == 1e6);
}

TEST_CASE("missing region is a config error") {
  StructuredOpts o;
  o.n = 2;
  o.region_boxes.push_back({{0.0, 0.0, 0.5, 1.0}, 2});
  Mesh m = structured_square(o).mesh;
  CHECK_THROWS_AS(build_elastic_model(constant_spec(1, 1), m), ConfigError);
}

TEST_CASE("admissibility report: constant pass case") {
  Mesh m = unit_square_mesh();
  ElasticModel model = build_elastic_model(constant_spec(1, 1), m);
  auto rep = check_admissibility(model, m);
  CHECK(rep.pass);
  REQUIRE(rep.regions.size() == 1);
  CHECK(rep.regions[0].min_3lambda_2mu == doctest::Approx(5.0));
}

TEST_CASE("admissibility fails when an affine mu dips negative") {
  Mesh m = unit_square_mesh();
  MaterialSpec spec = constant_spec(1, 1, 0.1, 0.1);
  spec.regions[1].second = AffineField{1.0, -2.0, 0.0}; // mu = 1 - 2x
  ElasticModel model = build_elastic_model(spec, m);
  auto rep = check_admissibility(model, m);
  CHECK_FALSE(rep.pass);
  CHECK(rep.regions[0].min_mu == doctest::Approx(-1.0));
}

TEST_CASE("negative lambda passes under the bulk condition") {
  Mesh m = unit_square_mesh();
  ElasticModel model = build_elastic_model(constant_spec(-0.4, 1.0, 0.5, 0.5), m);
  auto rep = check_admissibility(model, m);
  CHECK(rep.pass);
  CHECK(rep.regions[0].min_3lambda_2mu == doctest::Approx(0.8));
}

TEST_CASE("tensor apply: zero strain, dilation, pure shear") {
  Mesh m = unit_square_mesh();
  MaterialSpec spec = constant_spec(2, 3);
  ElasticModel model = build_elastic_model(spec, m);

  auto s0 = model.apply(1, {0, 0}, {0, 0, 0});
  CHECK(s0[0] == 0.0);
  CHECK(s0[1] == 0.0);
  CHECK(s0[2] == 0.0);

  // eps = I: sigma = (lambda*2 + 2 mu) I = 10 I for lambda=2, mu=3.
  auto s1 = model.apply(1, {0, 0}, {1, 1, 0});
  CHECK(s1[0] == doctest::Approx(10.0));
  CHECK(s1[1] == doctest::Approx(10.0));
  CHECK(s1[2] == doctest::Approx(0.0));

  MaterialSpec shear = constant_spec(0, 1);
  ElasticModel ms = build_elastic_model(shear, m);
  auto s2 = ms.apply(1, {0, 0}, {0, 0, 0.5});
  CHECK(s2[0] == 0.0);
  CHECK(s2[1] == 0.0);
  CHECK(s2[2] == doctest::Approx(1.0));
}

TEST_CASE("unknown region in tensor apply") {
  Mesh m = unit_square_mesh();
  ElasticModel model = build_elastic_model(constant_spec(1, 1), m);
  CHECK_THROWS_AS(model.apply(7, {0, 0}, {1, 0, 0}), DomainError);
}

TEST_CASE("quadratic form positivity over random admissible samples") {
  Mesh m = unit_square_mesh();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double alpha0 = 0.3, beta0 = 0.4;
  const double cmin = std::min(2.0 * alpha0, beta0 / 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double mu = alpha0 + 3.0 * U(rng);
    double lam = -2.0 + 6.0 * U(rng);
    if (3.0 * lam + 2.0 * mu < beta0) lam = (beta0 - 2.0 * mu) / 3.0 + U(rng);
    ElasticModel model = build_elastic_model(constant_spec(lam, mu, alpha0, beta0), m);
    const double axx = -1 + 2 * U(rng), ayy = -1 + 2 * U(rng), axy = -1 + 2 * U(rng);
    const std::array<double, 3> eps{axx, ayy, axy};
    auto sig = model.apply(1, {0.5, 0.5}, eps);
    const double energy = sig[0] * axx + sig[1] * ayy + sig[2] * axy;
    const double norm2 = axx * axx + ayy * ayy + 2.0 * axy * axy;
    CHECK(energy >= cmin * norm2 - 1e-12 * norm2);
  }
}

TEST_CASE("tensor apply is linear and self-adjoint in strain") {
  Mesh m = unit_square_mesh();
  ElasticModel model = build_elastic_model(constant_spec(1.7, 0.9), m);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    std::array<double, 3> e1{U(rng), U(rng), U(rng)}, e2{U(rng), U(rng), U(rng)};
    auto s1 = model.apply(1, {0.2, 0.2}, e1);
    auto s2 = model.apply(1, {0.2, 0.2}, e2);
    // (C e1):e2 with the off-diagonal counted twice.
    const double a = s1[0] * e2[0] + s1[1] * e2[1] + 2.0 * s1[2] * e2[2];
    const double b = s2[0] * e1[0] + s2[1] * e1[1] + 2.0 * s2[2] * e1[2];
    CHECK(a == doctest::Approx(b).epsilon(1e-14));
  }
}

TEST_CASE("induced 4-tensor has major and minor symmetry") {
  Mesh m = unit_square_mesh();
  ElasticModel model = build_elastic_model(constant_spec(1.3, 2.1), m);
  // C_{ijkl} from unit strains; exhaust the 2D index set.
  double C[2][2][2][2];
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      std::array<double, 3> eps{0, 0, 0};
      if (k == l)
        eps[k] = 1.0;
      else
        eps[2] = 0.5; // symmetric unit shear: e_kl = e_lk = 1/2
      auto sig = model.apply(1, {0, 0}, eps);
      C[0][0][k][l] = sig[0];
      C[1][1][k][l] = sig[1];
      C[0][1][k][l] = sig[2];
      C[1][0][k][l] = sig[2];
    }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          CHECK(C[i][j][k][l] == doctest::Approx(C[j][i][k][l]));
          CHECK(C[i][j][k][l] == doctest::Approx(C[i][j][l][k]));
          CHECK(C[i][j][k][l] == doctest::Approx(C[k][l][i][j]));
        }
}
