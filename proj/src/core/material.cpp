#include "core/material.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace dislox {

const std::pair<AffineField, AffineField>& ElasticModel::field(int region) const {
  auto it = spec_.regions.find(region);
  if (it == spec_.regions.end())
    throw DomainError("unknown material region " + std::to_string(region));
  return it->second;
}

std::array<double, 3> ElasticModel::apply(int region, const Vec2& p,
                                          const std::array<double, 3>& strain) const {
  const auto& [lam_f, mu_f] = field(region);
  const double lam = lam_f(p), mu = mu_f(p);
  const double tr = strain[0] + strain[1];
  return {lam * tr + 2.0 * mu * strain[0], lam * tr + 2.0 * mu * strain[1], 2.0 * mu * strain[2]};
}

ElasticModel build_elastic_model(const MaterialSpec& spec, const Mesh& mesh) {
  for (int tag : mesh.region_tags()) {
    if (!spec.regions.count(tag))
      throw ConfigError("material section missing for mesh region " + std::to_string(tag));
  }
  for (const auto& [tag, fields] : spec.regions) {
    if (!fields.first.finite() || !fields.second.finite())
      throw ConfigError("non-finite material coefficient in region " + std::to_string(tag));
  }
  if (!(spec.alpha0 > 0.0) || !(spec.beta0 > 0.0) || !(spec.lipschitz_M > 0.0))
    throw ConfigError("admissibility constants alpha0, beta0, M must be positive");
  ElasticModel model;
  model.spec_ = spec;
  return model;
}

AdmissibilityReport check_admissibility(const ElasticModel& model, const Mesh& mesh) {
  AdmissibilityReport report;
  report.pass = true;

  std::map<int, std::vector<int>> region_nodes;
  for (const auto& el : mesh.elements)
    for (int k = 0; k < 3; ++k) region_nodes[el.region].push_back(el.v[k]);

  const MaterialSpec& spec = model.spec();
  for (auto& [tag, nodes] : region_nodes) {
    const auto& [lam, mu] = model.field(tag);
    AdmissibilityReport::Region r;
    r.tag = tag;
    r.min_mu = 1e300;
    r.min_3lambda_2mu = 1e300;
    double max_abs_lam = 0.0, max_abs_mu = 0.0;
    for (int n : nodes) {
      const Vec2& p = mesh.nodes[n];
      const double lv = lam(p), mv = mu(p);
      r.min_mu = std::min(r.min_mu, mv);
      r.min_3lambda_2mu = std::min(r.min_3lambda_2mu, 3.0 * lv + 2.0 * mv);
      max_abs_lam = std::max(max_abs_lam, std::abs(lv));
      max_abs_mu = std::max(max_abs_mu, std::abs(mv));
    }
    r.c01_norm = max_abs_lam + lam.grad_norm() + max_abs_mu + mu.grad_norm();
    r.pass = r.min_mu >= spec.alpha0 && r.min_3lambda_2mu >= spec.beta0 &&
             r.c01_norm <= spec.lipschitz_M;
    report.pass = report.pass && r.pass;
    report.regions.push_back(r);
  }
  return report;
}

std::string AdmissibilityReport::summary() const {
  std::ostringstream os;
  for (const auto& r : regions) {
    os << "region " << r.tag << ": min mu = " << r.min_mu
       << ", min 3*lambda+2*mu = " << r.min_3lambda_2mu << ", C01 norm = " << r.c01_norm << " -> "
       << (r.pass ? "pass" : "FAIL") << "\n";
  }
  os << "admissibility: " << (pass ? "pass" : "FAIL") << "\n";
  return os.str();
}

} // namespace dislox
