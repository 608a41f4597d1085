#pragma once

#include "core/config.hpp"

namespace dislox {

/// Orchestrated runs behind the CLI commands. Each writes its outputs plus a
/// run manifest into the scenario's output directory and returns a
/// human-readable summary. Numeric outputs are bitwise reproducible for a
/// fixed config, seed and platform.
struct RunResult {
  std::string summary;
  bool ok = true;
};

RunResult run_forward(const Scenario& sc, const std::string& method_override = "");
RunResult run_mms(const Scenario& sc, int levels);
RunResult run_check(const Scenario& sc);
RunResult run_inverse(const Scenario& sc);
RunResult run_export(const Scenario& sc, const std::string& format_override = "");

/// Build the problem (mesh/topology/model/loads/slip) a forward run solves.
struct ForwardBundle {
  ProblemSetup setup;
  // Owning storage backing the setup's pointers.
  std::shared_ptr<Mesh> mesh;
  std::shared_ptr<BoundaryRoles> roles;
  std::shared_ptr<ElasticModel> model;
  std::shared_ptr<MmsCase> mms; // set for manufactured scenarios
};
ForwardBundle make_forward_bundle(const Scenario& sc);

} // namespace dislox
