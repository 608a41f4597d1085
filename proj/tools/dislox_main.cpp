// dislox command-line front end. Thin shell over the C API: parse arguments,
// run one command, map statuses onto exit codes (0 ok, 1 configuration or
// validation failure, 2 solver failure).

#include <CLI11.hpp>

#include <cstdio>

#include "dislox.h"

namespace {

int exit_code_of(dislox_status st) {
  switch (st) {
    case DISLOX_OK: return 0;
    case DISLOX_ERR_SOLVE: return 2;
    default: return 1; // config, io, invalid
  }
}

struct ScenarioHandle {
  dislox_scenario* sc = nullptr;
  ~ScenarioHandle() { dislox_scenario_free(sc); }
};

int finish(dislox_status st, dislox_scenario* sc) {
  if (st == DISLOX_OK) {
    std::fputs(dislox_run_summary(sc), stdout);
    return 0;
  }
  std::fprintf(stderr, "dislox: %s\n", dislox_last_error());
  return exit_code_of(st);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"dislox - elastostatic dislocations in a layered medium"};
  app.set_version_flag("--version", dislox_version());
  app.require_subcommand(1);

  std::string config, method, format, outdir;
  int levels = 3;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config, "scenario configuration file")->required();
    cmd->add_option("--output-dir", outdir, "override the configured output directory");
  };

  CLI::App* fwd = app.add_subcommand("forward", "solve the dislocation problem");
  add_common(fwd);
  fwd->add_option("--method", method, "interface|split (default from config)");

  CLI::App* inv = app.add_subcommand("inverse", "reconstruct fault and slip from patch data");
  add_common(inv);

  CLI::App* mms = app.add_subcommand("mms", "manufactured-solution convergence study");
  add_common(mms);
  mms->add_option("--levels", levels, "number of uniform refinements")->default_val(3);

  CLI::App* chk = app.add_subcommand("check", "run the invariant suite");
  add_common(chk);

  CLI::App* exp = app.add_subcommand("export", "solve and export the displacement field");
  add_common(exp);
  exp->add_option("--format", format, "vtk|csv (default from config)");

  CLI11_PARSE(app, argc, argv);

  ScenarioHandle handle;
  dislox_status st = dislox_scenario_open(config.c_str(), &handle.sc);
  if (st != DISLOX_OK) {
    std::fprintf(stderr, "dislox: %s\n", dislox_last_error());
    return exit_code_of(st);
  }
  if (!outdir.empty()) dislox_scenario_set_output_dir(handle.sc, outdir.c_str());

  if (fwd->parsed())
    st = dislox_run_forward(handle.sc, method.empty() ? nullptr : method.c_str());
  else if (inv->parsed())
    st = dislox_run_inverse(handle.sc);
  else if (mms->parsed())
    st = dislox_run_mms(handle.sc, levels);
  else if (chk->parsed())
    st = dislox_run_check(handle.sc);
  else
    st = dislox_run_export(handle.sc, format.empty() ? nullptr : format.c_str());

  return finish(st, handle.sc);
}
