#define DISLOX_BUILD
#include "dislox.h"

#include <string>

#include "core/config.hpp"
#include "core/errors.hpp"
#include "core/interface_solver.hpp"
#include "core/scenario_run.hpp"
#include "core/split_solver.hpp"
#include "core/version.hpp"

using namespace dislox;

struct dislox_scenario {
  Scenario sc;
  std::string last_summary;
};

struct dislox_solution {
  ForwardBundle bundle;
  DirectSolution sol;
};

namespace {

thread_local std::string g_last_error = "";

dislox_status status_of(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::Config: return DISLOX_ERR_CONFIG;
    case Error::Kind::Solve: return DISLOX_ERR_SOLVE;
    case Error::Kind::Io: return DISLOX_ERR_IO;
    case Error::Kind::Invalid: return DISLOX_ERR_INVALID;
  }
  return DISLOX_ERR_INVALID;
}

template <typename F>
dislox_status guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DISLOX_ERR_INVALID;
  } catch (...) {
    g_last_error = "unknown failure";
    return DISLOX_ERR_INVALID;
  }
}

dislox_status invalid_arg(const char* what) {
  g_last_error = what;
  return DISLOX_ERR_INVALID;
}

} // namespace

extern "C" {

const char* dislox_version(void) { return kDisloxVersion; }

const char* dislox_last_error(void) { return g_last_error.c_str(); }

dislox_status dislox_scenario_open(const char* config_path, dislox_scenario** out) {
  if (!config_path || !out) return invalid_arg("null argument");
  *out = nullptr;
  return guarded([&] {
    auto* sc = new dislox_scenario{load_scenario(config_path), ""};
    *out = sc;
    return DISLOX_OK;
  });
}

dislox_status dislox_scenario_parse(const char* config_text, const char* base_dir,
                                    dislox_scenario** out) {
  if (!config_text || !out) return invalid_arg("null argument");
  *out = nullptr;
  return guarded([&] {
    auto* sc = new dislox_scenario{
        parse_scenario(config_text, base_dir ? base_dir : ""), ""};
    *out = sc;
    return DISLOX_OK;
  });
}

void dislox_scenario_free(dislox_scenario* sc) { delete sc; }

dislox_status dislox_scenario_set_output_dir(dislox_scenario* sc, const char* dir) {
  if (!sc || !dir) return invalid_arg("null argument");
  sc->sc.output_dir = dir;
  return DISLOX_OK;
}

dislox_status dislox_run_forward(dislox_scenario* sc, const char* method) {
  if (!sc) return invalid_arg("null scenario");
  return guarded([&] {
    RunResult r = run_forward(sc->sc, method ? method : "");
    sc->last_summary = r.summary;
    return DISLOX_OK;
  });
}

dislox_status dislox_run_mms(dislox_scenario* sc, int levels) {
  if (!sc) return invalid_arg("null scenario");
  return guarded([&] {
    RunResult r = run_mms(sc->sc, levels);
    sc->last_summary = r.summary;
    return DISLOX_OK;
  });
}

dislox_status dislox_run_check(dislox_scenario* sc) {
  if (!sc) return invalid_arg("null scenario");
  return guarded([&] {
    RunResult r = run_check(sc->sc);
    sc->last_summary = r.summary;
    if (!r.ok) {
      g_last_error = "invariant checks failed:\n" + r.summary;
      return DISLOX_ERR_INVALID;
    }
    return DISLOX_OK;
  });
}

dislox_status dislox_run_inverse(dislox_scenario* sc) {
  if (!sc) return invalid_arg("null scenario");
  return guarded([&] {
    RunResult r = run_inverse(sc->sc);
    sc->last_summary = r.summary;
    return DISLOX_OK;
  });
}

dislox_status dislox_run_export(dislox_scenario* sc, const char* format) {
  if (!sc) return invalid_arg("null scenario");
  return guarded([&] {
    RunResult r = run_export(sc->sc, format ? format : "");
    sc->last_summary = r.summary;
    return DISLOX_OK;
  });
}

const char* dislox_run_summary(const dislox_scenario* sc) {
  return sc ? sc->last_summary.c_str() : "";
}

dislox_status dislox_solve(dislox_scenario* sc, const char* method, dislox_solution** out) {
  if (!sc || !out) return invalid_arg("null argument");
  *out = nullptr;
  return guarded([&] {
    sc->sc.require_for("forward");
    const std::string m = method && *method ? method : sc->sc.default_method;
    auto* sol = new dislox_solution;
    try {
      sol->bundle = make_forward_bundle(sc->sc);
      sol->sol = m == "interface" ? solve_interface_method(sol->bundle.setup, sc->sc.solver)
                                  : solve_split_node(sol->bundle.setup);
    } catch (...) {
      delete sol;
      throw;
    }
    *out = sol;
    return DISLOX_OK;
  });
}

void dislox_solution_free(dislox_solution* sol) { delete sol; }

dislox_status dislox_solution_node_count(const dislox_solution* sol, int32_t* out) {
  if (!sol || !out) return invalid_arg("null argument");
  *out = sol->bundle.setup.split.num_nodes();
  return DISLOX_OK;
}

dislox_status dislox_solution_node(const dislox_solution* sol, int32_t node, double* x,
                                   double* y, double* ux, double* uy) {
  if (!sol) return invalid_arg("null solution");
  if (node < 0 || node >= sol->bundle.setup.split.num_nodes())
    return invalid_arg("node index out of range");
  const Vec2& p = sol->bundle.setup.split.nodes[node];
  const Vec2& u = sol->sol.u[node];
  if (x) *x = p.x;
  if (y) *y = p.y;
  if (ux) *ux = u.x;
  if (uy) *uy = u.y;
  return DISLOX_OK;
}

dislox_status dislox_solution_diagnostics(const dislox_solution* sol, double out[6]) {
  if (!sol || !out) return invalid_arg("null argument");
  const TransmissionReport& r = sol->sol.report;
  out[0] = r.jump_err_s;
  out[1] = r.jump_err_gamma;
  out[2] = r.traction_res_s;
  out[3] = r.traction_res_gamma;
  out[4] = r.interior_residual;
  out[5] = static_cast<double>(sol->sol.interface_iterations);
  return DISLOX_OK;
}

} // extern "C"
