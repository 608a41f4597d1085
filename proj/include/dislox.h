/* dislox - elastostatic dislocation solver, public C API.
 *
 * Opaque handles + status codes. Every function returns DISLOX_OK on
 * success; on failure, dislox_last_error() yields a message for the calling
 * thread. Handles are freed with the matching *_free function; passing NULL
 * is a no-op there and an error everywhere else.
 */

#ifndef DISLOX_H
#define DISLOX_H

#include <stdint.h>
#include <stddef.h>

#if defined(_WIN32)
#if defined(DISLOX_BUILD)
#define DISLOX_API __declspec(dllexport)
#else
#define DISLOX_API __declspec(dllimport)
#endif
#else
#define DISLOX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dislox_status {
  DISLOX_OK = 0,
  DISLOX_ERR_CONFIG = 1,  /* bad configuration or validation failure */
  DISLOX_ERR_SOLVE = 2,   /* a solver failed to converge or factorize */
  DISLOX_ERR_IO = 3,      /* file system problem */
  DISLOX_ERR_INVALID = 4  /* invalid argument or geometry/topology violation */
} dislox_status;

typedef struct dislox_scenario dislox_scenario;
typedef struct dislox_solution dislox_solution;

DISLOX_API const char* dislox_version(void);

/* Message of the most recent failure on this thread; never NULL. */
DISLOX_API const char* dislox_last_error(void);

/* --- scenarios ------------------------------------------------------- */

DISLOX_API dislox_status dislox_scenario_open(const char* config_path, dislox_scenario** out);
DISLOX_API dislox_status dislox_scenario_parse(const char* config_text, const char* base_dir,
                                               dislox_scenario** out);
DISLOX_API void dislox_scenario_free(dislox_scenario* sc);

/* Override the output directory of subsequent runs. */
DISLOX_API dislox_status dislox_scenario_set_output_dir(dislox_scenario* sc, const char* dir);

/* --- orchestrated commands (write files into the output dir) --------- */

/* method: "split", "interface", or NULL for the configured default. */
DISLOX_API dislox_status dislox_run_forward(dislox_scenario* sc, const char* method);
DISLOX_API dislox_status dislox_run_mms(dislox_scenario* sc, int levels);
/* Returns DISLOX_ERR_INVALID when an invariant check fails. */
DISLOX_API dislox_status dislox_run_check(dislox_scenario* sc);
DISLOX_API dislox_status dislox_run_inverse(dislox_scenario* sc);
/* format: "csv", "vtk", or NULL for the configured default. */
DISLOX_API dislox_status dislox_run_export(dislox_scenario* sc, const char* format);

/* Human-readable summary of the most recent run on this scenario. */
DISLOX_API const char* dislox_run_summary(const dislox_scenario* sc);

/* --- in-process solves ------------------------------------------------ */

DISLOX_API dislox_status dislox_solve(dislox_scenario* sc, const char* method,
                                      dislox_solution** out);
DISLOX_API void dislox_solution_free(dislox_solution* sol);

/* Node count of the split mesh the solution lives on. */
DISLOX_API dislox_status dislox_solution_node_count(const dislox_solution* sol, int32_t* out);
/* Position and displacement of one node. Output pointers may be NULL. */
DISLOX_API dislox_status dislox_solution_node(const dislox_solution* sol, int32_t node,
                                              double* x, double* y, double* ux, double* uy);
/* Transmission diagnostics:
 * out[0] = max nodal |[u]-g| on the fault,
 * out[1] = max nodal |[u]| on the rest of the interface,
 * out[2] = traction balance defect on the fault (relative),
 * out[3] = traction balance defect off the fault (relative),
 * out[4] = interior residual (relative),
 * out[5] = interface CG iterations (0 for the split method). */
DISLOX_API dislox_status dislox_solution_diagnostics(const dislox_solution* sol, double out[6]);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DISLOX_H */
