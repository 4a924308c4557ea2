/* lcbp — log-concave convex-geometry toolkit, C API.
 *
 * The library computes total masses, entropies, parallel section functions,
 * Radon transforms, dual mixed volumes, intersection functions and bodies,
 * Ball bodies, and the Busemann-Petty verification suites for scalar fields
 * and star bodies described by JSON scenes.
 *
 * All functions return LCBP_OK on success; on failure they return an error
 * code and leave a message retrievable with lcbp_last_error().  Handles are
 * opaque and freed with their matching *_free function.  Strings returned
 * through char** are heap-allocated; release them with lcbp_string_free.
 */
#ifndef LCBP_H
#define LCBP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lcbp_status {
  LCBP_OK = 0,
  LCBP_ERR_INVALID_ARGUMENT = 1,
  LCBP_ERR_PARSE = 2,
  LCBP_ERR_UNKNOWN_NAME = 3,
  LCBP_ERR_COMPUTATION = 4,
  LCBP_ERR_IO = 5,
  LCBP_ERR_INTERNAL = 6
} lcbp_status;

typedef struct lcbp_scene lcbp_scene;
typedef struct lcbp_field lcbp_field;
typedef struct lcbp_body lcbp_body;
typedef struct lcbp_grid lcbp_grid;

/* Quadrature overrides; initialize with lcbp_quad_options_init and change
 * only the members you need.  Zero/negative members mean "use the scene or
 * dimension default". */
typedef struct lcbp_quad_options {
  double rel_tol;
  double abs_tol;
  int64_t max_evals;
  uint64_t seed;
  int has_seed; /* seed 0 is a valid override, so it needs a flag */
  int sphere_points;
  int subsphere_points;
} lcbp_quad_options;

typedef struct lcbp_result {
  double value;
  double error_estimate;
  int64_t evals_used;
  int converged;
  int is_infinite;
} lcbp_result;

const char* lcbp_version(void);

/* Message describing the most recent failure on this thread. */
const char* lcbp_last_error(void);

void lcbp_string_free(char* s);
void lcbp_quad_options_init(lcbp_quad_options* opts);

/* ------------------------------------------------------------------ scenes */

lcbp_status lcbp_scene_open(const char* path, lcbp_scene** out);
lcbp_status lcbp_scene_parse(const char* json_text, lcbp_scene** out);
void lcbp_scene_free(lcbp_scene* scene);
lcbp_status lcbp_scene_dimension(const lcbp_scene* scene, int* out);
lcbp_status lcbp_scene_dump(const lcbp_scene* scene, char** json_out);

/* Handles returned here are independent of the scene's lifetime. */
lcbp_status lcbp_scene_field(const lcbp_scene* scene, const char* name,
                             lcbp_field** out);
lcbp_status lcbp_scene_body(const lcbp_scene* scene, const char* name,
                            lcbp_body** out);
void lcbp_field_free(lcbp_field* field);
void lcbp_body_free(lcbp_body* body);

lcbp_status lcbp_field_eval(const lcbp_field* field, const double* x, int n,
                            double* out);
lcbp_status lcbp_field_dim(const lcbp_field* field, int* out);

/* ------------------------------------------------------------- functionals */

lcbp_status lcbp_total_mass(const lcbp_field* f, const lcbp_quad_options* opts,
                            lcbp_result* out);
lcbp_status lcbp_entropy(const lcbp_field* f, const lcbp_quad_options* opts,
                         lcbp_result* out);
/* A_{f,x/|x|}(t): integral of f over the hyperplane {z . x/|x| = t}. */
lcbp_status lcbp_parallel_section(const lcbp_field* f, const double* x, int n,
                                  double t, const lcbp_quad_options* opts,
                                  lcbp_result* out);
lcbp_status lcbp_radon(const lcbp_field* f, const double* x, int n, double r,
                       const lcbp_quad_options* opts, lcbp_result* out);
/* Functional dual mixed volume, integral form; out->is_infinite reports
 * divergence. */
lcbp_status lcbp_dual_mixed(const lcbp_field* f, const lcbp_field* g,
                            const lcbp_quad_options* opts, lcbp_result* out);
/* Limit form along a decreasing t ladder with Richardson extrapolation. */
lcbp_status lcbp_dual_mixed_limit(const lcbp_field* f, const lcbp_field* g,
                                  const lcbp_quad_options* opts,
                                  lcbp_result* out);
/* log J(e^{-(1-t) phi - t psi}); convex in t on [0, 1]. */
lcbp_status lcbp_upsilon(const lcbp_field* f, const lcbp_field* g, double t,
                         const lcbp_quad_options* opts, double* out);

/* ------------------------------------------------------------ intersection */

lcbp_status lcbp_intersection_function(const lcbp_field* f, const double* x,
                                       int n, const lcbp_quad_options* opts,
                                       double* out);
/* Composite route through I K_{n-1}(f); agrees with the direct route. */
lcbp_status lcbp_intersection_function_via_body(const lcbp_field* f,
                                                const double* x, int n,
                                                const lcbp_quad_options* opts,
                                                double* out);
lcbp_status lcbp_ball_body(const lcbp_field* f, double p,
                           const lcbp_quad_options* opts, lcbp_body** out);
lcbp_status lcbp_intersection_body(const lcbp_body* K,
                                   const lcbp_quad_options* opts,
                                   lcbp_body** out);
/* Even symmetrization (f(x) + f(-x)) / 2. */
lcbp_status lcbp_dual_difference(const lcbp_field* f, lcbp_field** out);
/* Membership certificate in R^3; emits a JSON object with the verdict,
 * minimum pre-image value, and the harmonic coefficient table. */
lcbp_status lcbp_membership_n3(const lcbp_field* f, int lmax, double tol,
                               const lcbp_quad_options* opts, char** json_out);

/* ---------------------------------------------------------------- geometry */

lcbp_status lcbp_body_dim(const lcbp_body* K, int* out);
lcbp_status lcbp_body_radial(const lcbp_body* K, const double* u, int n,
                             double* out);
lcbp_status lcbp_minkowski_norm(const lcbp_body* K, const double* x, int n,
                                double* out);
lcbp_status lcbp_body_volume(const lcbp_body* K, const lcbp_quad_options* opts,
                             lcbp_result* out);
lcbp_status lcbp_body_section(const lcbp_body* K, const double* u, int n,
                              const lcbp_quad_options* opts, lcbp_result* out);
lcbp_status lcbp_dual_mixed_volume(const lcbp_body* K, const lcbp_body* L,
                                   double p, const lcbp_quad_options* opts,
                                   lcbp_result* out);
lcbp_status lcbp_harmonic_p_combination(const lcbp_body* K, const lcbp_body* L,
                                        double s, double t, double p,
                                        lcbp_body** out);
/* Deterministic direction grid; writes dim*count doubles (column-major). */
lcbp_status lcbp_direction_grid(int dim, int count, uint64_t seed,
                                double* nodes_out);

/* ------------------------------------------------- convex grid calculus */

lcbp_status lcbp_grid_load_csv(const char* path, lcbp_grid** out);
lcbp_status lcbp_grid_save_csv(const lcbp_grid* grid, const char* path);
void lcbp_grid_free(lcbp_grid* grid);
lcbp_status lcbp_grid_legendre(const lcbp_grid* phi, lcbp_grid** out);
lcbp_status lcbp_grid_inf_convolution(const lcbp_grid* phi, const lcbp_grid* psi,
                                      lcbp_grid** out);
lcbp_status lcbp_grid_right_scale(const lcbp_grid* phi, double t, lcbp_grid** out);
lcbp_status lcbp_grid_harmonic_combination(const lcbp_grid* phi,
                                           const lcbp_grid* psi, double t,
                                           lcbp_grid** out);

/* ------------------------------------------------------------- experiments */

/* Busemann-Petty comparison of two even fields over `directions` seeded
 * central hyperplanes; emits a JSON verdict. */
lcbp_status lcbp_bp_check(const lcbp_field* f, const lcbp_field* g,
                          int directions, const lcbp_quad_options* opts,
                          char** json_out);
/* Cube-vs-ball negative demonstration for dim >= 10; JSON summary. */
lcbp_status lcbp_bp_counterexample(int dim, int directions,
                                   const lcbp_quad_options* opts,
                                   char** json_out);
/* Runs a named verification suite; all_pass (may be NULL) receives 0/1.
 * Suite ids: dual-minkowski, busemann-intersection, moments, inclusion,
 * symmetrization, bp-positive, bp-negative, all. */
lcbp_status lcbp_suite_run(const char* name, uint64_t seed,
                           const lcbp_quad_options* opts, char** json_out,
                           int* all_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LCBP_H */
