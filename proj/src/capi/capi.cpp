#include "lcbp.h"

#include "core/experiments.hpp"
#include "core/grid_potential.hpp"
#include "core/scene.hpp"

#include <json.hpp>

#include <cstring>
#include <new>
#include <string>

using nlohmann::ordered_json;

struct lcbp_scene {
  lcbp::Scene scene;
};
struct lcbp_field {
  lcbp::ScalarField field;
  lcbp::QuadratureConfig cfg; // scene defaults captured at lookup time
};
struct lcbp_body {
  lcbp::StarBody body;
  lcbp::QuadratureConfig cfg;
};
struct lcbp_grid {
  lcbp::GridPotential grid;
};

namespace {

thread_local std::string g_last_error;

lcbp_status fail(lcbp_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

template <class Fn>
lcbp_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const lcbp::invalid_input& e) {
    return fail(LCBP_ERR_INVALID_ARGUMENT, e.what());
  } catch (const lcbp::computation_error& e) {
    return fail(LCBP_ERR_COMPUTATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LCBP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LCBP_ERR_INTERNAL, e.what());
  }
}

lcbp::QuadratureConfig merge_options(const lcbp::QuadratureConfig& base,
                                     const lcbp_quad_options* opts) {
  lcbp::QuadratureConfig cfg = base;
  if (!opts) return cfg;
  if (opts->rel_tol > 0.0) cfg.rel_tol = opts->rel_tol;
  if (opts->abs_tol > 0.0) cfg.abs_tol = opts->abs_tol;
  if (opts->max_evals > 0) cfg.max_evals = opts->max_evals;
  if (opts->has_seed) cfg.seed = opts->seed;
  if (opts->sphere_points > 0) cfg.sphere_points = opts->sphere_points;
  if (opts->subsphere_points > 0) cfg.subsphere_points = opts->subsphere_points;
  return cfg;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void fill_result(lcbp_result* out, double value, double err, int64_t evals,
                 bool converged, bool infinite = false) {
  out->value = value;
  out->error_estimate = err;
  out->evals_used = evals;
  out->converged = converged ? 1 : 0;
  out->is_infinite = infinite ? 1 : 0;
}

lcbp::Vector to_vector(const double* x, int n) {
  if (!x || n < 1) throw lcbp::invalid_input("null or empty point");
  lcbp::Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = x[i];
  return v;
}

ordered_json verdict_json(const lcbp::BPVerdict& v) {
  ordered_json j;
  j["dim"] = v.dim;
  j["domination"] = v.domination;
  j["mass_ordered"] = v.mass_ordered;
  j["selfdual_ordered"] = v.selfdual_ordered;
  j["entropy_ordered"] = v.entropy_ordered;
  j["consistent_with_theorem"] = v.consistent_with_theorem;
  j["worst_section_margin"] = v.worst_section_margin;
  j["worst_direction"] = std::vector<double>(
      v.worst_direction.data(), v.worst_direction.data() + v.worst_direction.size());
  j["mass_f"] = v.mass_f;
  j["mass_g"] = v.mass_g;
  j["selfdual_f"] = v.selfdual_f;
  j["selfdual_g"] = v.selfdual_g;
  j["entropy_f_scaled"] = v.entropy_f_scaled;
  j["entropy_g_scaled"] = v.entropy_g_scaled;
  j["rescale"] = v.rescale;
  j["tolerance"] = v.tolerance;
  return j;
}

} // namespace

extern "C" {

const char* lcbp_version(void) { return "0.1.0"; }

const char* lcbp_last_error(void) { return g_last_error.c_str(); }

void lcbp_string_free(char* s) { delete[] s; }

void lcbp_quad_options_init(lcbp_quad_options* opts) {
  if (!opts) return;
  opts->rel_tol = 0.0;
  opts->abs_tol = 0.0;
  opts->max_evals = 0;
  opts->seed = 0;
  opts->has_seed = 0;
  opts->sphere_points = 0;
  opts->subsphere_points = 0;
}

lcbp_status lcbp_scene_open(const char* path, lcbp_scene** out) {
  if (!path || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    try {
      auto* handle = new lcbp_scene{lcbp::Scene::parse_file(path)};
      *out = handle;
      return LCBP_OK;
    } catch (const lcbp::invalid_input& e) {
      return fail(LCBP_ERR_PARSE, e.what());
    }
  });
}

lcbp_status lcbp_scene_parse(const char* json_text, lcbp_scene** out) {
  if (!json_text || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    try {
      auto* handle = new lcbp_scene{lcbp::Scene::parse_text(json_text)};
      *out = handle;
      return LCBP_OK;
    } catch (const lcbp::invalid_input& e) {
      return fail(LCBP_ERR_PARSE, e.what());
    }
  });
}

void lcbp_scene_free(lcbp_scene* scene) { delete scene; }

lcbp_status lcbp_scene_dimension(const lcbp_scene* scene, int* out) {
  if (!scene || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  *out = scene->scene.dimension;
  return LCBP_OK;
}

lcbp_status lcbp_scene_dump(const lcbp_scene* scene, char** json_out) {
  if (!scene || !json_out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *json_out = dup_string(scene->scene.to_json());
    return LCBP_OK;
  });
}

lcbp_status lcbp_scene_field(const lcbp_scene* scene, const char* name,
                             lcbp_field** out) {
  if (!scene || !name || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    try {
      *out = new lcbp_field{scene->scene.field(name), scene->scene.quadrature};
      return LCBP_OK;
    } catch (const lcbp::invalid_input& e) {
      return fail(LCBP_ERR_UNKNOWN_NAME, e.what());
    }
  });
}

lcbp_status lcbp_scene_body(const lcbp_scene* scene, const char* name,
                            lcbp_body** out) {
  if (!scene || !name || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    try {
      *out = new lcbp_body{scene->scene.body(name), scene->scene.quadrature};
      return LCBP_OK;
    } catch (const lcbp::invalid_input& e) {
      return fail(LCBP_ERR_UNKNOWN_NAME, e.what());
    }
  });
}

void lcbp_field_free(lcbp_field* field) { delete field; }
void lcbp_body_free(lcbp_body* body) { delete body; }

lcbp_status lcbp_field_eval(const lcbp_field* field, const double* x, int n,
                            double* out) {
  if (!field || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = field->field.eval(to_vector(x, n));
    return LCBP_OK;
  });
}

lcbp_status lcbp_field_dim(const lcbp_field* field, int* out) {
  if (!field || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  *out = field->field.dim;
  return LCBP_OK;
}

lcbp_status lcbp_total_mass(const lcbp_field* f, const lcbp_quad_options* opts,
                            lcbp_result* out) {
  if (!f || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::IntegralResult r = lcbp::total_mass(f->field, merge_options(f->cfg, opts));
    fill_result(out, r.value, r.error_estimate, r.evals_used, r.converged);
    return LCBP_OK;
  });
}

lcbp_status lcbp_entropy(const lcbp_field* f, const lcbp_quad_options* opts,
                         lcbp_result* out) {
  if (!f || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::EntropyResult r = lcbp::entropy(f->field, merge_options(f->cfg, opts));
    fill_result(out, r.entropy, r.error_estimate, r.evals_used, r.converged);
    return LCBP_OK;
  });
}

lcbp_status lcbp_parallel_section(const lcbp_field* f, const double* x, int n,
                                  double t, const lcbp_quad_options* opts,
                                  lcbp_result* out) {
  if (!f || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::IntegralResult r = lcbp::parallel_section(f->field, to_vector(x, n), t,
                                                    merge_options(f->cfg, opts));
    fill_result(out, r.value, r.error_estimate, r.evals_used, r.converged);
    return LCBP_OK;
  });
}

lcbp_status lcbp_radon(const lcbp_field* f, const double* x, int n, double r,
                       const lcbp_quad_options* opts, lcbp_result* out) {
  if (!f || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::IntegralResult res =
        lcbp::radon(f->field, to_vector(x, n), r, merge_options(f->cfg, opts));
    fill_result(out, res.value, res.error_estimate, res.evals_used, res.converged);
    return LCBP_OK;
  });
}

lcbp_status lcbp_dual_mixed(const lcbp_field* f, const lcbp_field* g,
                            const lcbp_quad_options* opts, lcbp_result* out) {
  if (!f || !g || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::DualMixedResult r =
        lcbp::dual_mixed(f->field, g->field, merge_options(f->cfg, opts));
    fill_result(out, r.value, r.error_estimate, r.evals_used, r.converged,
                r.is_infinite);
    return LCBP_OK;
  });
}

lcbp_status lcbp_dual_mixed_limit(const lcbp_field* f, const lcbp_field* g,
                                  const lcbp_quad_options* opts,
                                  lcbp_result* out) {
  if (!f || !g || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::DualMixedResult r = lcbp::dual_mixed_by_limit(
        f->field, g->field, {}, merge_options(f->cfg, opts));
    fill_result(out, r.value, r.error_estimate, r.evals_used, r.converged,
                r.is_infinite);
    return LCBP_OK;
  });
}

lcbp_status lcbp_upsilon(const lcbp_field* f, const lcbp_field* g, double t,
                         const lcbp_quad_options* opts, double* out) {
  if (!f || !g || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = lcbp::upsilon(f->field, g->field, t, merge_options(f->cfg, opts));
    return LCBP_OK;
  });
}

lcbp_status lcbp_intersection_function(const lcbp_field* f, const double* x,
                                       int n, const lcbp_quad_options* opts,
                                       double* out) {
  if (!f || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = lcbp::intersection_function(f->field, to_vector(x, n),
                                       merge_options(f->cfg, opts));
    return LCBP_OK;
  });
}

lcbp_status lcbp_intersection_function_via_body(const lcbp_field* f,
                                                const double* x, int n,
                                                const lcbp_quad_options* opts,
                                                double* out) {
  if (!f || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = lcbp::if_via_ball_body(f->field, to_vector(x, n),
                                  merge_options(f->cfg, opts));
    return LCBP_OK;
  });
}

lcbp_status lcbp_ball_body(const lcbp_field* f, double p,
                           const lcbp_quad_options* opts, lcbp_body** out) {
  if (!f || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::QuadratureConfig cfg = merge_options(f->cfg, opts);
    *out = new lcbp_body{lcbp::ball_body(f->field, p, cfg), cfg};
    return LCBP_OK;
  });
}

lcbp_status lcbp_intersection_body(const lcbp_body* K,
                                   const lcbp_quad_options* opts,
                                   lcbp_body** out) {
  if (!K || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::QuadratureConfig cfg = merge_options(K->cfg, opts);
    *out = new lcbp_body{lcbp::intersection_body(K->body, cfg), cfg};
    return LCBP_OK;
  });
}

lcbp_status lcbp_dual_difference(const lcbp_field* f, lcbp_field** out) {
  if (!f || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = new lcbp_field{lcbp::dual_difference(f->field), f->cfg};
    return LCBP_OK;
  });
}

lcbp_status lcbp_membership_n3(const lcbp_field* f, int lmax, double tol,
                               const lcbp_quad_options* opts, char** json_out) {
  if (!f || !json_out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::MembershipResult r = lcbp::is_intersection_function_n3(
        f->field, lmax, tol, merge_options(f->cfg, opts));
    ordered_json j;
    j["verdict"] = lcbp::to_string(r.verdict);
    j["min_preimage"] = r.min_preimage;
    j["min_relative"] = r.min_relative;
    j["odd_energy_fraction"] = r.odd_energy_fraction;
    j["residual_l2"] = r.residual_l2;
    j["coefficients"] = ordered_json::array();
    for (int l = 0; l <= r.rho_expansion.lmax; ++l) {
      for (int m = -l; m <= l; ++m) {
        j["coefficients"].push_back({{"l", l},
                                     {"m", m},
                                     {"rho", r.rho_expansion.coeff(l, m)},
                                     {"preimage", r.preimage.coeff(l, m)}});
      }
    }
    *json_out = dup_string(j.dump(2) + "\n");
    return LCBP_OK;
  });
}

lcbp_status lcbp_body_dim(const lcbp_body* K, int* out) {
  if (!K || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  *out = K->body.dim;
  return LCBP_OK;
}

lcbp_status lcbp_body_radial(const lcbp_body* K, const double* u, int n,
                             double* out) {
  if (!K || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::Vector v = to_vector(u, n);
    const double norm = v.norm();
    if (!(norm > 0.0)) throw lcbp::invalid_input("zero direction");
    *out = K->body.radial(v / norm);
    return LCBP_OK;
  });
}

lcbp_status lcbp_minkowski_norm(const lcbp_body* K, const double* x, int n,
                                double* out) {
  if (!K || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = lcbp::minkowski_norm(K->body, to_vector(x, n));
    return LCBP_OK;
  });
}

lcbp_status lcbp_body_volume(const lcbp_body* K, const lcbp_quad_options* opts,
                             lcbp_result* out) {
  if (!K || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::IntegralResult r = lcbp::volume(K->body, merge_options(K->cfg, opts));
    fill_result(out, r.value, r.error_estimate, r.evals_used, r.converged);
    return LCBP_OK;
  });
}

lcbp_status lcbp_body_section(const lcbp_body* K, const double* u, int n,
                              const lcbp_quad_options* opts, lcbp_result* out) {
  if (!K || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::IntegralResult r = lcbp::central_section_volume(
        K->body, to_vector(u, n), merge_options(K->cfg, opts));
    fill_result(out, r.value, r.error_estimate, r.evals_used, r.converged);
    return LCBP_OK;
  });
}

lcbp_status lcbp_dual_mixed_volume(const lcbp_body* K, const lcbp_body* L,
                                   double p, const lcbp_quad_options* opts,
                                   lcbp_result* out) {
  if (!K || !L || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::IntegralResult r =
        lcbp::dual_mixed_volume(K->body, L->body, p, merge_options(K->cfg, opts));
    fill_result(out, r.value, r.error_estimate, r.evals_used, r.converged);
    return LCBP_OK;
  });
}

lcbp_status lcbp_harmonic_p_combination(const lcbp_body* K, const lcbp_body* L,
                                        double s, double t, double p,
                                        lcbp_body** out) {
  if (!K || !L || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = new lcbp_body{lcbp::harmonic_p_combination(K->body, L->body, s, t, p),
                         K->cfg};
    return LCBP_OK;
  });
}

lcbp_status lcbp_direction_grid(int dim, int count, uint64_t seed,
                                double* nodes_out) {
  if (!nodes_out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::DirectionGrid g = lcbp::DirectionGrid::make(dim, count, seed);
    for (int i = 0; i < g.count(); ++i)
      for (int d = 0; d < dim; ++d) nodes_out[i * dim + d] = g.nodes(d, i);
    return LCBP_OK;
  });
}

lcbp_status lcbp_grid_load_csv(const char* path, lcbp_grid** out) {
  if (!path || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = new lcbp_grid{lcbp::import_grid_csv(path)};
    return LCBP_OK;
  });
}

lcbp_status lcbp_grid_save_csv(const lcbp_grid* grid, const char* path) {
  if (!grid || !path) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::export_grid_csv(grid->grid, path);
    return LCBP_OK;
  });
}

void lcbp_grid_free(lcbp_grid* grid) { delete grid; }

lcbp_status lcbp_grid_legendre(const lcbp_grid* phi, lcbp_grid** out) {
  if (!phi || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = new lcbp_grid{lcbp::legendre_transform(phi->grid)};
    return LCBP_OK;
  });
}

lcbp_status lcbp_grid_inf_convolution(const lcbp_grid* phi, const lcbp_grid* psi,
                                      lcbp_grid** out) {
  if (!phi || !psi || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = new lcbp_grid{lcbp::infimal_convolution(phi->grid, psi->grid)};
    return LCBP_OK;
  });
}

lcbp_status lcbp_grid_right_scale(const lcbp_grid* phi, double t, lcbp_grid** out) {
  if (!phi || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = new lcbp_grid{lcbp::right_scalar_mult(phi->grid, t)};
    return LCBP_OK;
  });
}

lcbp_status lcbp_grid_harmonic_combination(const lcbp_grid* phi,
                                           const lcbp_grid* psi, double t,
                                           lcbp_grid** out) {
  if (!phi || !psi || !out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    *out = new lcbp_grid{lcbp::harmonic_combination_grid(phi->grid, psi->grid, t)};
    return LCBP_OK;
  });
}

lcbp_status lcbp_bp_check(const lcbp_field* f, const lcbp_field* g,
                          int directions, const lcbp_quad_options* opts,
                          char** json_out) {
  if (!f || !g || !json_out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::QuadratureConfig cfg = merge_options(f->cfg, opts);
    const int dirs = directions > 0 ? directions : 64 * f->field.dim;
    lcbp::DirectionGrid grid = lcbp::DirectionGrid::make(f->field.dim, dirs, cfg.seed);
    lcbp::BPVerdict v = lcbp::bp_check(f->field, g->field, grid, cfg);
    *json_out = dup_string(verdict_json(v).dump(2) + "\n");
    return LCBP_OK;
  });
}

lcbp_status lcbp_bp_counterexample(int dim, int directions,
                                   const lcbp_quad_options* opts,
                                   char** json_out) {
  if (!json_out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::QuadratureConfig cfg = merge_options(lcbp::QuadratureConfig{}, opts);
    lcbp::CubeBallResult r = lcbp::bp_counterexample_cube_ball(
        dim, directions > 0 ? directions : 500, cfg);
    ordered_json j;
    j["verdict"] = verdict_json(r.verdict);
    j["ball_radius"] = r.ball_radius;
    j["ball_volume"] = r.ball_volume;
    j["ball_volume_error"] = r.ball_volume_error;
    j["cube_volume"] = 1.0;
    j["max_cube_section"] = r.max_cube_section;
    j["directions"] = r.directions;
    *json_out = dup_string(j.dump(2) + "\n");
    return LCBP_OK;
  });
}

lcbp_status lcbp_suite_run(const char* name, uint64_t seed,
                           const lcbp_quad_options* opts, char** json_out,
                           int* all_pass) {
  if (!name || !json_out) return fail(LCBP_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&]() {
    lcbp::QuadratureConfig cfg = merge_options(lcbp::QuadratureConfig{}, opts);
    lcbp::SuiteResult suite = lcbp::run_suite(name, cfg, seed);
    *json_out = dup_string(lcbp::suite_to_json(suite, cfg));
    if (all_pass) *all_pass = suite.all_pass ? 1 : 0;
    return LCBP_OK;
  });
}

} // extern "C"
