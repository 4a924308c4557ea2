// Command-line front end for the lcbp shared library.  Every computation
// goes through the C API in include/lcbp.h; this file only parses
// arguments, loads scenes, and formats output.

#include <lcbp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

using ordered_json = nlohmann::ordered_json;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(lcbp_status status) {
  if (status != LCBP_OK) throw CliError(lcbp_last_error());
}

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  if (out.empty()) throw CliError("empty vector literal '" + text + "'");
  return out;
}

struct ScopedString {
  char* value = nullptr;
  ~ScopedString() { lcbp_string_free(value); }
};

struct SceneHandle {
  lcbp_scene* scene = nullptr;
  ~SceneHandle() { lcbp_scene_free(scene); }
};
struct FieldHandle {
  lcbp_field* field = nullptr;
  ~FieldHandle() { lcbp_field_free(field); }
};
struct BodyHandle {
  lcbp_body* body = nullptr;
  ~BodyHandle() { lcbp_body_free(body); }
};
struct GridHandle {
  lcbp_grid* grid = nullptr;
  ~GridHandle() { lcbp_grid_free(grid); }
};

struct GlobalOptions {
  std::string scene_path;
  std::string out_path;
  std::string format = "json";
  double rel_tol = 0.0;
  std::uint64_t seed = 0;
  bool seed_set = false;

  lcbp_quad_options quad() const {
    lcbp_quad_options q;
    lcbp_quad_options_init(&q);
    q.rel_tol = rel_tol;
    if (seed_set) {
      q.seed = seed;
      q.has_seed = 1;
    }
    if (const char* cap = std::getenv("LCBP_MAX_EVALS")) {
      q.max_evals = std::strtoll(cap, nullptr, 10);
    }
    return q;
  }
};

void write_output(const GlobalOptions& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) throw CliError("cannot write '" + g.out_path + "'");
  out << text;
}

std::string result_text(const GlobalOptions& g, const lcbp_result& r) {
  if (g.format == "csv") {
    std::ostringstream out;
    out.precision(17);
    out << "value,error_estimate,evals,converged,is_infinite\n"
        << r.value << ',' << r.error_estimate << ',' << r.evals_used << ','
        << r.converged << ',' << r.is_infinite << '\n';
    return out.str();
  }
  ordered_json j;
  j["value"] = r.is_infinite ? "inf" : ordered_json(r.value);
  j["error_estimate"] = r.error_estimate;
  j["evals"] = r.evals_used;
  j["converged"] = static_cast<bool>(r.converged);
  if (r.is_infinite) j["is_infinite"] = true;
  return j.dump(2) + "\n";
}

void open_scene(const GlobalOptions& g, SceneHandle& scene) {
  if (g.scene_path.empty()) throw CliError("--scene is required for this command");
  check(lcbp_scene_open(g.scene_path.c_str(), &scene.scene));
}

void get_field(const SceneHandle& scene, const std::string& name, FieldHandle& f) {
  check(lcbp_scene_field(scene.scene, name.c_str(), &f.field));
}

void get_body(const SceneHandle& scene, const std::string& name, BodyHandle& b) {
  check(lcbp_scene_body(scene.scene, name.c_str(), &b.body));
}

/// CSV plot-data emission: one header row, one row per sample, deterministic
/// ordering.  Series must be nonempty and of equal length.
void emit_plot_data(const std::vector<std::string>& headers,
                    const std::vector<std::vector<double>>& columns,
                    const std::string& path) {
  if (columns.empty() || columns.front().empty())
    throw CliError("refusing to emit empty plot data");
  for (const auto& c : columns)
    if (c.size() != columns.front().size())
      throw CliError("plot data columns must have equal length");
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw CliError("cannot write '" + path + "'");
    out = &file;
  }
  out->precision(17);
  for (size_t i = 0; i < headers.size(); ++i)
    *out << (i ? "," : "") << headers[i];
  *out << '\n';
  for (size_t r = 0; r < columns.front().size(); ++r) {
    for (size_t c = 0; c < columns.size(); ++c)
      *out << (c ? "," : "") << columns[c][r];
    *out << '\n';
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"lcbp - convex-geometry calculus for log-concave fields"};
  app.require_subcommand(1);
  app.fallthrough(); // allow global flags after the subcommand

  GlobalOptions g;
  app.add_option("--scene", g.scene_path, "scene JSON file")->envname("LCBP_SCENE");
  app.add_option("--out", g.out_path, "output file (default stdout)");
  app.add_option("--format", g.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--rel-tol", g.rel_tol, "relative tolerance override");
  auto* seed_opt = app.add_option("--seed", g.seed, "seed override (default 0)");

  // ---------------------------------------------------------------- functional
  auto* functional = app.add_subcommand("functional", "scalar functionals of fields");
  auto* feval = functional->add_subcommand("eval", "evaluate a functional");
  std::string op, field_name, g_name = "", u_text, x_text;
  double t_param = 0.0, r_param = 0.0;
  feval->add_option("--op", op, "J|Ent|A|radon|dualmix|dualmix-limit|upsilon")->required();
  feval->add_option("--field", field_name, "field name")->required();
  feval->add_option("--g", g_name, "second field (dualmix/upsilon)");
  feval->add_option("--u", u_text, "direction vector, comma separated");
  feval->add_option("--x", x_text, "point, comma separated");
  feval->add_option("--t", t_param, "offset t (A) or parameter t (upsilon)");
  feval->add_option("--r", r_param, "Radon offset r");

  auto* fprofile = functional->add_subcommand("profile", "section profile A(t) as CSV");
  std::string p_field, p_u;
  double t_min = -3.0, t_max = 3.0;
  int samples = 61;
  fprofile->add_option("--field", p_field)->required();
  fprofile->add_option("--u", p_u, "direction")->required();
  fprofile->add_option("--t-min", t_min);
  fprofile->add_option("--t-max", t_max);
  fprofile->add_option("--samples", samples);

  auto* fupsilon = functional->add_subcommand("upsilon", "Upsilon(t) curve as CSV");
  std::string up_f, up_g;
  int up_samples = 11;
  fupsilon->add_option("--field", up_f)->required();
  fupsilon->add_option("--g", up_g)->required();
  fupsilon->add_option("--samples", up_samples);

  // ----------------------------------------------------------------- intersect
  auto* intersect = app.add_subcommand("intersect", "intersection functions and bodies");
  auto* ieval = intersect->add_subcommand("eval", "evaluate the intersection function");
  std::string i_field, i_x, i_route = "direct";
  ieval->add_option("--field", i_field)->required();
  ieval->add_option("--x", i_x, "point")->required();
  ieval->add_option("--route", i_route, "direct|ballbody")
      ->check(CLI::IsMember({"direct", "ballbody"}));

  auto* ibody = intersect->add_subcommand("body", "intersection body radial values");
  std::string ib_body, ib_u;
  int ib_table = 0;
  ibody->add_option("--body", ib_body)->required();
  ibody->add_option("--u", ib_u, "single direction");
  ibody->add_option("--table", ib_table, "emit CSV over N grid directions");

  auto* iball = intersect->add_subcommand("ballbody", "Ball body radial values");
  std::string ibb_field, ibb_u;
  double ibb_p = 0.0;
  int ibb_table = 0;
  iball->add_option("--field", ibb_field)->required();
  iball->add_option("--p", ibb_p, "moment order p > 0")->required();
  iball->add_option("--u", ibb_u, "single direction");
  iball->add_option("--table", ibb_table, "emit CSV over N grid directions");

  auto* imember = intersect->add_subcommand("membership",
                                            "intersection-function membership (n = 3)");
  std::string m_field, m_coeffs;
  int m_lmax = 16;
  double m_tol = 1e-4;
  imember->add_option("--field", m_field)->required();
  imember->add_option("--Lmax", m_lmax, "harmonic band limit");
  imember->add_option("--tol", m_tol, "verdict tolerance");
  imember->add_option("--coeffs", m_coeffs, "write the coefficient table CSV here");

  // ------------------------------------------------------------------------ bp
  auto* bp = app.add_subcommand("bp", "Busemann-Petty comparisons");
  auto* bpcheck = bp->add_subcommand("check", "compare two even fields");
  std::string bp_f, bp_g;
  int bp_dirs = 0;
  bpcheck->add_option("--f", bp_f)->required();
  bpcheck->add_option("--g", bp_g)->required();
  bpcheck->add_option("--directions", bp_dirs, "direction grid size");

  auto* bpneg = bp->add_subcommand("counterexample", "cube vs ball, n >= 10");
  int bp_dim = 10, bp_neg_dirs = 500;
  bpneg->add_option("--dim", bp_dim, "ambient dimension (>= 10)");
  bpneg->add_option("--directions", bp_neg_dirs);

  // --------------------------------------------------------------------- suite
  auto* suite = app.add_subcommand("suite", "verification suites");
  auto* srun = suite->add_subcommand("run", "run a named suite");
  std::string suite_name = "all", suite_csv;
  srun->add_option("--name", suite_name,
                   "dual-minkowski|busemann-intersection|moments|inclusion|"
                   "symmetrization|bp-positive|bp-negative|all");
  srun->add_option("--csv", suite_csv, "also write the report table as CSV");

  // ------------------------------------------------------------------ geometry
  auto* geometry = app.add_subcommand("geometry", "star-body quantities");
  auto* gvol = geometry->add_subcommand("volume", "body volume");
  std::string gv_body;
  gvol->add_option("--body", gv_body)->required();
  auto* gsec = geometry->add_subcommand("section", "central section volume");
  std::string gs_body, gs_u;
  gsec->add_option("--body", gs_body)->required();
  gsec->add_option("--u", gs_u)->required();
  auto* gdual = geometry->add_subcommand("dualmix", "L_p dual mixed volume");
  std::string gd_K, gd_L;
  double gd_p = 1.0;
  gdual->add_option("--K", gd_K)->required();
  gdual->add_option("--L", gd_L)->required();
  gdual->add_option("--p", gd_p);
  auto* gcomb = geometry->add_subcommand("combine", "harmonic p-combination radial table");
  std::string gc_K, gc_L;
  double gc_s = 1.0, gc_t = 1.0, gc_p = 1.0;
  int gc_table = 64;
  gcomb->add_option("--K", gc_K)->required();
  gcomb->add_option("--L", gc_L)->required();
  gcomb->add_option("--s", gc_s);
  gcomb->add_option("--t", gc_t);
  gcomb->add_option("--p", gc_p);
  gcomb->add_option("--table", gc_table);

  // deterministic seed for grid emission even without --seed
  // -------------------------------------------------------------------- convex
  auto* convex = app.add_subcommand("convex", "grid potential transforms");
  auto* clegendre = convex->add_subcommand("legendre", "Legendre transform");
  std::string cv_in, cv_with, cv_out;
  clegendre->add_option("--in", cv_in)->required();
  clegendre->add_option("--out-file", cv_out, "output CSV (defaults to --out)");
  auto* cinf = convex->add_subcommand("infconv", "infimal convolution");
  cinf->add_option("--in", cv_in)->required();
  cinf->add_option("--with", cv_with)->required();
  auto* cscale = convex->add_subcommand("scale", "right scalar multiplication");
  double cv_t = 1.0;
  cscale->add_option("--in", cv_in)->required();
  cscale->add_option("--t", cv_t)->required();
  auto* ccomb = convex->add_subcommand("combine", "harmonic combination phi + t psi");
  ccomb->add_option("--in", cv_in)->required();
  ccomb->add_option("--with", cv_with)->required();
  ccomb->add_option("--t", cv_t);

  CLI11_PARSE(app, argc, argv);
  g.seed_set = seed_opt->count() > 0;

  try {
    const lcbp_quad_options quad = g.quad();

    if (feval->parsed()) {
      SceneHandle scene;
      open_scene(g, scene);
      FieldHandle f;
      get_field(scene, field_name, f);
      lcbp_result r;
      if (op == "J") {
        check(lcbp_total_mass(f.field, &quad, &r));
      } else if (op == "Ent") {
        check(lcbp_entropy(f.field, &quad, &r));
      } else if (op == "A") {
        const std::string dir = !u_text.empty() ? u_text : x_text;
        if (dir.empty()) throw CliError("--op A needs --u (or --x)");
        auto u = parse_vector(dir);
        check(lcbp_parallel_section(f.field, u.data(), (int)u.size(), t_param, &quad, &r));
      } else if (op == "radon") {
        if (x_text.empty()) throw CliError("--op radon needs --x");
        auto x = parse_vector(x_text);
        check(lcbp_radon(f.field, x.data(), (int)x.size(), r_param, &quad, &r));
      } else if (op == "dualmix" || op == "dualmix-limit") {
        if (g_name.empty()) throw CliError("--op dualmix needs --g");
        FieldHandle gf;
        get_field(scene, g_name, gf);
        if (op == "dualmix") check(lcbp_dual_mixed(f.field, gf.field, &quad, &r));
        else check(lcbp_dual_mixed_limit(f.field, gf.field, &quad, &r));
      } else if (op == "upsilon") {
        if (g_name.empty()) throw CliError("--op upsilon needs --g");
        FieldHandle gf;
        get_field(scene, g_name, gf);
        double v = 0.0;
        check(lcbp_upsilon(f.field, gf.field, t_param, &quad, &v));
        r = {v, 0.0, 0, 1, 0};
      } else {
        throw CliError("unknown --op '" + op + "'");
      }
      write_output(g, result_text(g, r));
      return 0;
    }

    if (fprofile->parsed()) {
      SceneHandle scene;
      open_scene(g, scene);
      FieldHandle f;
      get_field(scene, p_field, f);
      auto u = parse_vector(p_u);
      if (samples < 2) throw CliError("--samples must be >= 2");
      std::vector<double> ts, values;
      for (int i = 0; i < samples; ++i) {
        const double t = t_min + (t_max - t_min) * i / (samples - 1);
        lcbp_result r;
        check(lcbp_parallel_section(f.field, u.data(), (int)u.size(), t, &quad, &r));
        ts.push_back(t);
        values.push_back(r.value);
      }
      emit_plot_data({"t", "A"}, {ts, values}, g.out_path);
      return 0;
    }

    if (fupsilon->parsed()) {
      SceneHandle scene;
      open_scene(g, scene);
      FieldHandle f, gf;
      get_field(scene, up_f, f);
      get_field(scene, up_g, gf);
      if (up_samples < 3) throw CliError("--samples must be >= 3");
      std::vector<double> ts, values;
      for (int i = 0; i < up_samples; ++i) {
        const double t = static_cast<double>(i) / (up_samples - 1);
        double v = 0.0;
        check(lcbp_upsilon(f.field, gf.field, t, &quad, &v));
        ts.push_back(t);
        values.push_back(v);
      }
      emit_plot_data({"t", "upsilon"}, {ts, values}, g.out_path);
      return 0;
    }

    if (ieval->parsed()) {
      SceneHandle scene;
      open_scene(g, scene);
      FieldHandle f;
      get_field(scene, i_field, f);
      auto x = parse_vector(i_x);
      double v = 0.0;
      if (i_route == "direct")
        check(lcbp_intersection_function(f.field, x.data(), (int)x.size(), &quad, &v));
      else
        check(lcbp_intersection_function_via_body(f.field, x.data(), (int)x.size(),
                                                  &quad, &v));
      ordered_json j;
      j["value"] = v;
      j["route"] = i_route;
      write_output(g, j.dump(2) + "\n");
      return 0;
    }

    auto radial_table = [&](lcbp_body* body, int count) {
      int dim = 0;
      check(lcbp_body_dim(body, &dim));
      std::vector<double> nodes(static_cast<size_t>(dim) * count);
      check(lcbp_direction_grid(dim, count, quad.has_seed ? quad.seed : 0, nodes.data()));
      std::vector<std::vector<double>> cols(dim + 1);
      for (int i = 0; i < count; ++i) {
        double rho = 0.0;
        check(lcbp_body_radial(body, nodes.data() + static_cast<size_t>(i) * dim, dim, &rho));
        for (int d = 0; d < dim; ++d) cols[d].push_back(nodes[i * dim + d]);
        cols[dim].push_back(rho);
      }
      std::vector<std::string> headers;
      for (int d = 0; d < dim; ++d) headers.push_back("u" + std::to_string(d));
      headers.push_back("rho");
      emit_plot_data(headers, cols, g.out_path);
    };

    if (ibody->parsed()) {
      SceneHandle scene;
      open_scene(g, scene);
      BodyHandle K, IK;
      get_body(scene, ib_body, K);
      check(lcbp_intersection_body(K.body, &quad, &IK.body));
      if (ib_table > 0) {
        radial_table(IK.body, ib_table);
      } else {
        if (ib_u.empty()) throw CliError("need --u or --table");
        auto u = parse_vector(ib_u);
        double rho = 0.0;
        check(lcbp_body_radial(IK.body, u.data(), (int)u.size(), &rho));
        ordered_json j;
        j["rho"] = rho;
        write_output(g, j.dump(2) + "\n");
      }
      return 0;
    }

    if (iball->parsed()) {
      SceneHandle scene;
      open_scene(g, scene);
      FieldHandle f;
      get_field(scene, ibb_field, f);
      BodyHandle K;
      check(lcbp_ball_body(f.field, ibb_p, &quad, &K.body));
      if (ibb_table > 0) {
        radial_table(K.body, ibb_table);
      } else {
        if (ibb_u.empty()) throw CliError("need --u or --table");
        auto u = parse_vector(ibb_u);
        double rho = 0.0;
        check(lcbp_body_radial(K.body, u.data(), (int)u.size(), &rho));
        ordered_json j;
        j["rho"] = rho;
        write_output(g, j.dump(2) + "\n");
      }
      return 0;
    }

    if (imember->parsed()) {
      SceneHandle scene;
      open_scene(g, scene);
      FieldHandle f;
      get_field(scene, m_field, f);
      ScopedString json;
      check(lcbp_membership_n3(f.field, m_lmax, m_tol, &quad, &json.value));
      write_output(g, json.value);
      if (!m_coeffs.empty()) {
        auto parsed = ordered_json::parse(json.value);
        std::vector<double> ls, ms, rhos, pres;
        for (const auto& row : parsed["coefficients"]) {
          ls.push_back(row["l"].get<double>());
          ms.push_back(row["m"].get<double>());
          rhos.push_back(row["rho"].get<double>());
          pres.push_back(row["preimage"].get<double>());
        }
        emit_plot_data({"l", "m", "rho", "preimage"}, {ls, ms, rhos, pres}, m_coeffs);
      }
      return 0;
    }

    if (bpcheck->parsed()) {
      SceneHandle scene;
      open_scene(g, scene);
      FieldHandle f, gf;
      get_field(scene, bp_f, f);
      get_field(scene, bp_g, gf);
      ScopedString json;
      check(lcbp_bp_check(f.field, gf.field, bp_dirs, &quad, &json.value));
      write_output(g, json.value);
      return 0;
    }

    if (bpneg->parsed()) {
      ScopedString json;
      check(lcbp_bp_counterexample(bp_dim, bp_neg_dirs, &quad, &json.value));
      write_output(g, json.value);
      return 0;
    }

    if (srun->parsed()) {
      ScopedString json;
      int all_pass = 0;
      check(lcbp_suite_run(suite_name.c_str(), g.seed_set ? g.seed : 0, &quad,
                           &json.value, &all_pass));
      write_output(g, json.value);
      if (!suite_csv.empty()) {
        auto parsed = ordered_json::parse(json.value);
        std::ofstream csv(suite_csv);
        if (!csv) throw CliError("cannot write '" + suite_csv + "'");
        csv.precision(17);
        csv << "name,lhs,rhs,margin,tolerance,pass,equality_expected,details\n";
        for (const auto& r : parsed["reports"]) {
          csv << r["name"].get<std::string>() << ',' << r["lhs"].get<double>() << ','
              << r["rhs"].get<double>() << ',' << r["margin"].get<double>() << ','
              << r["tolerance"].get<double>() << ',' << (r["pass"].get<bool>() ? 1 : 0)
              << ',' << (r["equality_expected"].get<bool>() ? 1 : 0) << ','
              << r["details"].get<std::string>() << '\n';
        }
      }
      return all_pass ? 0 : 3;
    }

    if (gvol->parsed() || gsec->parsed() || gdual->parsed() || gcomb->parsed()) {
      SceneHandle scene;
      open_scene(g, scene);
      if (gvol->parsed()) {
        BodyHandle K;
        get_body(scene, gv_body, K);
        lcbp_result r;
        check(lcbp_body_volume(K.body, &quad, &r));
        write_output(g, result_text(g, r));
      } else if (gsec->parsed()) {
        BodyHandle K;
        get_body(scene, gs_body, K);
        auto u = parse_vector(gs_u);
        lcbp_result r;
        check(lcbp_body_section(K.body, u.data(), (int)u.size(), &quad, &r));
        write_output(g, result_text(g, r));
      } else if (gdual->parsed()) {
        BodyHandle K, L;
        get_body(scene, gd_K, K);
        get_body(scene, gd_L, L);
        lcbp_result r;
        check(lcbp_dual_mixed_volume(K.body, L.body, gd_p, &quad, &r));
        write_output(g, result_text(g, r));
      } else {
        BodyHandle K, L, C;
        get_body(scene, gc_K, K);
        get_body(scene, gc_L, L);
        check(lcbp_harmonic_p_combination(K.body, L.body, gc_s, gc_t, gc_p, &C.body));
        radial_table(C.body, gc_table);
      }
      return 0;
    }

    if (clegendre->parsed() || cinf->parsed() || cscale->parsed() || ccomb->parsed()) {
      GridHandle in, with, out;
      check(lcbp_grid_load_csv(cv_in.c_str(), &in.grid));
      if (clegendre->parsed()) {
        check(lcbp_grid_legendre(in.grid, &out.grid));
      } else if (cinf->parsed()) {
        check(lcbp_grid_load_csv(cv_with.c_str(), &with.grid));
        check(lcbp_grid_inf_convolution(in.grid, with.grid, &out.grid));
      } else if (cscale->parsed()) {
        check(lcbp_grid_right_scale(in.grid, cv_t, &out.grid));
      } else {
        check(lcbp_grid_load_csv(cv_with.c_str(), &with.grid));
        check(lcbp_grid_harmonic_combination(in.grid, with.grid, cv_t, &out.grid));
      }
      const std::string target = !cv_out.empty() ? cv_out : g.out_path;
      if (target.empty()) throw CliError("convex commands need --out");
      check(lcbp_grid_save_csv(out.grid, target.c_str()));
      return 0;
    }

    throw CliError("no subcommand executed");
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
