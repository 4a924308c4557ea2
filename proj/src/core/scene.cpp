#include "core/scene.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace lcbp {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void scene_error(const std::string& message) {
  throw invalid_input("scene: " + message);
}

double require_number(const ordered_json& j, const std::string& key,
                      const std::string& where) {
  if (!j.contains(key) || !j[key].is_number())
    scene_error("missing numeric key '" + key + "' at " + where);
  return j[key].get<double>();
}

StarBody parse_body(const ordered_json& spec, int dimension, const std::string& where) {
  if (!spec.contains("body") || !spec["body"].is_string())
    scene_error("missing 'body' tag at " + where);
  const std::string kind = spec["body"].get<std::string>();
  if (kind == "ball") {
    return make_ball(dimension, spec.contains("radius")
                                    ? require_number(spec, "radius", where)
                                    : 1.0);
  }
  if (kind == "ellipsoid") {
    if (spec.contains("matrix")) {
      const auto& rows = spec["matrix"];
      Matrix A(dimension, dimension);
      if (static_cast<int>(rows.size()) != dimension)
        scene_error("dimension mismatch in 'matrix' at " + where);
      for (int i = 0; i < dimension; ++i) {
        if (static_cast<int>(rows[i].size()) != dimension)
          scene_error("dimension mismatch in 'matrix' at " + where);
        for (int j = 0; j < dimension; ++j) A(i, j) = rows[i][j].get<double>();
      }
      return make_ellipsoid_from_matrix(A);
    }
    if (!spec.contains("semi_axes")) scene_error("ellipsoid needs 'semi_axes' or 'matrix' at " + where);
    std::vector<double> axes = spec["semi_axes"].get<std::vector<double>>();
    if (static_cast<int>(axes.size()) != dimension)
      scene_error("dimension mismatch: 'semi_axes' at " + where);
    return make_ellipsoid(axes);
  }
  if (kind == "cube") {
    return make_cube(dimension, spec.contains("half_width")
                                    ? require_number(spec, "half_width", where)
                                    : 0.5);
  }
  if (kind == "radial_table") {
    if (dimension != 2) scene_error("radial_table bodies require dimension 2 at " + where);
    if (!spec.contains("angles") || !spec.contains("values"))
      scene_error("radial_table needs 'angles' and 'values' at " + where);
    return make_radial_table_2d(spec["angles"].get<std::vector<double>>(),
                                spec["values"].get<std::vector<double>>());
  }
  if (kind == "zonal") {
    if (dimension != 3) scene_error("zonal bodies require dimension 3 at " + where);
    if (!spec.contains("coeffs")) scene_error("zonal needs 'coeffs' at " + where);
    return make_zonal_body(spec["coeffs"].get<std::vector<double>>());
  }
  scene_error("unknown body kind '" + kind + "' at " + where);
}

} // namespace

Scene Scene::parse_text(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    scene_error(std::string("invalid JSON: ") + e.what());
  }
  Scene scene;
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    scene_error("missing integer key 'dimension'");
  scene.dimension = j["dimension"].get<int>();
  if (scene.dimension < 1) scene_error("'dimension' must be >= 1");

  if (j.contains("quadrature")) {
    const auto& q = j["quadrature"];
    if (q.contains("rel_tol")) scene.quadrature.rel_tol = q["rel_tol"].get<double>();
    if (q.contains("abs_tol")) scene.quadrature.abs_tol = q["abs_tol"].get<double>();
    if (q.contains("max_evals")) scene.quadrature.max_evals = q["max_evals"].get<std::int64_t>();
    if (q.contains("seed")) scene.quadrature.seed = q["seed"].get<std::uint64_t>();
    if (q.contains("sphere_points")) scene.quadrature.sphere_points = q["sphere_points"].get<int>();
    if (q.contains("subsphere_points"))
      scene.quadrature.subsphere_points = q["subsphere_points"].get<int>();
    scene.quadrature.validate();
  }

  if (j.contains("bodies")) {
    for (const auto& [name, spec] : j["bodies"].items())
      scene.bodies.emplace(name, parse_body(spec, scene.dimension, "bodies." + name));
  }

  if (j.contains("fields")) {
    const auto& fields_json = j["fields"];
    // resolve field references recursively with cycle detection
    std::set<std::string> in_progress;
    std::function<const ScalarField&(const std::string&)> resolve =
        [&](const std::string& name) -> const ScalarField& {
      auto done = scene.fields.find(name);
      if (done != scene.fields.end()) return done->second;
      if (!fields_json.contains(name))
        scene_error("field reference '" + name + "' does not resolve");
      if (!in_progress.insert(name).second)
        scene_error("cyclic field reference through '" + name + "'");
      const auto& spec = fields_json[name];
      const std::string where = "fields." + name;
      if (!spec.contains("kind") || !spec["kind"].is_string())
        scene_error("missing 'kind' tag at " + where);
      const std::string kind = spec["kind"].get<std::string>();
      ScalarField field;
      if (kind == "gaussian") {
        field = make_gaussian(scene.dimension, require_number(spec, "sigma", where));
      } else if (kind == "exp_norm" || kind == "char") {
        if (!spec.contains("body") || !spec["body"].is_string())
          scene_error("missing 'body' reference at " + where);
        const std::string body_name = spec["body"].get<std::string>();
        auto it = scene.bodies.find(body_name);
        if (it == scene.bodies.end())
          scene_error("field '" + name + "' references missing body '" + body_name + "'");
        field = (kind == "char")
                    ? make_characteristic(it->second)
                    : make_exp_body_norm(it->second, require_number(spec, "p", where),
                                         require_number(spec, "c", where));
      } else if (kind == "scaled") {
        if (!spec.contains("field")) scene_error("missing 'field' reference at " + where);
        field = scale_field(resolve(spec["field"].get<std::string>()),
                            require_number(spec, "factor", where));
      } else if (kind == "product") {
        if (!spec.contains("factors") || !spec["factors"].is_array() ||
            spec["factors"].size() < 2)
          scene_error("'product' needs >= 2 'factors' at " + where);
        field = resolve(spec["factors"][0].get<std::string>());
        for (size_t k = 1; k < spec["factors"].size(); ++k)
          field = product_field(field, resolve(spec["factors"][k].get<std::string>()));
      } else if (kind == "linear") {
        if (!spec.contains("field")) scene_error("missing 'field' reference at " + where);
        if (!spec.contains("matrix")) scene_error("missing 'matrix' at " + where);
        const auto& rows = spec["matrix"];
        Matrix T(scene.dimension, scene.dimension);
        if (static_cast<int>(rows.size()) != scene.dimension)
          scene_error("dimension mismatch in 'matrix' at " + where);
        for (int r = 0; r < scene.dimension; ++r) {
          if (static_cast<int>(rows[r].size()) != scene.dimension)
            scene_error("dimension mismatch in 'matrix' at " + where);
          for (int c = 0; c < scene.dimension; ++c) T(r, c) = rows[r][c].get<double>();
        }
        field = compose_linear(resolve(spec["field"].get<std::string>()), T);
      } else {
        scene_error("unknown field kind '" + kind + "' at " + where);
      }
      in_progress.erase(name);
      return scene.fields.emplace(name, std::move(field)).first->second;
    };
    for (const auto& [name, spec] : fields_json.items()) resolve(name);
  }

  scene.source_ = j.dump(2) + "\n";
  return scene;
}

Scene Scene::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("scene: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

std::string Scene::to_json() const { return source_; }

const StarBody& Scene::body(const std::string& name) const {
  auto it = bodies.find(name);
  if (it == bodies.end()) throw invalid_input("scene: no body named '" + name + "'");
  return it->second;
}

const ScalarField& Scene::field(const std::string& name) const {
  auto it = fields.find(name);
  if (it == fields.end()) throw invalid_input("scene: no field named '" + name + "'");
  return it->second;
}

} // namespace lcbp
