#pragma once

#include "core/field.hpp"
#include "core/quadrature.hpp"
#include "core/star_body.hpp"

#include <map>
#include <string>

namespace lcbp {

/// A named collection of bodies and fields plus the quadrature defaults,
/// loaded from the JSON scene grammar:
///
///   {
///     "dimension": 3,
///     "quadrature": {"rel_tol": 1e-6, "abs_tol": 1e-12,
///                    "max_evals": 20000000, "seed": 0},
///     "bodies": {
///       "K": {"body": "ball", "radius": 1.0},
///       "E": {"body": "ellipsoid", "semi_axes": [1.0, 2.0]},
///       "Q": {"body": "cube", "half_width": 0.5},
///       "S": {"body": "radial_table", "angles": [...], "values": [...]},
///       "Z": {"body": "zonal", "coeffs": [1.0, 0.0, 0.2]}
///     },
///     "fields": {
///       "f": {"kind": "gaussian", "sigma": 1.0},
///       "g": {"kind": "exp_norm", "body": "K", "p": 1.0, "c": 1.0},
///       "h": {"kind": "char", "body": "K"},
///       "s": {"kind": "scaled", "field": "f", "factor": 2.0},
///       "pr": {"kind": "product", "factors": ["f", "g"]},
///       "lt": {"kind": "linear", "field": "f", "matrix": [[...], ...]}
///     }
///   }
///
/// Bodies are referenced by name from the fields section; all dimensions
/// must agree with the scene dimension.
struct Scene {
  int dimension = 0;
  QuadratureConfig quadrature;
  std::map<std::string, StarBody> bodies;
  std::map<std::string, ScalarField> fields;

  static Scene parse_file(const std::string& path);
  static Scene parse_text(const std::string& text);

  /// Canonical serialization; parse_text(to_json()) reproduces the scene.
  std::string to_json() const;

  const StarBody& body(const std::string& name) const;
  const ScalarField& field(const std::string& name) const;

private:
  std::string source_; // canonicalized JSON the scene was built from
};

} // namespace lcbp
