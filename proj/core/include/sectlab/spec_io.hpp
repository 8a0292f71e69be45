#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "sectlab/bodies.hpp"
#include "sectlab/grassmann.hpp"
#include "sectlab/measures.hpp"

namespace sectlab {

/// Body spec JSON. Kinds:
///   lp_ball {dim, p (number or "inf"), radius}   euclidean_ball {dim, radius}
///   cube {dim, half_width}                       ellipsoid {matrix}
///   simplex {vertices}                           h_polytope {normals, offsets}
///   random_h_polytope {dim, facets (8 dim), seed} kp_body {dim, p, density}
///   linear_image {transform, base}               scaled {factor, base}
///   translate {shift, base}                      section {basis, base}
///   normalized {base}  (rescaled to volume 1; base must know its volume)
/// `dim` fills in a missing "dim" (recursively through wrappers); a
/// conflicting explicit dimension is a SpecError.
StarBody parse_body(const nlohmann::json& spec, std::optional<int> dim = std::nullopt);

/// Density spec JSON: lebesgue | gaussian {sigma, amplitude} |
/// radial_exp {rate} | ball_indicator {radius} | translate {shift, base}.
DensityOracle parse_density(const nlohmann::json& spec);

Matrix parse_matrix(const nlohmann::json& rows);
Vector parse_vector(const nlohmann::json& values);
nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json vector_to_json(const Vector& v);

nlohmann::json frame_to_json(const Frame& frame);
Frame frame_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file; SpecError with the path on failure.
nlohmann::json load_json_file(const std::string& path);

}  // namespace sectlab
