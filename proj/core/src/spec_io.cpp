#include "sectlab/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "sectlab/errors.hpp"

namespace sectlab {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) throw SpecError("missing field \"" + std::string(key) + "\" in " + j.dump());
  return j.at(key);
}

double number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) throw SpecError("field \"" + std::string(key) + "\" must be a number");
  return v.get<double>();
}

int resolve_dim(const json& j, std::optional<int> dim) {
  if (j.contains("dim")) {
    const json& v = j.at("dim");
    if (!v.is_number_integer()) throw SpecError("field \"dim\" must be an integer");
    const int d = v.get<int>();
    if (dim && *dim != d) {
      throw SpecError("body has dim " + std::to_string(d) + " but " + std::to_string(*dim) + " was requested");
    }
    return d;
  }
  if (!dim) throw SpecError("missing field \"dim\" in " + j.dump());
  return *dim;
}

void check_dim(const StarBody& body, std::optional<int> dim) {
  if (dim && body.dim() != *dim) {
    throw SpecError("body has dim " + std::to_string(body.dim()) + " but " + std::to_string(*dim) + " was requested");
  }
}

double parse_p(const json& j) {
  if (!j.contains("p")) return 2.0;
  const json& v = j.at("p");
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    throw SpecError("p must be a number or \"inf\"");
  }
  if (!v.is_number()) throw SpecError("p must be a number or \"inf\"");
  return v.get<double>();
}

StarBody parse_body_impl(const json& j, std::optional<int> dim) {
  if (!j.is_object()) throw SpecError("body spec must be an object");
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "lp_ball") return lp_ball(resolve_dim(j, dim), parse_p(j), number(j, "radius", 1.0));
  if (kind == "euclidean_ball" || kind == "ball") {
    return euclidean_ball(resolve_dim(j, dim), number(j, "radius", 1.0));
  }
  if (kind == "cube") return cube(resolve_dim(j, dim), number(j, "half_width", 1.0));
  if (kind == "random_h_polytope") {
    const int n = resolve_dim(j, dim);
    const int facets = j.contains("facets") ? j.at("facets").get<int>() : 8 * n;
    return random_h_polytope(n, facets, j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 1);
  }
  StarBody body = [&]() -> StarBody {
    if (kind == "ellipsoid") return ellipsoid(parse_matrix(field(j, "matrix")));
    if (kind == "simplex") return simplex(parse_matrix(field(j, "vertices")));
    if (kind == "h_polytope") return h_polytope(parse_matrix(field(j, "normals")), parse_vector(field(j, "offsets")));
    if (kind == "kp_body") {
      return kp_body(parse_density(field(j, "density")), number(j, "p", 1.0), resolve_dim(j, dim));
    }
    if (kind == "linear_image") {
      return linear_image(parse_body_impl(field(j, "base"), dim), parse_matrix(field(j, "transform")));
    }
    if (kind == "scaled") return scaled(parse_body_impl(field(j, "base"), dim), number(j, "factor", 1.0));
    if (kind == "translate") return translate(parse_body_impl(field(j, "base"), dim), parse_vector(field(j, "shift")));
    if (kind == "section") {
      const Frame frame(parse_matrix(field(j, "basis")));
      return section(parse_body_impl(field(j, "base"), frame.ambient_dim()), frame);
    }
    if (kind == "normalized") {
      const StarBody base = parse_body_impl(field(j, "base"), dim);
      const auto v = base.exact_volume();
      if (!v) throw SpecError("normalized: base body has no exact volume");
      return scaled(base, std::pow(*v, -1.0 / base.dim()));
    }
    throw SpecError("unknown body kind \"" + kind + "\"");
  }();
  check_dim(body, dim);
  return body;
}

}  // namespace

StarBody parse_body(const nlohmann::json& spec, std::optional<int> dim) {
  try {
    return parse_body_impl(spec, dim);
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed body spec: ") + e.what());
  }
}

DensityOracle parse_density(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw SpecError("measure spec must be an object");
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "lebesgue") return lebesgue();
    if (kind == "gaussian") {
      if (j.contains("sigma") && j.at("sigma").is_array()) {
        if (j.contains("amplitude")) throw SpecError("gaussian: amplitude needs a scalar sigma");
        return gaussian(parse_vector(j.at("sigma")));
      }
      return scaled_gaussian(number(j, "sigma", 1.0), number(j, "amplitude", 1.0));
    }
    if (kind == "radial_exp") return radial_exp(number(j, "rate", 1.0));
    if (kind == "ball_indicator") return ball_indicator(number(j, "radius", 1.0));
    if (kind == "translate") return translate(parse_density(field(j, "base")), parse_vector(field(j, "shift")));
    throw SpecError("unknown measure kind \"" + kind + "\"");
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed measure spec: ") + e.what());
  }
}

Matrix parse_matrix(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty() || !rows.at(0).is_array()) throw SpecError("matrix must be an array of rows");
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.at(0).size());
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) throw SpecError("matrix rows must have equal length");
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = row.at(j).get<double>();
  }
  return m;
}

Vector parse_vector(const nlohmann::json& values) {
  if (!values.is_array() || values.empty()) throw SpecError("vector must be a non-empty array");
  Vector v(static_cast<Eigen::Index>(values.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = values.at(i).get<double>();
  return v;
}

nlohmann::json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

nlohmann::json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

nlohmann::json frame_to_json(const Frame& frame) {
  return {{"ambient_dim", frame.ambient_dim()}, {"dim", frame.dim()}, {"basis", matrix_to_json(frame.basis())}};
}

Frame frame_from_json(const nlohmann::json& j) { return Frame(parse_matrix(field(j, "basis"))); }

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
}

}  // namespace sectlab
