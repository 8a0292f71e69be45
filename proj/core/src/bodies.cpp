#include "sectlab/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sectlab/constants.hpp"
#include "sectlab/errors.hpp"
#include "sectlab/parallel.hpp"
#include "sectlab/sampler.hpp"

namespace sectlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json vector_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

double lp_norm(const Vector& x, double p) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  const double scale = x.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

// Positive root of a t^2 + b t + c = 0 with a > 0, c <= 0, computed
// without cancellation.
double positive_root(double a, double b, double c) {
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  const double sq = std::sqrt(disc);
  if (b >= 0.0) {
    const double q = -0.5 * (b + sq);
    return q == 0.0 ? 0.0 : c / q;
  }
  return (-b + sq) / (2.0 * a);
}

// Returns the axis index of each column when every column is a signed
// coordinate vector on distinct axes.
std::optional<std::vector<int>> coordinate_axes(const Matrix& basis) {
  std::vector<int> axes;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    Eigen::Index at = 0;
    const double big = basis.col(j).cwiseAbs().maxCoeff(&at);
    if (std::abs(big - 1.0) > 1e-14) return std::nullopt;
    if (basis.col(j).cwiseAbs().sum() - big > 1e-14) return std::nullopt;
    if (std::find(axes.begin(), axes.end(), static_cast<int>(at)) != axes.end()) return std::nullopt;
    axes.push_back(static_cast<int>(at));
  }
  return axes;
}

double log_lp_ball_volume(int n, double p, double radius) {
  const double base = n * std::log(2.0 * radius);
  if (std::isinf(p)) return base;
  return base + n * constants::log_gamma(1.0 + 1.0 / p) - constants::log_gamma(1.0 + n / p);
}

// Directions for the boundedness / interiority probe: the 2n signed axes
// followed by `random` seeded uniform directions.
std::vector<Vector> probe_net(int n, int random) {
  std::vector<Vector> net;
  net.reserve(2 * n + random);
  for (int i = 0; i < n; ++i) {
    Vector e = Vector::Zero(n);
    e[i] = 1.0;
    net.push_back(e);
    net.push_back(-e);
  }
  CounterRng rng(StreamHandle{0x5EC71AB0ULL, streams::kProbe}.child(static_cast<std::uint64_t>(n)));
  for (int r = 0; r < random; ++r) net.push_back(random_direction(n, rng));
  return net;
}

// ---------------------------------------------------------------------------

class LpBallImpl final : public BodyImpl {
 public:
  LpBallImpl(int n, double p, double radius, std::string kind)
      : n_(n), p_(p), radius_(radius), kind_(std::move(kind)) {}

  int dim() const override { return n_; }

  double radial(const Vector& d) const override { return radius_ / lp_norm(d, p_); }

  double ray_exit(const Vector& o, const Vector& d) const override {
    if (o.isZero(0.0)) return radial(d);
    if (p_ == 2.0) {
      return positive_root(d.squaredNorm(), 2.0 * o.dot(d), o.squaredNorm() - radius_ * radius_);
    }
    if (std::isinf(p_)) {
      double t = kInf;
      for (int i = 0; i < n_; ++i) {
        if (d[i] > 0.0) t = std::min(t, (radius_ - o[i]) / d[i]);
        if (d[i] < 0.0) t = std::min(t, (-radius_ - o[i]) / d[i]);
      }
      return std::max(0.0, t);
    }
    return ray_exit_by_bisection(o, d);
  }

  bool contains(const Vector& x) const override { return lp_norm(x, p_) <= radius_; }
  bool symmetric() const override { return true; }
  double compute_outer_radius() const override {
    const double e = std::isinf(p_) ? 0.5 : std::max(0.0, 0.5 - 1.0 / p_);
    return radius_ * std::pow(static_cast<double>(n_), e) * (1.0 + 1e-12);
  }

  std::optional<double> exact_volume() const override {
    return std::exp(log_lp_ball_volume(n_, p_, radius_));
  }

  std::optional<double> exact_section_volume(const Matrix& basis) const override {
    const int s = static_cast<int>(basis.cols());
    if (p_ == 2.0) return std::exp(constants::log_ball_volume(s).log_value + s * std::log(radius_));
    if (coordinate_axes(basis)) return std::exp(log_lp_ball_volume(s, p_, radius_));
    return std::nullopt;
  }

  nlohmann::json spec() const override {
    if (kind_ == "cube") return {{"kind", "cube"}, {"dim", n_}, {"half_width", radius_}};
    nlohmann::json j = {{"kind", "lp_ball"}, {"dim", n_}, {"radius", radius_}};
    if (std::isinf(p_)) {
      j["p"] = "inf";
    } else {
      j["p"] = p_;
    }
    return j;
  }

 private:
  int n_;
  double p_;
  double radius_;
  std::string kind_;
};

class EllipsoidImpl final : public BodyImpl {
 public:
  explicit EllipsoidImpl(const Matrix& a) : a_(a) {
    if (a.rows() != a.cols() || a.rows() < 1) throw SpecError("ellipsoid matrix must be square");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * a.cwiseAbs().maxCoeff()) {
      throw SpecError("ellipsoid matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() <= 0.0) {
      throw SpecError("ellipsoid matrix must be positive definite");
    }
    inverse_ = a.inverse();
    log_det_ = eig.eigenvalues().array().log().sum();
  }

  int dim() const override { return static_cast<int>(a_.rows()); }

  double radial(const Vector& d) const override { return 1.0 / std::sqrt(d.dot(inverse_ * d)); }

  double ray_exit(const Vector& o, const Vector& d) const override {
    const Vector qd = inverse_ * d;
    return positive_root(d.dot(qd), 2.0 * o.dot(qd), o.dot(inverse_ * o) - 1.0);
  }

  bool contains(const Vector& x) const override { return x.dot(inverse_ * x) <= 1.0; }
  bool symmetric() const override { return true; }
  double compute_outer_radius() const override {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(a_);
    return std::sqrt(eig.eigenvalues().maxCoeff()) * (1.0 + 1e-12);
  }

  std::optional<double> exact_volume() const override {
    return std::exp(constants::log_ball_volume(dim()).log_value + 0.5 * log_det_);
  }

  std::optional<double> exact_section_volume(const Matrix& basis) const override {
    const int s = static_cast<int>(basis.cols());
    const Matrix restricted = basis.transpose() * inverse_ * basis;
    return std::exp(constants::log_ball_volume(s).log_value) / std::sqrt(restricted.determinant());
  }

  nlohmann::json spec() const override { return {{"kind", "ellipsoid"}, {"matrix", matrix_json(a_)}}; }

 private:
  Matrix a_;
  Matrix inverse_;
  double log_det_ = 0.0;
};

class HPolytopeImpl final : public BodyImpl {
 public:
  HPolytopeImpl(Matrix normals, Vector offsets, std::optional<double> volume, nlohmann::json spec)
      : normals_(std::move(normals)), offsets_(std::move(offsets)), volume_(volume), spec_(std::move(spec)) {
    if (normals_.rows() != offsets_.size() || normals_.rows() < 1 || normals_.cols() < 1) {
      throw SpecError("h_polytope: normals and offsets must have matching lengths");
    }
    for (Eigen::Index i = 0; i < offsets_.size(); ++i) {
      if (!(offsets_[i] > 0.0)) throw OriginNotInterior("h_polytope offsets must be > 0");
      if (!(normals_.row(i).norm() > 0.0)) throw SpecError("h_polytope: zero normal");
    }
    for (const Vector& theta : probe_net(dim(), 100)) {
      if ((normals_ * theta).maxCoeff() <= 0.0) {
        throw UnboundedBody("direction-net probe found a ray that never leaves the polytope");
      }
    }
    symmetric_ = detect_symmetry();
  }

  int dim() const override { return static_cast<int>(normals_.cols()); }

  double ray_exit(const Vector& o, const Vector& d) const override {
    const Vector slack = offsets_ - normals_ * o;
    const Vector speed = normals_ * d;
    double t = kInf;
    for (Eigen::Index i = 0; i < speed.size(); ++i) {
      if (slack[i] < 0.0) throw OriginNotInterior("ray origin outside polytope");
      if (speed[i] > 0.0) t = std::min(t, slack[i] / speed[i]);
    }
    if (std::isinf(t)) throw UnboundedBody();
    return t;
  }

  bool contains(const Vector& x) const override { return ((normals_ * x) - offsets_).maxCoeff() <= 0.0; }
  bool symmetric() const override { return symmetric_; }
  std::optional<double> exact_volume() const override { return volume_; }
  nlohmann::json spec() const override { return spec_; }

  // Largest vertex norm, by enumerating n-subsets of facets; too many
  // subsets falls back to the direction net.
  double compute_outer_radius() const override {
    const int n = dim();
    const auto m = static_cast<int>(normals_.rows());
    double subsets = 1.0;
    for (int i = 0; i < n; ++i) subsets = subsets * (m - i) / (i + 1);
    if (subsets > 2e6) return BodyImpl::compute_outer_radius();
    std::vector<int> pick(n);
    for (int i = 0; i < n; ++i) pick[i] = i;
    Matrix a(n, n);
    Vector b(n);
    double best = 0.0;
    while (true) {
      for (int i = 0; i < n; ++i) {
        a.row(i) = normals_.row(pick[i]);
        b[i] = offsets_[pick[i]];
      }
      Eigen::FullPivLU<Matrix> lu(a);
      if (lu.rank() == n) {
        const Vector x = lu.solve(b);
        const Vector slack = normals_ * x - offsets_;
        if ((slack.array() <= 1e-9 * (1.0 + offsets_.array().abs())).all()) best = std::max(best, x.norm());
      }
      int i = n - 1;
      while (i >= 0 && pick[i] == m - n + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best * (1.0 + 1e-9);
  }

 private:
  bool detect_symmetry() const {
    const Eigen::Index m = normals_.rows();
    for (Eigen::Index i = 0; i < m; ++i) {
      const Vector a = normals_.row(i).transpose() / offsets_[i];
      bool found = false;
      for (Eigen::Index j = 0; j < m && !found; ++j) {
        const Vector b = normals_.row(j).transpose() / offsets_[j];
        found = (a + b).norm() <= 1e-12 * a.norm();
      }
      if (!found) return false;
    }
    return true;
  }

  Matrix normals_;
  Vector offsets_;
  std::optional<double> volume_;
  nlohmann::json spec_;
  bool symmetric_ = false;
};

class LinearImageImpl final : public BodyImpl {
 public:
  LinearImageImpl(StarBody base, const Matrix& t) : base_(std::move(base)), t_(t) {
    if (t.rows() != t.cols() || t.rows() != base_.dim()) {
      throw DomainError("linear_image: transform must be dim x dim");
    }
    Eigen::JacobiSVD<Matrix> svd(t);
    const auto& sv = svd.singularValues();
    if (!(sv.minCoeff() >= 1e-10 * sv.maxCoeff())) {
      throw DegenerateBody("singular transform (reciprocal condition " +
                           std::to_string(sv.minCoeff() / sv.maxCoeff()) + ")");
    }
    inverse_ = t.inverse();
    abs_det_ = std::abs(t.determinant());
  }

  int dim() const override { return base_.dim(); }
  double radial(const Vector& d) const override { return base_.impl().radial(inverse_ * d); }
  double ray_exit(const Vector& o, const Vector& d) const override {
    return base_.impl().ray_exit(inverse_ * o, inverse_ * d);
  }
  bool contains(const Vector& x) const override { return base_.contains(inverse_ * x); }
  bool symmetric() const override { return base_.symmetric(); }
  bool convex() const override { return base_.convex(); }
  double compute_outer_radius() const override {
    return Eigen::JacobiSVD<Matrix>(t_).singularValues().maxCoeff() * base_.outer_radius() * (1.0 + 1e-12);
  }
  std::optional<double> exact_volume() const override {
    if (auto v = base_.exact_volume()) return *v * abs_det_;
    return std::nullopt;
  }
  nlohmann::json spec() const override {
    return {{"kind", "linear_image"}, {"transform", matrix_json(t_)}, {"base", base_.spec()}};
  }

 private:
  StarBody base_;
  Matrix t_;
  Matrix inverse_;
  double abs_det_ = 1.0;
};

class TranslateImpl final : public BodyImpl {
 public:
  TranslateImpl(StarBody base, Vector shift) : base_(std::move(base)), shift_(std::move(shift)) {
    if (shift_.size() != base_.dim()) throw DomainError("translate: shift dimension mismatch");
    if (!base_.convex()) throw DomainError("translate: base body must be convex");
    const Vector source = -shift_;
    if (!base_.contains(source)) throw OriginNotInterior("shifted origin lies outside the body");
    const double floor = 1e-12 * (1.0 + shift_.norm());
    for (const Vector& theta : probe_net(dim(), 32)) {
      double t = 0.0;
      try {
        t = base_.impl().ray_exit(source, theta);
      } catch (const OriginNotInterior&) {
        t = 0.0;
      }
      if (!(t > floor)) throw OriginNotInterior("shifted origin lies on the boundary");
    }
  }

  int dim() const override { return base_.dim(); }
  double ray_exit(const Vector& o, const Vector& d) const override {
    return base_.impl().ray_exit(o - shift_, d);
  }
  double radial(const Vector& d) const override { return base_.impl().ray_exit(-shift_, d); }
  bool contains(const Vector& x) const override { return base_.contains(x - shift_); }
  bool symmetric() const override { return base_.symmetric() && shift_.isZero(0.0); }
  bool convex() const override { return true; }
  double compute_outer_radius() const override { return (base_.outer_radius() + shift_.norm()) * (1.0 + 1e-12); }
  std::optional<double> exact_volume() const override { return base_.exact_volume(); }
  nlohmann::json spec() const override {
    return {{"kind", "translate"}, {"shift", vector_json(shift_)}, {"base", base_.spec()}};
  }

 private:
  StarBody base_;
  Vector shift_;
};

class SectionImpl final : public BodyImpl {
 public:
  SectionImpl(StarBody base, Frame frame) : base_(std::move(base)), frame_(std::move(frame)) {
    if (frame_.ambient_dim() != base_.dim()) throw DomainError("section: frame dimension mismatch");
    if (frame_.dim() >= base_.dim()) throw DomainError("section: frame must be a proper subspace");
  }

  int dim() const override { return frame_.dim(); }
  double radial(const Vector& d) const override { return base_.impl().radial(frame_.basis() * d); }
  double ray_exit(const Vector& o, const Vector& d) const override {
    return base_.impl().ray_exit(frame_.basis() * o, frame_.basis() * d);
  }
  bool contains(const Vector& u) const override { return base_.contains(frame_.basis() * u); }
  bool symmetric() const override { return base_.symmetric(); }
  bool convex() const override { return base_.convex(); }
  double compute_outer_radius() const override { return base_.outer_radius(); }
  std::optional<double> exact_volume() const override {
    return base_.impl().exact_section_volume(frame_.basis());
  }
  std::optional<double> exact_section_volume(const Matrix& basis) const override {
    return base_.impl().exact_section_volume(frame_.basis() * basis);
  }
  nlohmann::json spec() const override {
    return {{"kind", "section"}, {"basis", matrix_json(frame_.basis())}, {"base", base_.spec()}};
  }

 private:
  StarBody base_;
  Frame frame_;
};

}  // namespace

// ---------------------------------------------------------------------------

double BodyImpl::radial(const Vector& direction) const {
  return ray_exit(Vector::Zero(direction.size()), direction);
}

double BodyImpl::ray_exit_by_bisection(const Vector& origin, const Vector& direction) const {
  if (!contains(origin)) throw OriginNotInterior("ray origin outside body");
  double lo = 0.0;
  double hi = 1.0 / direction.norm();
  int expansions = 0;
  while (contains(origin + hi * direction)) {
    lo = hi;
    hi *= 2.0;
    if (++expansions > 200) throw UnboundedBody();
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (contains(origin + mid * direction)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double BodyImpl::outer_radius() const {
  std::call_once(outer_once_, [this] { outer_radius_ = compute_outer_radius(); });
  return outer_radius_;
}

double BodyImpl::compute_outer_radius() const {
  double best = 0.0;
  for (const Vector& theta : probe_net(dim(), 2000)) best = std::max(best, radial(theta));
  return 1.25 * best;
}

StarBody::StarBody(std::shared_ptr<const BodyImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw DomainError("StarBody: null implementation");
}

double StarBody::radial(const Vector& theta) const {
  if (theta.size() != dim()) throw DomainError("radial: dimension mismatch");
  if (std::abs(theta.norm() - 1.0) > 1e-12) throw DomainError("radial: direction must be a unit vector");
  const double r = impl_->radial(theta);
  if (!(r > 0.0) || !std::isfinite(r)) throw UnboundedBody("radial function not finite and positive");
  return r;
}

double StarBody::ray_exit(const Vector& origin, const Vector& direction) const {
  if (origin.size() != dim() || direction.size() != dim()) throw DomainError("ray_exit: dimension mismatch");
  if (!(direction.norm() > 0.0)) throw DomainError("ray_exit: zero direction");
  return impl_->ray_exit(origin, direction);
}

std::optional<double> StarBody::exact_section_volume(const Frame& frame) const {
  if (frame.ambient_dim() != dim()) throw DomainError("exact_section_volume: dimension mismatch");
  return impl_->exact_section_volume(frame.basis());
}

StarBody lp_ball(int n, double p, double radius) {
  if (n < 1) throw DomainError("lp_ball: dimension must be >= 1");
  if (!(p >= 1.0)) throw SpecError("lp_ball: p must be >= 1 (convex range)");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw SpecError("lp_ball: radius must be positive");
  return StarBody(std::make_shared<LpBallImpl>(n, p, radius, "lp_ball"));
}

StarBody euclidean_ball(int n, double radius) { return lp_ball(n, 2.0, radius); }

StarBody cube(int n, double half_width) {
  if (n < 1) throw DomainError("cube: dimension must be >= 1");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw SpecError("cube: half_width must be positive");
  return StarBody(std::make_shared<LpBallImpl>(n, kInf, half_width, "cube"));
}

StarBody ellipsoid(const Matrix& a) { return StarBody(std::make_shared<EllipsoidImpl>(a)); }

StarBody simplex(const Matrix& vertices) {
  const Eigen::Index n = vertices.cols();
  if (n < 1 || vertices.rows() != n + 1) throw SpecError("simplex: need n+1 vertices in R^n");
  Matrix edges(n, n);
  for (Eigen::Index i = 0; i < n; ++i) edges.col(i) = (vertices.row(i + 1) - vertices.row(0)).transpose();
  double vol = std::abs(edges.determinant());
  for (Eigen::Index i = 2; i <= n; ++i) vol /= static_cast<double>(i);
  if (!(vol > 0.0)) throw SpecError("simplex: vertices are affinely dependent");

  Matrix normals(n + 1, n);
  Vector offsets(n + 1);
  for (Eigen::Index i = 0; i <= n; ++i) {
    Matrix others(n, n);
    for (Eigen::Index j = 0, r = 0; j <= n; ++j) {
      if (j != i) others.row(r++) = vertices.row(j);
    }
    Eigen::FullPivLU<Matrix> lu(others);
    if (!lu.isInvertible()) throw OriginNotInterior("simplex: origin lies on a facet hyperplane");
    const Vector a = lu.solve(Vector::Ones(n));
    if (!(a.dot(vertices.row(i).transpose()) < 1.0)) {
      throw OriginNotInterior("simplex: origin lies outside the simplex");
    }
    const double norm = a.norm();
    normals.row(i) = a.transpose() / norm;
    offsets[i] = 1.0 / norm;
  }
  nlohmann::json spec = {{"kind", "simplex"}, {"vertices", matrix_json(vertices)}};
  return StarBody(std::make_shared<HPolytopeImpl>(std::move(normals), std::move(offsets), vol, std::move(spec)));
}

StarBody h_polytope(const Matrix& normals, const Vector& offsets) {
  nlohmann::json spec = {{"kind", "h_polytope"}, {"normals", matrix_json(normals)}, {"offsets", vector_json(offsets)}};
  return StarBody(std::make_shared<HPolytopeImpl>(normals, offsets, std::nullopt, std::move(spec)));
}

StarBody random_h_polytope(int n, int facets, std::uint64_t seed) {
  if (n < 1 || facets < n + 1) throw SpecError("random_h_polytope: need facets >= dim + 1");
  const nlohmann::json spec = {{"kind", "random_h_polytope"}, {"dim", n}, {"facets", facets}, {"seed", seed}};
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    CounterRng rng(StreamHandle{seed, streams::kProbe}.child(attempt));
    Matrix normals(facets, n);
    Vector offsets(facets);
    for (int i = 0; i < facets; ++i) {
      normals.row(i) = random_direction(n, rng).transpose();
      offsets[i] = 0.5 + rng.uniform();
    }
    try {
      return StarBody(std::make_shared<HPolytopeImpl>(std::move(normals), std::move(offsets), std::nullopt, spec));
    } catch (const UnboundedBody&) {
      continue;
    }
  }
  throw UnboundedBody("random_h_polytope: no bounded draw in 1000 attempts");
}

StarBody linear_image(const StarBody& body, const Matrix& transform) {
  return StarBody(std::make_shared<LinearImageImpl>(body, transform));
}

StarBody scaled(const StarBody& body, double factor) {
  if (!(factor > 0.0)) throw DomainError("scaled: factor must be positive");
  return linear_image(body, factor * Matrix::Identity(body.dim(), body.dim()));
}

StarBody translate(const StarBody& body, const Vector& shift) {
  return StarBody(std::make_shared<TranslateImpl>(body, shift));
}

StarBody section(const StarBody& body, const Frame& frame) {
  return StarBody(std::make_shared<SectionImpl>(body, frame));
}

Estimate volume(const StarBody& body, int samples, StreamHandle stream) {
  if (samples < 100) throw DomainError("volume: need at least 100 samples");
  const int n = body.dim();
  if (n == 1) {
    Vector plus(1), minus(1);
    plus[0] = 1.0;
    minus[0] = -1.0;
    return Estimate::exact(body.radial(plus) + body.radial(minus), "S^0 enumerated");
  }
  const double omega = std::exp(constants::log_ball_volume(n).log_value);
  const auto values = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    CounterRng rng(stream.child(i));
    return omega * std::pow(body.radial(random_direction(n, rng)), n);
  });
  Estimate e = mean_of(values);
  e.rule = "omega_n * mean rho^n over uniform directions; " + e.rule;
  return e;
}

Estimate log_volume(const StarBody& body, int samples, StreamHandle stream) {
  if (auto v = body.exact_volume()) return Estimate::exact_log(std::log(*v), "exact volume");
  return to_log(volume(body, samples, stream));
}

CenterOfMass center_of_mass(const StarBody& body, int samples, StreamHandle stream) {
  if (samples < 1000) throw DomainError("center_of_mass: need at least 1000 samples");
  const int n = body.dim();
  const auto points = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    CounterRng rng(stream.child(i));
    return uniform_in_body(body, rng);
  });
  CenterOfMass out;
  out.mean = Vector::Zero(n);
  std::vector<double> coord(points.size());
  for (int c = 0; c < n; ++c) {
    for (std::size_t i = 0; i < points.size(); ++i) coord[i] = points[i][c];
    out.coordinates.push_back(mean_of(coord));
    out.mean[c] = out.coordinates.back().value;
  }
  return out;
}

StarBody recenter(const StarBody& body, const Vector& center) { return translate(body, -center); }

}  // namespace sectlab
