#include "sectlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "sectlab/constants.hpp"
#include "sectlab/errors.hpp"
#include "sectlab/parallel.hpp"
#include "sectlab/sampler.hpp"

namespace sectlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadratureTol = 1e-9;
constexpr unsigned kQuadratureDepth = 24;
constexpr double kProbeInflation = 1.05;
constexpr int kProbePoints = 1000;

nlohmann::json vector_json(const Vector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

// Max of g over uniform points of the body and the origin, inflated.
SupBound probe_sup(const DensityImpl& g, const StarBody& body) {
  const int n = body.dim();
  const Vector zero = Vector::Zero(n);
  const auto values = parallel_map(static_cast<std::size_t>(kProbePoints), [&](std::size_t i) {
    CounterRng rng(StreamHandle{0x5EC7u, streams::kProbe}.child(i));
    return g.eval(uniform_in_body(body, rng));
  });
  double best = g.eval(zero);
  for (double v : values) best = std::max(best, v);
  return {best * kProbeInflation, false,
          "max over origin and " + std::to_string(kProbePoints) + " uniform points, x1.05"};
}

class LebesgueImpl final : public DensityImpl {
 public:
  double eval(const Vector&) const override { return 1.0; }
  double eval_ray(const Vector&, double) const override { return 1.0; }
  std::optional<double> radial_moment(const Vector&, double rho, int m) const override {
    return std::pow(rho, m) / m;
  }
  bool even() const override { return true; }
  bool log_concave() const override { return true; }
  bool is_lebesgue() const override { return true; }
  SupBound sup_on(const StarBody&) const override { return {1.0, true, "constant density"}; }
  nlohmann::json spec() const override { return {{"kind", "lebesgue"}}; }
};

class GaussianImpl final : public DensityImpl {
 public:
  GaussianImpl(Vector sigma, bool isotropic, double amplitude)
      : sigma_(std::move(sigma)), isotropic_(isotropic), amplitude_(amplitude) {
    for (Eigen::Index i = 0; i < sigma_.size(); ++i) {
      if (!(sigma_[i] > 0.0) || !std::isfinite(sigma_[i])) throw SpecError("gaussian: sigma must be positive");
    }
    inv_var_ = sigma_.array().square().inverse().matrix();
  }

  std::optional<int> dim() const override {
    if (isotropic_) return std::nullopt;
    return static_cast<int>(sigma_.size());
  }

  double eval(const Vector& x) const override { return amplitude_ * std::exp(-0.5 * quad(x)); }
  double eval_ray(const Vector& theta, double r) const override {
    return amplitude_ * std::exp(-0.5 * r * r * quad(theta));
  }

  std::optional<double> ray_tail(const Vector& theta, double r, double p) const override {
    const double s = 1.0 / std::sqrt(quad(theta));
    const double x = r * r / (2.0 * s * s);
    return amplitude_ * p * std::pow(s, p) * std::pow(2.0, 0.5 * p - 1.0) * boost::math::tgamma(0.5 * p, x);
  }

  bool even() const override { return true; }
  bool log_concave() const override { return true; }

  SupBound sup_on(const StarBody&) const override {
    return {amplitude_, true, "radially decreasing, attained at the origin"};
  }

  nlohmann::json spec() const override {
    nlohmann::json j = {{"kind", "gaussian"}};
    if (isotropic_) {
      j["sigma"] = sigma_[0];
    } else {
      j["sigma"] = vector_json(sigma_);
    }
    if (amplitude_ != 1.0) j["amplitude"] = amplitude_;
    return j;
  }

  bool isotropic() const { return isotropic_; }
  double sigma0() const { return sigma_[0]; }
  double amplitude() const { return amplitude_; }

 private:
  double quad(const Vector& x) const {
    if (isotropic_) return x.squaredNorm() * inv_var_[0];
    if (x.size() != sigma_.size()) throw DomainError("gaussian: dimension mismatch");
    return x.cwiseAbs2().dot(inv_var_);
  }

  Vector sigma_;
  Vector inv_var_;
  bool isotropic_;
  double amplitude_;
};

class RadialExpImpl final : public DensityImpl {
 public:
  explicit RadialExpImpl(double rate) : rate_(rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) throw SpecError("radial_exp: rate must be positive");
  }
  double eval(const Vector& x) const override { return std::exp(-rate_ * x.norm()); }
  double eval_ray(const Vector& theta, double r) const override { return std::exp(-rate_ * r * theta.norm()); }
  std::optional<double> ray_tail(const Vector& theta, double r, double p) const override {
    const double a = rate_ * theta.norm();
    return p * std::pow(a, -p) * boost::math::tgamma(p, a * r);
  }
  bool even() const override { return true; }
  bool log_concave() const override { return true; }
  SupBound sup_on(const StarBody&) const override {
    return {1.0, true, "radially decreasing, attained at the origin"};
  }
  nlohmann::json spec() const override { return {{"kind", "radial_exp"}, {"rate", rate_}}; }
  double rate() const { return rate_; }

 private:
  double rate_;
};

class BallIndicatorImpl final : public DensityImpl {
 public:
  explicit BallIndicatorImpl(double radius) : radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) throw SpecError("ball_indicator: radius must be positive");
  }
  double eval(const Vector& x) const override { return x.norm() <= radius_ ? 1.0 : 0.0; }
  double eval_ray(const Vector& theta, double r) const override { return r * theta.norm() <= radius_ ? 1.0 : 0.0; }
  double ray_support(const Vector& theta) const override { return radius_ / theta.norm(); }
  std::optional<double> radial_moment(const Vector& theta, double rho, int m) const override {
    return std::pow(std::min(rho, ray_support(theta)), m) / m;
  }
  bool even() const override { return true; }
  bool log_concave() const override { return true; }
  SupBound sup_on(const StarBody&) const override { return {1.0, true, "indicator containing the origin"}; }
  nlohmann::json spec() const override { return {{"kind", "ball_indicator"}, {"radius", radius_}}; }
  double radius() const { return radius_; }

 private:
  double radius_;
};

class TranslateDensityImpl final : public DensityImpl {
 public:
  TranslateDensityImpl(DensityOracle base, Vector shift) : base_(std::move(base)), shift_(std::move(shift)) {
    if (base_.dim() && *base_.dim() != shift_.size()) throw SpecError("translate: shift dimension mismatch");
  }
  std::optional<int> dim() const override { return static_cast<int>(shift_.size()); }
  double eval(const Vector& x) const override { return base_.eval(x - shift_); }
  bool even() const override { return shift_.isZero(0.0) && base_.even(); }
  bool log_concave() const override { return base_.log_concave(); }
  SupBound sup_on(const StarBody& body) const override {
    if (base_.even() && base_.log_concave()) {
      const double top = base_.value_at_origin();
      if (body.contains(shift_)) return {top, true, "peak of the translated density lies in the body"};
      return {top, false, "global peak of the translated density"};
    }
    return probe_sup(*this, body);
  }
  nlohmann::json spec() const override {
    return {{"kind", "translate"}, {"shift", vector_json(shift_)}, {"base", base_.spec()}};
  }

 private:
  DensityOracle base_;
  Vector shift_;
};

class CustomImpl final : public DensityImpl {
 public:
  CustomImpl(std::string name, std::function<double(const Vector&)> fn, bool even, bool log_concave,
             std::optional<int> dim)
      : name_(std::move(name)), fn_(std::move(fn)), even_(even), log_concave_(log_concave), dim_(dim) {
    if (!fn_) throw SpecError("custom density: empty function");
  }
  std::optional<int> dim() const override { return dim_; }
  double eval(const Vector& x) const override { return fn_(x); }
  bool even() const override { return even_; }
  bool log_concave() const override { return log_concave_; }
  SupBound sup_on(const StarBody& body) const override { return probe_sup(*this, body); }
  nlohmann::json spec() const override { return {{"kind", "custom"}, {"name", name_}}; }

 private:
  std::string name_;
  std::function<double(const Vector&)> fn_;
  bool even_;
  bool log_concave_;
  std::optional<int> dim_;
};

class RestrictedImpl final : public DensityImpl {
 public:
  RestrictedImpl(DensityOracle base, Frame frame) : base_(std::move(base)), frame_(std::move(frame)) {}
  std::optional<int> dim() const override { return frame_.dim(); }
  double eval(const Vector& u) const override { return base_.eval(frame_.basis() * u); }
  double eval_ray(const Vector& theta, double r) const override {
    return base_.eval_ray(frame_.basis() * theta, r);
  }
  double ray_support(const Vector& theta) const override {
    return base_.impl().ray_support(frame_.basis() * theta);
  }
  bool even() const override { return base_.even(); }
  bool log_concave() const override { return base_.log_concave(); }
  SupBound sup_on(const StarBody& body) const override {
    if (base_.even() && base_.log_concave()) {
      return {value_origin(), true, "even log-concave trace, attained at the origin"};
    }
    return probe_sup(*this, body);
  }
  nlohmann::json spec() const override {
    nlohmann::json basis = nlohmann::json::array();
    for (Eigen::Index i = 0; i < frame_.basis().rows(); ++i) basis.push_back(vector_json(frame_.basis().row(i)));
    return {{"kind", "restricted"}, {"basis", basis}, {"base", base_.spec()}};
  }

 private:
  double value_origin() const { return base_.eval(Vector::Zero(frame_.ambient_dim())); }

  DensityOracle base_;
  Frame frame_;
};

double length_scale(const DensityImpl& g) {
  if (auto* gs = dynamic_cast<const GaussianImpl*>(&g)) return gs->sigma0();
  if (auto* re = dynamic_cast<const RadialExpImpl*>(&g)) return 1.0 / re->rate();
  if (auto* bi = dynamic_cast<const BallIndicatorImpl*>(&g)) return bi->radius();
  return 1.0;
}

// Adaptive GK15 on [a, b] to relative kQuadratureTol of the L1 norm.
template <class F>
double gk15(F&& f, double a, double b, const Vector& theta) {
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, kQuadratureDepth, kQuadratureTol, &err, &l1);
  if (!std::isfinite(v) || err > kQuadratureTol * l1 + std::numeric_limits<double>::min()) {
    throw QuadratureError("radial quadrature did not converge on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "] (error " + std::to_string(err) + ")",
                          to_std(theta));
  }
  return v;
}

class KpBodyImpl final : public BodyImpl {
 public:
  KpBodyImpl(DensityOracle g, double p, int n) : g_(std::move(g)), p_(p), n_(n) {
    g0_ = g_.value_at_origin();
  }

  int dim() const override { return n_; }

  double radial(const Vector& d) const override {
    const double norm = d.norm();
    return unit_radial(d / norm) / norm;
  }

  double ray_exit(const Vector& o, const Vector& d) const override {
    if (o.isZero(0.0)) return radial(d);
    return ray_exit_by_bisection(o, d);
  }

  bool contains(const Vector& x) const override {
    const double norm = x.norm();
    if (norm == 0.0) return true;
    return norm <= unit_radial(x / norm);
  }

  bool symmetric() const override { return g_.even(); }
  bool convex() const override { return g_.log_concave(); }

  nlohmann::json spec() const override {
    return {{"kind", "kp_body"}, {"p", p_}, {"dim", n_}, {"density", g_.spec()}};
  }

 private:
  double unit_radial(const Vector& theta) const {
    const auto integrand = [&](double r) { return p_ * std::pow(r, p_ - 1.0) * g_.eval_ray(theta, r); };
    const double support = g_.impl().ray_support(theta);
    double total = 0.0;
    if (std::isfinite(support)) {
      total = gk15(integrand, 0.0, support, theta);
    } else {
      double lo = 0.0;
      double hi = length_scale(g_.impl());
      int quiet = 0;
      for (int seg = 0;; ++seg) {
        if (seg > 80) throw DivergentIntegral("kp_body: ray integral does not converge");
        const double piece = gk15(integrand, lo, hi, theta);
        total += piece;
        if (!std::isfinite(total)) throw DivergentIntegral("kp_body: ray integral overflows");
        if (const auto tail = g_.impl().ray_tail(theta, hi, p_)) {
          if (*tail < 1e-12 * total) break;
        } else {
          quiet = piece < 1e-13 * total ? quiet + 1 : 0;
          if (quiet >= 2) break;
        }
        lo = hi;
        hi *= 2.0;
      }
    }
    return std::pow(total / g0_, 1.0 / p_);
  }

  DensityOracle g_;
  double p_;
  int n_;
  double g0_ = 1.0;
};

}  // namespace

double DensityImpl::ray_support(const Vector&) const { return kInf; }

DensityOracle::DensityOracle(std::shared_ptr<const DensityImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw DomainError("DensityOracle: null implementation");
}

double DensityOracle::value_at_origin() const { return impl_->eval(Vector::Zero(impl_->dim().value_or(1))); }

SupBound DensityOracle::sup_on(const StarBody& body) const {
  check_dim(body.dim());
  return impl_->sup_on(body);
}

void DensityOracle::check_dim(int n) const {
  if (const auto d = impl_->dim(); d && *d != n) {
    throw DomainError("density lives in R^" + std::to_string(*d) + " but the body in R^" + std::to_string(n));
  }
}

DensityOracle lebesgue() { return DensityOracle(std::make_shared<LebesgueImpl>()); }

DensityOracle gaussian(double sigma) {
  return DensityOracle(std::make_shared<GaussianImpl>(Vector::Constant(1, sigma), true, 1.0));
}

DensityOracle gaussian(const Vector& sigma) {
  if (sigma.size() < 1) throw SpecError("gaussian: empty sigma");
  return DensityOracle(std::make_shared<GaussianImpl>(sigma, false, 1.0));
}

DensityOracle scaled_gaussian(double sigma, double amplitude) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw SpecError("gaussian: amplitude must be positive");
  return DensityOracle(std::make_shared<GaussianImpl>(Vector::Constant(1, sigma), true, amplitude));
}

DensityOracle radial_exp(double rate) { return DensityOracle(std::make_shared<RadialExpImpl>(rate)); }

DensityOracle ball_indicator(double radius) { return DensityOracle(std::make_shared<BallIndicatorImpl>(radius)); }

DensityOracle translate(const DensityOracle& base, const Vector& shift) {
  return DensityOracle(std::make_shared<TranslateDensityImpl>(base, shift));
}

DensityOracle custom_density(std::string name, std::function<double(const Vector&)> fn, bool even,
                             bool log_concave, std::optional<int> dim) {
  return DensityOracle(std::make_shared<CustomImpl>(std::move(name), std::move(fn), even, log_concave, dim));
}

DensityOracle restrict(const DensityOracle& g, const Frame& frame) {
  g.check_dim(frame.ambient_dim());
  const DensityImpl& impl = g.impl();
  if (g.is_lebesgue()) return g;
  if (auto* gs = dynamic_cast<const GaussianImpl*>(&impl); gs && gs->isotropic()) return g;
  if (dynamic_cast<const RadialExpImpl*>(&impl) || dynamic_cast<const BallIndicatorImpl*>(&impl)) return g;
  return DensityOracle(std::make_shared<RestrictedImpl>(g, frame));
}

DensityOracle gaussian_marginal(const DensityOracle& g, const Frame& frame) {
  auto* gs = dynamic_cast<const GaussianImpl*>(&g.impl());
  if (!gs || !gs->isotropic()) throw DomainError("gaussian_marginal: only isotropic Gaussians have closed-form marginals");
  const double sigma = gs->sigma0();
  const int codim = frame.ambient_dim() - frame.dim();
  const double amplitude = gs->amplitude() * std::pow(2.0 * M_PI * sigma * sigma, 0.5 * codim);
  return DensityOracle(std::make_shared<GaussianImpl>(Vector::Constant(1, sigma), true, amplitude));
}

double radial_integral(const DensityOracle& g, const Vector& theta, double upper, int m) {
  if (const auto closed = g.impl().radial_moment(theta, upper, m)) return *closed;
  const double top = std::min(upper, g.impl().ray_support(theta));
  if (!(top > 0.0)) return 0.0;
  return gk15([&](double r) { return std::pow(r, m - 1) * g.eval_ray(theta, r); }, 0.0, top, theta);
}

Estimate measure_of_body(const DensityOracle& g, const StarBody& body, int sphere_samples, StreamHandle stream) {
  const int n = body.dim();
  g.check_dim(n);
  if (sphere_samples < 100) throw DomainError("measure_of_body: need at least 100 sphere samples");
  if (g.is_lebesgue()) {
    if (auto v = body.exact_volume()) return Estimate::exact(*v, "exact volume");
    return volume(body, sphere_samples, stream);
  }
  if (n == 1) {
    double total = 0.0;
    for (double sign : {1.0, -1.0}) {
      Vector theta = Vector::Constant(1, sign);
      total += radial_integral(g, theta, body.radial(theta), 1);
    }
    return Estimate::exact(total, "S^0 enumerated, adaptive GK15");
  }
  const double scale = n * std::exp(constants::log_ball_volume(n).log_value);
  const auto values = parallel_map(static_cast<std::size_t>(sphere_samples), [&](std::size_t i) {
    CounterRng rng(stream.child(i));
    const Vector theta = random_direction(n, rng);
    return scale * radial_integral(g, theta, body.radial(theta), n);
  });
  Estimate e = mean_of(values);
  e.rule = "n w_n * mean of radial GK15 integrals; " + e.rule;
  return e;
}

Estimate measure_of_section(const DensityOracle& g, const StarBody& body, const Frame& frame, int sphere_samples,
                            StreamHandle stream) {
  if (frame.ambient_dim() != body.dim()) throw DomainError("measure_of_section: frame dimension mismatch");
  return measure_of_body(restrict(g, frame), section(body, frame), sphere_samples, stream);
}

Frame haar_frame(int n, int s, StreamHandle stream, std::size_t index) {
  CounterRng rng(stream.child(streams::kFrames).child(index));
  return sample_haar(n, s, rng);
}

SectionScan scan_sections(const DensityOracle& g, const StarBody& body, int k, int frames, int sphere_samples,
                          StreamHandle stream) {
  const int n = body.dim();
  if (k < 1 || k > n - 1) throw DomainError("scan_sections: need 1 <= k <= n-1");
  if (frames < 1) throw DomainError("scan_sections: need frames >= 1");
  g.check_dim(n);
  SectionScan scan;
  scan.frames.reserve(frames);
  for (int f = 0; f < frames; ++f) scan.frames.push_back(haar_frame(n, n - k, stream, f));
  const StreamHandle sections = stream.child(streams::kSections);
  scan.measures = parallel_map(static_cast<std::size_t>(frames), [&](std::size_t f) {
    return measure_of_section(g, body, scan.frames[f], sphere_samples, sections.child(f));
  });
  for (std::size_t f = 1; f < scan.measures.size(); ++f) {
    if (scan.measures[f].value > scan.measures[scan.argmax].value) scan.argmax = f;
  }
  return scan;
}

MaxSection max_section_measure(const DensityOracle& g, const StarBody& body, int k, int frames, int sphere_samples,
                               StreamHandle stream) {
  SectionScan scan = scan_sections(g, body, k, frames, sphere_samples, stream);
  Estimate best = scan.max();
  best.rule = "max over " + std::to_string(frames) + " sampled frames (lower bound); " + best.rule;
  return {best, scan.frames[scan.argmax]};
}

StarBody kp_body(const DensityOracle& g, double p, int n) {
  if (!(p > 0.0)) throw DomainError("kp_body: p must be positive");
  if (n < 1) throw DomainError("kp_body: dimension must be >= 1");
  g.check_dim(n);
  if (g.is_lebesgue()) throw DivergentIntegral("kp_body: Lebesgue density is not integrable along rays");
  if (!(g.value_at_origin() > 0.0)) throw DomainError("kp_body: density must be positive at the origin");
  return StarBody(std::make_shared<KpBodyImpl>(g, p, n));
}

}  // namespace sectlab
