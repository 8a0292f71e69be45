#include "sectlab/functionals.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "sectlab/constants.hpp"
#include "sectlab/errors.hpp"
#include "sectlab/parallel.hpp"
#include "sectlab/sampler.hpp"

namespace sectlab {

namespace {

constexpr int kJackknifeGroups = 20;
constexpr int kMeasureSamples = 20000;

// Draws i.i.d. points from a PointSource; safe to share across threads.
class Drawer {
 public:
  explicit Drawer(const PointSource& source) : body_(source.body) {
    if (source.density && !source.density->is_lebesgue()) {
      sampler_ = std::make_unique<RestrictedSampler>(*source.density, source.body);
    }
  }

  Vector operator()(CounterRng& rng) const { return sampler_ ? sampler_->draw(rng) : uniform_in_body(body_, rng); }

  const RestrictedSampler* sampler() const { return sampler_.get(); }

 private:
  StarBody body_;
  std::unique_ptr<RestrictedSampler> sampler_;
};

Matrix draw_points(const PointSource& source, int count, StreamHandle stream) {
  const Drawer drawer(source);
  const auto points = parallel_map(static_cast<std::size_t>(count), [&](std::size_t i) {
    CounterRng rng(stream.child(i));
    return drawer(rng);
  });
  Matrix out(count, source.dim());
  for (int i = 0; i < count; ++i) out.row(i) = points[i].transpose();
  return out;
}

double det_without_group(const Matrix& points, int group, int groups) {
  const Eigen::Index n = points.rows();
  const Eigen::Index lo = n * group / groups;
  const Eigen::Index hi = n * (group + 1) / groups;
  Matrix kept(n - (hi - lo), points.cols());
  kept << points.topRows(lo), points.bottomRows(n - hi);
  return covariance(kept).matrix.determinant();
}

struct LogDetCov {
  Covariance cov;
  Estimate log_det;
};

// log det of the sample covariance with a delete-a-group jackknife error.
LogDetCov log_det_covariance(const Matrix& points) {
  LogDetCov out{covariance(points), {}};
  const double full = out.cov.matrix.determinant();
  if (!(full > 0.0)) throw DegenerateBody("sample covariance is singular");
  const auto jk = group_jackknife(kJackknifeGroups, full, [&](int g) { return det_without_group(points, g, kJackknifeGroups); });
  out.log_det = Estimate{std::log(full), jk.std_error / full, static_cast<std::int64_t>(points.rows()), true,
                         "delete-a-group jackknife (20 groups) of det Cov, delta: log"};
  return out;
}

// Largest |mean_j| / (sd_j / sqrt(N)) over coordinates.
double centering_z(const Covariance& c) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < c.mean.size(); ++j) {
    const double se = std::sqrt(c.matrix(j, j) / static_cast<double>(c.count));
    if (se > 0.0) worst = std::max(worst, std::abs(c.mean[j]) / se);
  }
  return worst;
}

Estimate negate_log(const Estimate& e) { return log_affine(e, -1.0, 0.0, "reciprocal"); }

double log_factorial(int m) { return constants::log_gamma(m + 1.0); }

}  // namespace

PointSource PointSource::uniform(StarBody body) { return {std::move(body), std::nullopt, Normalization::kBodyVolume}; }

PointSource PointSource::uniform_probability(StarBody body) {
  return {std::move(body), std::nullopt, Normalization::kProbability};
}

PointSource PointSource::restricted(DensityOracle g, StarBody body) {
  g.check_dim(body.dim());
  return {std::move(body), std::move(g), Normalization::kProbability};
}

nlohmann::json PointSource::spec() const {
  nlohmann::json j = {{"body", body.spec()}};
  if (density) j["measure"] = density->spec();
  j["normalization"] = normalization == Normalization::kBodyVolume ? "body_volume" : "probability";
  return j;
}

Estimate log_simplex_moment(const PointSource& source, double p, int trials, StreamHandle stream) {
  if (trials < 100) throw DomainError("sylvester: need at least 100 trials");
  if (!(p > 0.0)) throw DomainError("sylvester: p must be positive");
  const int m = source.dim();
  const Drawer drawer(source);
  const auto logs = parallel_map(static_cast<std::size_t>(trials), [&](std::size_t i) {
    CounterRng rng(stream.child(i));
    Matrix pts(m, m);
    for (int j = 0; j < m; ++j) pts.col(j) = drawer(rng);
    return p * std::log(simplex_volume(pts));
  });
  Estimate e = log_mean_exp(logs);
  e.rule = "mean of |conv|^p over " + std::to_string(trials) + " trials; " + e.rule;
  return e;
}

Estimate sylvester(const PointSource& source, int m, double p, int trials, StreamHandle stream, int volume_samples) {
  if (m != source.dim()) throw DomainError("sylvester: source dimension must equal m");
  const Estimate moment = log_simplex_moment(source, p, trials, stream.child(streams::kPoints));
  Estimate log_s = log_affine(moment, 1.0 / p, 0.0, "x^(1/p)");
  if (source.normalization == PointSource::Normalization::kBodyVolume) {
    const Estimate lv = log_volume(source.body, volume_samples, stream.child(streams::kVolume));
    log_s = log_product(log_s, negate_log(lv));
    log_s.rule = "S_p(D): root of the simplex moment over |D|; errors in quadrature";
  }
  return to_linear(log_s);
}

CheckReport blaschke_check(const PointSource& source, int trials, StreamHandle stream) {
  const int m = source.dim();
  PointSource prob = source;
  prob.normalization = PointSource::Normalization::kProbability;

  const Matrix pts = draw_points(prob, trials, stream.child(streams::kCovariance));
  const LogDetCov dc = log_det_covariance(pts);
  const double z = centering_z(dc.cov);
  if (z > kSigmas) {
    throw DomainError("blaschke_check: source is not centered (mean at " + std::to_string(z) +
                      " standard errors)");
  }

  CheckReport r;
  r.check_name = "blaschke";
  r.n = m;
  r.k = 0;
  const Estimate s2 = log_simplex_moment(prob, 2.0, trials, stream.child(streams::kPoints));
  r.lhs = log_affine(s2, 1.0, log_factorial(m), "m! * S_2^2");
  r.rhs = dc.log_det;
  r.inputs = prob.spec();
  r.extra["centering_z"] = z;
  judge_equal(r, EqualOptions{false, kEqualGap});
  return r;
}

IsotropicConstant isotropic_constant(const PointSource& source, int samples, StreamHandle stream) {
  const int n = source.dim();
  if (samples < 10 * (n + 1)) throw DomainError("isotropic_constant: too few samples");
  const Matrix pts = draw_points(source, samples, stream.child(streams::kPoints));
  const LogDetCov dc = log_det_covariance(pts);

  IsotropicConstant out;
  out.shift = dc.cov.mean;
  out.recentered = centering_z(dc.cov) > kSigmas;

  Estimate log_sup = Estimate::exact_log(0.0, "uniform density");
  Estimate log_mass;
  if (source.density && !source.density->is_lebesgue()) {
    const SupBound sup = source.density->sup_on(source.body);
    log_sup = Estimate::exact_log(std::log(sup.value), sup.rule);
    out.sup_rule = sup.rule;
    log_mass = to_log(measure_of_body(*source.density, source.body, kMeasureSamples, stream.child(streams::kMeasure)));
  } else {
    out.sup_rule = "uniform density";
    log_mass = log_volume(source.body, kMeasureSamples, stream.child(streams::kVolume));
  }
  const Estimate ratio = log_product(log_sup, negate_log(log_mass));
  const Estimate part1 = log_affine(ratio, 1.0 / n, 0.0, "x^(1/n)");
  const Estimate part2 = log_affine(dc.log_det, 0.5 / n, 0.0, "x^(1/(2n))");
  Estimate l = log_product(part1, part2);
  l.rule = "(sup f / int f)^(1/n) det(Cov)^(1/(2n)); errors in quadrature";
  out.value = to_linear(l);
  return out;
}

Isotropized isotropize(const StarBody& body, int samples, StreamHandle stream) {
  const int n = body.dim();
  if (!body.convex()) throw DomainError("isotropize: body must be convex");
  if (samples < 10 * (n + 1)) throw DomainError("isotropize: too few samples");
  const PointSource src = PointSource::uniform(body);
  const Covariance cov = covariance(draw_points(src, samples, stream.child(streams::kPoints)));

  Eigen::SelfAdjointEigenSolver<Matrix> eig(cov.matrix);
  const Vector lambda = eig.eigenvalues();
  Isotropized out{body, Matrix::Identity(n, n), Vector::Zero(n), {}, 0.0, 1.0};
  out.condition = lambda.maxCoeff() / lambda.minCoeff();
  if (!(lambda.minCoeff() > 0.0) || out.condition > 1e8) {
    throw DegenerateBody("covariance condition number " + std::to_string(out.condition) + " exceeds 1e8");
  }

  StarBody centered = body;
  if (centering_z(cov) > kSigmas) {
    out.shift = cov.mean;
    centered = recenter(body, cov.mean);
  }
  const Matrix whiten = eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
  const Estimate lv = log_volume(centered, samples, stream.child(streams::kVolume));
  const double log_det_whiten = -0.5 * lambda.array().log().sum();
  const double scale = std::exp(-(lv.value + log_det_whiten) / n);
  out.transform = scale * whiten;
  out.body = linear_image(centered, out.transform);

  const Matrix check_pts = draw_points(PointSource::uniform(out.body), samples, stream.child(streams::kCovariance));
  const LogDetCov dc = log_det_covariance(check_pts);
  const Matrix& c = dc.cov.matrix;
  const double diag = c.diagonal().mean();
  double off = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) off = std::max(off, std::abs(c(i, j)));
    }
  }
  out.off_diagonal_ratio = off / diag;
  Estimate l = log_affine(dc.log_det, 0.5 / n, 0.0, "x^(1/(2n))");
  l.rule = "det(Cov)^(1/(2n)) of the volume-1 output; " + l.rule;
  out.constant = to_linear(l);
  return out;
}

namespace detail {

Estimate log_volume_of(const StarBody& body, int samples, StreamHandle stream) {
  return log_volume(body, samples, stream);
}

Estimate log_mean_power(const SectionScan& scan, double power) {
  std::vector<double> logs(scan.measures.size());
  for (std::size_t f = 0; f < logs.size(); ++f) logs[f] = power * std::log(scan.measures[f].value);
  Estimate e = log_mean_exp(logs);
  e.rule = "mean over " + std::to_string(logs.size()) + " Haar frames of section^" + std::to_string(power) +
           "; " + e.rule;
  return e;
}

Estimate log_dual_quermass(const SectionScan& scan, int n, int k, const Estimate& log_vol) {
  const Estimate e = log_mean_power(scan, n);
  const Estimate scaled = log_product(e, log_affine(log_vol, -(n - k), 0.0, "|K|^-(n-k)"));
  Estimate out = log_affine(scaled, 1.0 / (k * n), 0.0, "x^(1/(kn))");
  out.rule = "Phi~: (E_F |K cap F|^n / |K|^(n-k))^(1/(kn)); " + e.rule;
  return out;
}

Estimate log_w_tilde(const SectionScan& scan, int n, int k, const Estimate& log_vol) {
  const Estimate e = log_mean_power(scan, 1.0);
  const Estimate scaled = log_product(e, log_affine(log_vol, -static_cast<double>(n - k) / n, 0.0, "|K|^-(n-k)/n"));
  Estimate out = log_affine(scaled, 1.0 / k, 0.0, "x^(1/k)");
  out.rule = "W~: (E_F |Kbar cap F|)^(1/k); " + e.rule;
  return out;
}

Estimate log_i_minus_k(const StarBody& body, int k, int samples, StreamHandle stream, const Estimate& log_vol) {
  const int n = body.dim();
  if (k < 1 || k > n - 1) throw DomainError("i_minus_k: need 1 <= k <= n-1");
  if (samples < 100) throw DomainError("i_minus_k: need at least 100 samples");
  const auto logs = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    CounterRng rng(stream.child(i));
    return (n - k) * std::log(body.radial(random_direction(n, rng)));
  });
  const Estimate e = log_mean_exp(logs);
  const double c = std::log(n) + constants::log_ball_volume(n).log_value - std::log(n - k);
  const Estimate integral = log_product(log_affine(e, 1.0, c, "n w_n/(n-k) E rho^(n-k)"),
                                        log_affine(log_vol, -static_cast<double>(n - k) / n, 0.0, "|K|^-(n-k)/n"));
  Estimate out = log_affine(integral, -1.0 / k, 0.0, "x^(-1/k)");
  out.rule = "I_{-k}: polar form over " + std::to_string(samples) + " directions; " + e.rule;
  return out;
}

}  // namespace detail

Estimate dual_affine_quermass(const StarBody& body, int k, int frames, int sphere_samples, StreamHandle stream,
                              int volume_samples) {
  const Estimate lv = log_volume(body, volume_samples, stream.child(streams::kVolume));
  const SectionScan scan = scan_sections(lebesgue(), body, k, frames, sphere_samples, stream);
  return to_linear(detail::log_dual_quermass(scan, body.dim(), k, lv));
}

Estimate w_tilde(const StarBody& body, int k, int frames, int sphere_samples, StreamHandle stream, int volume_samples) {
  const Estimate lv = log_volume(body, volume_samples, stream.child(streams::kVolume));
  const SectionScan scan = scan_sections(lebesgue(), body, k, frames, sphere_samples, stream);
  return to_linear(detail::log_w_tilde(scan, body.dim(), k, lv));
}

Estimate i_minus_k(const StarBody& body, int k, int samples, StreamHandle stream, int volume_samples) {
  const Estimate lv = log_volume(body, volume_samples, stream.child(streams::kVolume));
  return to_linear(detail::log_i_minus_k(body, k, samples, stream.child(streams::kPoints), lv));
}

Estimate volume_radius(const StarBody& body, int samples, StreamHandle stream) {
  const int n = body.dim();
  if (n == 1) {
    const Vector plus = Vector::Constant(1, 1.0);
    return Estimate::exact(0.5 * (body.radial(plus) + body.radial(-plus)), "S^0 enumerated");
  }
  if (samples < 100) throw DomainError("volume_radius: need at least 100 samples");
  const auto logs = parallel_map(static_cast<std::size_t>(samples), [&](std::size_t i) {
    CounterRng rng(stream.child(i));
    return n * std::log(body.radial(random_direction(n, rng)));
  });
  Estimate e = log_affine(log_mean_exp(logs), 1.0 / n, 0.0, "x^(1/n)");
  e.rule = "(E rho^n)^(1/n); " + e.rule;
  return to_linear(e);
}

}  // namespace sectlab
