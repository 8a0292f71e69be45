#pragma once

#include <optional>
#include <string>

#include "sectlab/bodies.hpp"
#include "sectlab/measures.hpp"
#include "sectlab/report.hpp"
#include "sectlab/rng.hpp"
#include "sectlab/stats.hpp"

namespace sectlab {

/// Where random points come from: uniform on a body, or the probability
/// measure with density proportional to g on the body.
///
/// kBodyVolume divides the simplex moment by |D| (the body functional
/// S_p(D)); kProbability leaves it as the measure functional S_p(nu).
struct PointSource {
  enum class Normalization { kBodyVolume, kProbability };

  StarBody body;
  std::optional<DensityOracle> density;
  Normalization normalization = Normalization::kBodyVolume;

  static PointSource uniform(StarBody body);
  static PointSource uniform_probability(StarBody body);
  static PointSource restricted(DensityOracle g, StarBody body);

  int dim() const { return body.dim(); }
  nlohmann::json spec() const;
};

/// Sample budgets shared by the functionals and the checks.
struct Budget {
  int frames = 500;
  int sphere_samples = 2000;
  int trials = 20000;
  int volume_samples = 20000;
};

/// log E |conv(0, x_1, ..., x_m)|^p with the x_i i.i.d. from the source
/// (probability normalization). trials >= 100.
Estimate log_simplex_moment(const PointSource& source, double p, int trials, StreamHandle stream);

/// S_p of the source in dimension m; linear-domain estimate, delta-method
/// error through the 1/p root and the volume normalization.
Estimate sylvester(const PointSource& source, int m, double p, int trials, StreamHandle stream,
                   int volume_samples = 20000);

/// m! S_2^2 against det Cov of the source, on independent streams.
CheckReport blaschke_check(const PointSource& source, int trials, StreamHandle stream);

struct IsotropicConstant {
  Estimate value;
  Vector shift;        // empirical center of mass
  bool recentered = false;
  std::string sup_rule;
};

/// L = (sup f / int f)^{1/n} det(Cov)^{1/(2n)} for f = g 1_K (g = 1 for a
/// plain body). det Cov error by delete-a-group jackknife.
IsotropicConstant isotropic_constant(const PointSource& source, int samples, StreamHandle stream);

struct Isotropized {
  StarBody body;
  Matrix transform;  // applied after recentering
  Vector shift;
  Estimate constant;  // L of the output body from its re-estimated covariance
  double off_diagonal_ratio = 0.0;
  double condition = 1.0;
};

/// Volume-1 isotropic image T(K - c) with T proportional to Cov^{-1/2}.
/// Throws DegenerateBody when the covariance condition number exceeds 1e8.
Isotropized isotropize(const StarBody& body, int samples, StreamHandle stream);

/// Phi~_[k] of the volume-1 rescaling of K.
Estimate dual_affine_quermass(const StarBody& body, int k, int frames, int sphere_samples, StreamHandle stream,
                              int volume_samples = 20000);
/// W~_[k] = (E_F |Kbar cap F|)^{1/k}.
Estimate w_tilde(const StarBody& body, int k, int frames, int sphere_samples, StreamHandle stream,
                 int volume_samples = 20000);
/// I_{-k}(Kbar) = (n w_n / (n-k) E_theta rho^{n-k})^{-1/k}, volume-1 rescaling.
Estimate i_minus_k(const StarBody& body, int k, int samples, StreamHandle stream, int volume_samples = 20000);
/// (E_theta rho^n)^{1/n} = (|K| / w_n)^{1/n}.
Estimate volume_radius(const StarBody& body, int samples, StreamHandle stream);

/// Pieces used by the checks, with the body's log-volume passed in so that
/// paired quantities share it. All return log-domain estimates.
namespace detail {
Estimate log_volume_of(const StarBody& body, int samples, StreamHandle stream);
/// log E_F[m_F^power] over the frames of a scan.
Estimate log_mean_power(const SectionScan& scan, double power);
Estimate log_dual_quermass(const SectionScan& scan, int n, int k, const Estimate& log_vol);
Estimate log_w_tilde(const SectionScan& scan, int n, int k, const Estimate& log_vol);
Estimate log_i_minus_k(const StarBody& body, int k, int samples, StreamHandle stream, const Estimate& log_vol);
}  // namespace detail

}  // namespace sectlab
