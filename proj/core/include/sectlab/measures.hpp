#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sectlab/bodies.hpp"
#include "sectlab/grassmann.hpp"
#include "sectlab/linalg.hpp"
#include "sectlab/rng.hpp"
#include "sectlab/stats.hpp"

namespace sectlab {

/// Upper bound for sup g on a body. `exact` is set when the bound is the
/// supremum itself; `rule` says how it was obtained.
struct SupBound {
  double value = 0.0;
  bool exact = false;
  std::string rule;
};

class DensityImpl {
 public:
  virtual ~DensityImpl() = default;

  /// Required ambient dimension, or nullopt for kinds defined in every R^n.
  virtual std::optional<int> dim() const { return std::nullopt; }
  virtual double eval(const Vector& x) const = 0;
  /// g(r * theta); overridden where a cheaper form exists.
  virtual double eval_ray(const Vector& theta, double r) const { return eval(r * theta); }
  /// Distance along theta past which g vanishes (infinity if never).
  virtual double ray_support(const Vector& /*theta*/) const;
  /// Upper bound of int_R^inf p r^{p-1} g(r theta) dr, when known in closed form.
  virtual std::optional<double> ray_tail(const Vector& /*theta*/, double /*r*/, double /*p*/) const {
    return std::nullopt;
  }
  /// int_0^rho r^{m-1} g(r theta) dr in closed form, when the kind has one
  /// that needs no quadrature (constant pieces only).
  virtual std::optional<double> radial_moment(const Vector& /*theta*/, double /*rho*/, int /*m*/) const {
    return std::nullopt;
  }
  virtual bool even() const = 0;
  virtual bool log_concave() const = 0;
  virtual bool is_lebesgue() const { return false; }
  virtual SupBound sup_on(const StarBody& body) const = 0;
  virtual nlohmann::json spec() const = 0;
};

/// Density g of a measure mu(B) = int_B g. Immutable, cheaply copyable.
class DensityOracle {
 public:
  explicit DensityOracle(std::shared_ptr<const DensityImpl> impl);

  std::optional<int> dim() const { return impl_->dim(); }
  double eval(const Vector& x) const { return impl_->eval(x); }
  double eval_ray(const Vector& theta, double r) const { return impl_->eval_ray(theta, r); }
  bool even() const { return impl_->even(); }
  bool log_concave() const { return impl_->log_concave(); }
  bool is_lebesgue() const { return impl_->is_lebesgue(); }
  double value_at_origin() const;
  SupBound sup_on(const StarBody& body) const;
  nlohmann::json spec() const { return impl_->spec(); }
  const DensityImpl& impl() const { return *impl_; }

  /// Throws DomainError unless the density lives in R^n.
  void check_dim(int n) const;

 private:
  std::shared_ptr<const DensityImpl> impl_;
};

DensityOracle lebesgue();
/// exp(-sum x_i^2 / (2 sigma_i^2)); unnormalized, g(0) = 1.
DensityOracle gaussian(double sigma = 1.0);
DensityOracle gaussian(const Vector& sigma);
/// amplitude * exp(-|x|^2 / (2 sigma^2)).
DensityOracle scaled_gaussian(double sigma, double amplitude);
/// exp(-rate * ||x||_2).
DensityOracle radial_exp(double rate = 1.0);
/// Indicator of the Euclidean ball of the given radius.
DensityOracle ball_indicator(double radius = 1.0);
/// x -> base(x - shift).
DensityOracle translate(const DensityOracle& base, const Vector& shift);
/// User-supplied density. Its sup on a body is probed on uniform points
/// and inflated by 1.05.
DensityOracle custom_density(std::string name, std::function<double(const Vector&)> fn, bool even,
                             bool log_concave, std::optional<int> dim = std::nullopt);
/// u -> g(basis * u), the trace of g on the subspace of a frame.
DensityOracle restrict(const DensityOracle& g, const Frame& frame);

/// Gaussian marginal on a frame: for g = exp(-|x|^2/(2 sigma^2)) the
/// marginal density of the projection onto F, up to the normalization of g.
/// Only isotropic Gaussians are supported.
DensityOracle gaussian_marginal(const DensityOracle& g, const Frame& frame);

// ---- operations ------------------------------------------------------------

/// mu(K) = n w_n E_theta[ int_0^rho(theta) r^{n-1} g(r theta) dr ] with the
/// inner integral by adaptive Gauss-Kronrod and the outer by Monte Carlo.
Estimate measure_of_body(const DensityOracle& g, const StarBody& body, int sphere_samples,
                         StreamHandle stream);

/// mu(K cap F) with s-dimensional Lebesgue measure on F.
Estimate measure_of_section(const DensityOracle& g, const StarBody& body, const Frame& frame,
                            int sphere_samples, StreamHandle stream);

/// Section measures over Haar frames of dimension n - k. Frame f comes from
/// stream.child(kFrames).child(f), so two scans on one handle share frames.
struct SectionScan {
  std::vector<Frame> frames;
  std::vector<Estimate> measures;
  std::size_t argmax = 0;

  const Estimate& max() const { return measures.at(argmax); }
};

SectionScan scan_sections(const DensityOracle& g, const StarBody& body, int k, int frames,
                          int sphere_samples, StreamHandle stream);

Frame haar_frame(int n, int s, StreamHandle stream, std::size_t index);

struct MaxSection {
  Estimate value;  // a lower bound on the true maximum
  Frame argmax;
};

MaxSection max_section_measure(const DensityOracle& g, const StarBody& body, int k, int frames,
                               int sphere_samples, StreamHandle stream);

/// Star body in R^n with
/// rho(theta) = ((1/g(0)) int_0^inf p r^{p-1} g(r theta) dr)^{1/p},
/// evaluated on demand. The ray integral runs over doubling segments until
/// the closed-form tail bound (or, lacking one, two consecutive segments)
/// falls below 1e-12 of the accumulated value.
StarBody kp_body(const DensityOracle& g, double p, int n);

/// int_0^upper r^{m-1} g(r theta) dr; throws QuadratureError carrying theta
/// when the relative tolerance cannot be met.
double radial_integral(const DensityOracle& g, const Vector& theta, double upper, int m);

}  // namespace sectlab
