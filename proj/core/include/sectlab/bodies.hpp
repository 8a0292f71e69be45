#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sectlab/grassmann.hpp"
#include "sectlab/linalg.hpp"
#include "sectlab/rng.hpp"
#include "sectlab/stats.hpp"

namespace sectlab {

/// Implementation interface behind StarBody. A body is a compact set,
/// star-shaped about the origin, with the origin in its interior.
///
/// ray_exit(o, d) = max { t >= 0 : o + t d in K } for o in int(K) and any
/// nonzero d (not necessarily unit). Radial evaluation is ray_exit from the
/// origin; adaptors compose ray_exit, which is why convexity is required
/// for translates (rays from a non-origin point must leave K once).
class BodyImpl {
 public:
  virtual ~BodyImpl() = default;

  virtual int dim() const = 0;
  virtual double ray_exit(const Vector& origin, const Vector& direction) const = 0;
  /// ray_exit from the origin; direction need not be unit here.
  virtual double radial(const Vector& direction) const;
  virtual bool contains(const Vector& x) const = 0;
  virtual bool symmetric() const { return false; }
  virtual bool convex() const { return true; }
  virtual std::optional<double> exact_volume() const { return std::nullopt; }
  /// Exact s-volume of the section by span(basis) when known in closed form.
  virtual std::optional<double> exact_section_volume(const Matrix& /*basis*/) const {
    return std::nullopt;
  }
  virtual nlohmann::json spec() const = 0;

  /// Upper bound on max rho(theta) over unit theta, computed once.
  double outer_radius() const;

 protected:
  /// Exact where the kind allows it; the default takes the largest radial
  /// value on a fixed direction net and inflates it by 25%.
  virtual double compute_outer_radius() const;

  /// Generic ray exit for convex bodies: expands until the ray leaves the
  /// body, then bisects on membership.
  double ray_exit_by_bisection(const Vector& origin, const Vector& direction) const;

 private:
  mutable std::once_flag outer_once_;
  mutable double outer_radius_ = 0.0;
};

/// Immutable, cheaply copyable handle to a body. Adaptors (section,
/// linear_image, translate) wrap the handle without copying the base.
class StarBody {
 public:
  explicit StarBody(std::shared_ptr<const BodyImpl> impl);

  int dim() const { return impl_->dim(); }
  /// rho_K(theta) for a unit vector theta (checked to 1e-12).
  double radial(const Vector& theta) const;
  /// max { t >= 0 : origin + t * direction in K }.
  double ray_exit(const Vector& origin, const Vector& direction) const;
  bool contains(const Vector& x) const { return impl_->contains(x); }
  bool symmetric() const { return impl_->symmetric(); }
  bool convex() const { return impl_->convex(); }
  std::optional<double> exact_volume() const { return impl_->exact_volume(); }
  std::optional<double> exact_section_volume(const Frame& frame) const;
  double outer_radius() const { return impl_->outer_radius(); }
  nlohmann::json spec() const { return impl_->spec(); }

  const BodyImpl& impl() const { return *impl_; }
  const std::shared_ptr<const BodyImpl>& shared_impl() const { return impl_; }

 private:
  std::shared_ptr<const BodyImpl> impl_;
};

// ---- concrete kinds -------------------------------------------------------

/// { x : ||x||_p <= radius }, p in [1, inf]; p = +inf gives a cube.
StarBody lp_ball(int n, double p, double radius = 1.0);
StarBody euclidean_ball(int n, double radius = 1.0);
/// [-half_width, half_width]^n.
StarBody cube(int n, double half_width = 1.0);
/// { x : x^T A^{-1} x <= 1 } for symmetric positive definite A.
StarBody ellipsoid(const Matrix& a);
/// Convex hull of n+1 affinely independent vertices (rows); the origin
/// must be strictly inside.
StarBody simplex(const Matrix& vertices);
/// { x : <a_i, x> <= b_i } with every b_i > 0. Boundedness is probed on a
/// deterministic direction net; unbounded rays found later still throw.
StarBody h_polytope(const Matrix& normals, const Vector& offsets);
/// h_polytope with `facets` uniformly random unit normals and offsets
/// uniform on [0.5, 1.5], generated from `seed`. Redraws until the probe
/// net finds no unbounded direction.
StarBody random_h_polytope(int n, int facets, std::uint64_t seed);

// ---- adaptors --------------------------------------------------------------

/// T(K) for invertible T (reciprocal condition number >= 1e-10).
StarBody linear_image(const StarBody& body, const Matrix& transform);
/// lambda * K for lambda > 0.
StarBody scaled(const StarBody& body, double factor);
/// K + shift. Requires a convex base; the origin must stay interior.
StarBody translate(const StarBody& body, const Vector& shift);
/// K intersected with F, as a body in the coordinates of F.
StarBody section(const StarBody& body, const Frame& frame);

// ---- estimators ------------------------------------------------------------

/// |K| = omega_n E_theta[rho(theta)^n] by Monte Carlo over uniform
/// directions. For n = 1 the two directions are enumerated exactly.
Estimate volume(const StarBody& body, int samples, StreamHandle stream);

/// log |K|: exact when the body knows its volume, else log of volume().
Estimate log_volume(const StarBody& body, int samples, StreamHandle stream);

struct CenterOfMass {
  Vector mean;
  std::vector<Estimate> coordinates;
};

/// Empirical center of mass of `samples` uniform interior points.
CenterOfMass center_of_mass(const StarBody& body, int samples, StreamHandle stream);

/// translate(body, -center); throws OriginNotInterior if the point is not
/// interior.
StarBody recenter(const StarBody& body, const Vector& center);

}  // namespace sectlab
