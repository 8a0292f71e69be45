#pragma once

#include <vector>

#include "sectlab/linalg.hpp"
#include "sectlab/rng.hpp"

namespace sectlab {

/// An s-dimensional subspace F of R^n given by an n x s matrix with
/// orthonormal columns. Coordinates u in R^s map to basis * u in F.
class Frame {
 public:
  /// Validates basis^T basis = I to 1e-10 entrywise.
  explicit Frame(Matrix basis);

  /// Frame spanned by the listed coordinate axes, in the listed order.
  static Frame axis_aligned(int n, const std::vector<int>& axes);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }

  Vector embed(const Vector& u) const;
  Vector project(const Vector& x) const;

  /// Frame of the subspace spanned by embed(inner) inside this frame.
  Frame compose(const Frame& inner) const;

 private:
  Matrix basis_;
};

/// Haar-distributed element of G_{n,s}: QR of an n x s standard Gaussian
/// matrix with the sign of each R diagonal entry folded into Q.
Frame sample_haar(int n, int s, CounterRng& rng);

/// Uniform direction on S^{n-1}.
Vector random_direction(int n, CounterRng& rng);

/// Uniform random rotation in SO(n) (Haar on O(n) with det fixed to +1).
Matrix random_rotation(int n, CounterRng& rng);

}  // namespace sectlab
