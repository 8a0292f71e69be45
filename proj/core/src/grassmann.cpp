#include "sectlab/grassmann.hpp"

#include <cmath>
#include <string>

#include "sectlab/errors.hpp"

namespace sectlab {

Frame::Frame(Matrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows()) {
    throw DomainError("Frame: need 1 <= s <= n");
  }
  const Matrix gram = basis_.transpose() * basis_;
  const double dev = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) {
    throw DomainError("Frame: basis columns are not orthonormal (deviation " + std::to_string(dev) + ")");
  }
}

Frame Frame::axis_aligned(int n, const std::vector<int>& axes) {
  Matrix b = Matrix::Zero(n, static_cast<Eigen::Index>(axes.size()));
  for (std::size_t j = 0; j < axes.size(); ++j) {
    if (axes[j] < 0 || axes[j] >= n) throw DomainError("Frame::axis_aligned: axis out of range");
    b(axes[j], static_cast<Eigen::Index>(j)) = 1.0;
  }
  return Frame(std::move(b));
}

Vector Frame::embed(const Vector& u) const {
  if (u.size() != basis_.cols()) throw DomainError("Frame::embed: dimension mismatch");
  return basis_ * u;
}

Vector Frame::project(const Vector& x) const {
  if (x.size() != basis_.rows()) throw DomainError("Frame::project: dimension mismatch");
  return basis_.transpose() * x;
}

Frame Frame::compose(const Frame& inner) const {
  if (inner.ambient_dim() != dim()) throw DomainError("Frame::compose: dimension mismatch");
  return Frame(basis_ * inner.basis());
}

Frame sample_haar(int n, int s, CounterRng& rng) {
  if (n < 2 || s < 1 || s > n - 1) {
    throw DomainError("sample_haar: need 1 <= s <= n-1, got n=" + std::to_string(n) +
                      " s=" + std::to_string(s));
  }
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Matrix g(n, s);
    for (int j = 0; j < s; ++j)
      for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(g);
    const Matrix r = qr.matrixQR().topRows(s).triangularView<Eigen::Upper>();
    bool degenerate = false;
    for (int j = 0; j < s; ++j) {
      if (std::abs(r(j, j)) < 1e-10 * g.col(j).norm()) degenerate = true;
    }
    if (degenerate) continue;
    Matrix q = qr.householderQ() * Matrix::Identity(n, s);
    for (int j = 0; j < s; ++j) {
      if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return Frame(std::move(q));
  }
  throw Error("sample_haar: rank-deficient Gaussian draw after 3 retries");
}

Vector random_direction(int n, CounterRng& rng) {
  Vector v(n);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) v[i] = rng.normal();
    norm2 = v.squaredNorm();
  } while (norm2 < 1e-300);
  return v / std::sqrt(norm2);
}

Matrix random_rotation(int n, CounterRng& rng) {
  Matrix g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& qr_mat = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    if (qr_mat(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

}  // namespace sectlab
