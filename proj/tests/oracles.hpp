#pragma once

// Independent reference computations used to cross-check the library. None
// of these call into mproj's eigen/SVD-based kernels.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Largest singular value from repeated squaring of G = M*M:
/// lambda_max(G) = lim ||G^(2^k)||_F^(1 / 2^k).
inline double power_norm(const Matrix& m, int squarings = 40) {
  if (m.size() == 0 || m.norm() == 0.0) return 0.0;
  Matrix g = m.adjoint() * m;
  double log_scale = 0.0;  // log of the factor divided out so far, per unit power
  double power = 1.0;
  for (int k = 0; k < squarings; ++k) {
    const double f = g.norm();
    log_scale += std::log(f) / power;
    g = (g / f) * (g / f);
    power *= 2.0;
  }
  const double log_lambda = log_scale + std::log(g.norm()) / power;
  return std::exp(0.5 * log_lambda);
}

/// Spectral norm of a 2x2 matrix from its Frobenius norm and determinant.
inline double norm2x2(const Matrix& m) {
  const double f = m.squaredNorm();
  const double d = std::norm(m.determinant());
  return std::sqrt(0.5 * (f + std::sqrt(std::max(0.0, f * f - 4.0 * d))));
}

/// Unitary polar factor of an invertible matrix by Newton's iteration
/// X <- (X + X^{-*}) / 2.
inline Matrix polar_unitary(const Matrix& s) {
  Matrix x = s;
  for (int k = 0; k < 100; ++k) {
    const Matrix next = 0.5 * (x + x.inverse().adjoint());
    const double change = (next - x).norm();
    x = next;
    if (change <= 1e-15 * x.norm()) break;
  }
  return x;
}

/// Matched projection from the polar decomposition of the symmetry 2Q - I:
/// its unitary factor is 2m(Q) - I.
inline Matrix matched_by_polar(const Matrix& q) {
  const Matrix id = Matrix::Identity(q.rows(), q.cols());
  return 0.5 * (polar_unitary(2.0 * q - id) + id);
}

/// Orthogonal projector onto the column space via column-pivoted QR.
inline Matrix column_space_projector(const Matrix& m, double threshold = 1e-10) {
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(threshold);
  const Eigen::Index r = qr.rank();
  const Matrix basis = (qr.householderQ() * Matrix::Identity(m.rows(), m.rows())).leftCols(r);
  return basis * basis.adjoint();
}

/// min over a uniform (x, t) grid of ||P(x, t) - Q||^2 for Q = [[1, |a|], [0, 0]],
/// evaluating each matrix norm directly.
struct GridMin {
  double value = 0.0;
  double x = 0.0;
  double t = 0.0;
};

inline GridMin halmos_grid_min(double abs_a, int nx, int nt) {
  Matrix q(2, 2);
  q << 1.0, abs_a, 0.0, 0.0;
  GridMin best{1e300, 0.0, 0.0};
  for (int j = 0; j < nt; ++j) {
    const double t = std::numbers::pi * j / (nt - 1);
    const double c = std::cos(t), s = std::sin(t);
    for (int i = 0; i < nx; ++i) {
      const double x = -1.0 + 2.0 * i / (nx - 1);
      const Complex z(x, std::sqrt(std::max(0.0, 1.0 - x * x)));
      Matrix p(2, 2);
      p << c * c, std::conj(z) * std::abs(c * s), z * std::abs(c * s), s * s;
      const double v = std::pow(norm2x2(p - q), 2);
      if (v < best.value) best = GridMin{v, x, t};
    }
  }
  return best;
}

}  // namespace oracle
