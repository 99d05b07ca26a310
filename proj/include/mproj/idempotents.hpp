#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "mproj/linalg.hpp"

namespace mproj {

/// A square matrix Q with ||Q^2 - Q|| <= tol_check (1 + ||Q||^2).
class Idempotent {
 public:
  static Idempotent validate(ComplexMatrix q, const ToleranceConfig& tol) {
    require_square_finite(q, "idempotent");
    const double norm = operator_norm(q);
    const double defect = operator_norm(q * q - q);
    if (defect > tol.tol_check * (1.0 + norm * norm)) {
      throw Error(ErrorCode::NotIdempotent,
                  "||Q^2 - Q|| = " + std::to_string(defect) + " exceeds tolerance");
    }
    return Idempotent(std::move(q), defect, norm);
  }

  const ComplexMatrix& matrix() const { return q_; }
  double defect() const { return defect_; }
  double norm() const { return norm_; }
  Index dim() const { return q_.rows(); }

 private:
  Idempotent(ComplexMatrix q, double defect, double norm) : q_(std::move(q)), defect_(defect), norm_(norm) {}

  ComplexMatrix q_;
  double defect_;
  double norm_;
};

/// A self-adjoint idempotent: max(||P^2 - P||, ||P - P*||) <= tol_check.
class Projection {
 public:
  static Projection validate(ComplexMatrix p, const ToleranceConfig& tol) {
    require_square_finite(p, "projection");
    const double defect = std::max(operator_norm(p * p - p), hermitian_defect(p));
    if (defect > tol.tol_check) {
      throw Error(ErrorCode::NotProjection,
                  "max(||P^2 - P||, ||P - P*||) = " + std::to_string(defect) + " exceeds tolerance");
    }
    return Projection(std::move(p), defect);
  }

  const ComplexMatrix& matrix() const { return p_; }
  double defect() const { return defect_; }
  Index dim() const { return p_.rows(); }

  Idempotent as_idempotent(const ToleranceConfig& tol) const { return Idempotent::validate(p_, tol); }

 private:
  Projection(ComplexMatrix p, double defect) : p_(std::move(p)), defect_(defect) {}

  ComplexMatrix p_;
  double defect_;
};

inline Idempotent adjoint(const Idempotent& q, const ToleranceConfig& tol) {
  return Idempotent::validate(q.matrix().adjoint(), tol);
}

/// I - Q.
inline Idempotent complement(const Idempotent& q, const ToleranceConfig& tol) {
  return Idempotent::validate(identity(q.dim()) - q.matrix(), tol);
}

inline Projection complement(const Projection& p, const ToleranceConfig& tol) {
  return Projection::validate(identity(p.dim()) - p.matrix(), tol);
}

namespace detail {

// Q + Q* - I. For an exact idempotent its spectrum avoids (-1, 1), so a
// smallest |eigenvalue| below 1/2 means the input is not really idempotent.
inline ComplexMatrix checked_pencil(const Idempotent& q, const ToleranceConfig& tol) {
  const ComplexMatrix& m = q.matrix();
  ComplexMatrix pencil = m + m.adjoint() - identity(q.dim());
  const RealVector ev = hermitian_eigen(pencil, tol).eigenvalues;
  if (ev.cwiseAbs().minCoeff() < 0.5) {
    throw Error(ErrorCode::SingularPencil, "Q + Q* - I is numerically singular");
  }
  return pencil;
}

// X G^{-1} for Hermitian invertible G, via the transposed solve.
inline ComplexMatrix right_divide(const ComplexMatrix& x, const ComplexMatrix& g) {
  return g.partialPivLu().solve(x.adjoint()).adjoint();
}

}  // namespace detail

/// Orthogonal projection onto R(Q): Q (Q + Q* - I)^{-1}.
inline Projection range_projection(const Idempotent& q, const ToleranceConfig& tol) {
  const ComplexMatrix pencil = detail::checked_pencil(q, tol);
  return Projection::validate(detail::right_divide(q.matrix(), pencil), tol);
}

/// Orthogonal projection onto N(Q): (Q - I)(Q + Q* - I)^{-1}.
inline Projection null_projection(const Idempotent& q, const ToleranceConfig& tol) {
  const ComplexMatrix pencil = detail::checked_pencil(q, tol);
  return Projection::validate(detail::right_divide(q.matrix() - identity(q.dim()), pencil), tol);
}

// ---------------------------------------------------------------------------
// Seeded generators
// ---------------------------------------------------------------------------

inline ComplexMatrix random_gaussian(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

/// Haar-distributed unitary: QR of a complex Gaussian with the phases of
/// diag(R) divided out.
inline ComplexMatrix random_unitary(Index dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix u = qr.householderQ() * identity(dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) u.col(k) *= r(k, k) / mag;
  }
  return u;
}

inline ComplexMatrix random_unitary(Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_unitary(dim, rng);
}

/// U [[I_rank, A], [0, 0]] U* with ||A|| = offdiag_norm and U Haar-random.
inline Idempotent random_idempotent(Index dim, Index rank, double offdiag_norm, std::uint64_t seed,
                                    const ToleranceConfig& tol = {}) {
  if (dim < 1) throw Error(ErrorCode::BadArgument, "dim must be positive");
  if (rank < 0 || rank > dim) throw Error(ErrorCode::BadRank, "rank must lie in [0, dim]");
  if (!(offdiag_norm >= 0.0) || !std::isfinite(offdiag_norm)) {
    throw Error(ErrorCode::BadArgument, "offdiag_norm must be finite and nonnegative");
  }
  std::mt19937_64 rng(seed);
  ComplexMatrix block = ComplexMatrix::Zero(dim, dim);
  block.topLeftCorner(rank, rank) = identity(rank);
  if (rank > 0 && rank < dim && offdiag_norm > 0.0) {
    ComplexMatrix a = random_gaussian(rank, dim - rank, rng);
    a *= offdiag_norm / operator_norm(a);
    block.topRightCorner(rank, dim - rank) = a;
  }
  const ComplexMatrix u = random_unitary(dim, rng);
  return Idempotent::validate(u * block * u.adjoint(), tol);
}

/// U diag(I_rank, 0) U* with U Haar-random.
inline Projection random_projection(Index dim, Index rank, std::uint64_t seed, const ToleranceConfig& tol = {}) {
  if (rank < 0 || rank > dim) throw Error(ErrorCode::BadRank, "rank must lie in [0, dim]");
  std::mt19937_64 rng(seed);
  const ComplexMatrix u = random_unitary(dim, rng);
  ComplexMatrix p = u.leftCols(rank) * u.leftCols(rank).adjoint();
  p = 0.5 * (p + p.adjoint());
  return Projection::validate(std::move(p), tol);
}

// ---------------------------------------------------------------------------
// Block form induced by a projection
// ---------------------------------------------------------------------------

/// U* T U split at rank(P), where the columns of U are an orthonormal basis
/// of R(P) followed by one of N(P).
struct BlockForm {
  ComplexMatrix basis;  // U
  Index split = 0;
  ComplexMatrix top_left, top_right, bottom_left, bottom_right;

  ComplexMatrix assembled() const {
    const Index n = basis.rows();
    ComplexMatrix full(n, n);
    full.topLeftCorner(split, split) = top_left;
    full.topRightCorner(split, n - split) = top_right;
    full.bottomLeftCorner(n - split, split) = bottom_left;
    full.bottomRightCorner(n - split, n - split) = bottom_right;
    return full;
  }

  /// U (blocks) U*, which recovers T.
  ComplexMatrix reassemble() const { return basis * assembled() * basis.adjoint(); }
};

inline BlockForm block_form(const ComplexMatrix& t, const Projection& p, const ToleranceConfig& tol) {
  if (t.rows() != p.dim() || t.cols() != p.dim()) {
    throw Error(ErrorCode::BadArgument, "block_form: operator and projection dimensions differ");
  }
  const ProjectionBasis pb = projection_basis(p.matrix(), tol);
  const Index n = p.dim();
  BlockForm out;
  out.split = pb.range.cols();
  out.basis.resize(n, n);
  out.basis << pb.range, pb.kernel;
  const ComplexMatrix inner = out.basis.adjoint() * t * out.basis;
  const Index r = out.split;
  out.top_left = inner.topLeftCorner(r, r);
  out.top_right = inner.topRightCorner(r, n - r);
  out.bottom_left = inner.bottomLeftCorner(n - r, r);
  out.bottom_right = inner.bottomRightCorner(n - r, n - r);
  return out;
}

}  // namespace mproj
