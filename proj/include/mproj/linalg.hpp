#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

#include "mproj/error.hpp"

namespace mproj {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kMachineEpsilon = std::numeric_limits<double>::epsilon();

/// Numerical tolerances shared by every check in the library.
///
/// tol_rank is a relative singular-value cutoff (a value is treated as zero
/// when it is below tol_rank * sigma_max). Leaving it at 0 selects the
/// dimension-dependent default 100 * dim * machine epsilon.
struct ToleranceConfig {
  double tol_rank = 0.0;
  double tol_check = 1e-10;
  double tol_psd = 1e-10;
  double tol_subspace = 1e-8;

  double rank_cutoff(Index dim) const {
    return tol_rank > 0.0 ? tol_rank : 100.0 * static_cast<double>(dim) * kMachineEpsilon;
  }

  void validate() const {
    if (!(tol_rank >= 0.0) || !(tol_check > 0.0) || !(tol_psd > 0.0) || !(tol_subspace > 0.0)) {
      throw Error(ErrorCode::BadArgument, "tolerances must be positive (tol_rank may be 0 for the default)");
    }
  }
};

inline ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

inline bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

inline void require_square_finite(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(ErrorCode::NotSquare, what + " must be a non-empty square matrix");
  }
  if (!all_finite(m)) throw Error(ErrorCode::NotFinite, what + " has a NaN or infinite entry");
}

inline ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

/// Largest singular value.
inline double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

inline double hermitian_defect(const ComplexMatrix& m) { return operator_norm(m - m.adjoint()); }

inline bool is_hermitian(const ComplexMatrix& m, const ToleranceConfig& tol) {
  return hermitian_defect(m) <= tol.tol_check * (1.0 + operator_norm(m));
}

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // orthonormal columns

  ComplexMatrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
  }
};

/// Eigendecomposition of a Hermitian matrix, symmetrized to (M + M*)/2 first.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "hermitian_eigen needs a square matrix");
  if (!is_hermitian(m, tol)) {
    throw Error(ErrorCode::NotHermitian,
                "asymmetry " + std::to_string(hermitian_defect(m)) + " exceeds tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::DomainError, "eigensolver did not converge");
  return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

/// U diag(f(lambda)) U* for Hermitian M.
///
/// Eigenvalues with |lambda| <= tol_psd (1 + ||M||) are snapped to exactly 0
/// before f is applied; this absorbs the round-off that a PSD matrix picks up
/// on its kernel. Any remaining value where f is undefined raises DomainError.
template <class F>
ComplexMatrix matrix_function(const ComplexMatrix& m, F&& f, const ToleranceConfig& tol) {
  const HermitianEigen eig = hermitian_eigen(m, tol);
  const Index n = eig.eigenvalues.size();
  const double scale = n > 0 ? std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(n - 1))) : 0.0;
  const double snap = tol.tol_psd * (1.0 + scale);
  RealVector mapped(n);
  for (Index i = 0; i < n; ++i) {
    double lambda = eig.eigenvalues(i);
    if (std::abs(lambda) <= snap) lambda = 0.0;
    const double value = f(lambda);
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::DomainError, "function undefined at eigenvalue " + std::to_string(lambda));
    }
    mapped(i) = value;
  }
  return eig.eigenvectors * mapped.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

inline ComplexMatrix psd_sqrt(const ComplexMatrix& m, const ToleranceConfig& tol) {
  return matrix_function(m, [](double x) { return std::sqrt(x); }, tol);
}

/// M^p for PSD M and p > 0; zero eigenvalues stay zero.
inline ComplexMatrix psd_power(const ComplexMatrix& m, double p, const ToleranceConfig& tol) {
  return matrix_function(
      m, [p](double x) { return x == 0.0 ? 0.0 : (x < 0.0 ? std::nan("") : std::pow(x, p)); }, tol);
}

/// |M| = (M*M)^{1/2}. Built from the SVD M = U S V* as V S V*, which keeps the
/// kernel of |M| at round-off level instead of sqrt(round-off).
inline ComplexMatrix abs_value(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const ComplexMatrix& v = svd.matrixV();
  ComplexMatrix out = v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
  return 0.5 * (out + out.adjoint());
}

/// Moore-Penrose inverse with a relative cutoff: singular values below
/// rank_cutoff * sigma_max are treated as zero.
inline ComplexMatrix moore_penrose(const ComplexMatrix& m, const ToleranceConfig& tol) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  ComplexMatrix out = ComplexMatrix::Zero(m.cols(), m.rows());
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double cutoff = tol.rank_cutoff(std::max(m.rows(), m.cols())) * s(0);
  for (Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cutoff) break;
    out += (svd.matrixV().col(k) / s(k)) * svd.matrixU().col(k).adjoint();
  }
  return out;
}

inline Index numerical_rank(const ComplexMatrix& m, const ToleranceConfig& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cutoff = tol.rank_cutoff(std::max(m.rows(), m.cols())) * s(0);
  Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return r;
}

/// Orthogonal projection onto the column space of M, i.e. M M^dagger.
inline ComplexMatrix range_projector(const ComplexMatrix& m, const ToleranceConfig& tol) {
  ComplexMatrix p = m * moore_penrose(m, tol);
  return 0.5 * (p + p.adjoint());
}

/// Orthogonal projection onto the null space of M, i.e. I - M^dagger M.
inline ComplexMatrix kernel_projector(const ComplexMatrix& m, const ToleranceConfig& tol) {
  ComplexMatrix p = moore_penrose(m, tol) * m;
  p = 0.5 * (p + p.adjoint());
  return identity(m.cols()) - p;
}

inline double min_eigenvalue(const ComplexMatrix& m, const ToleranceConfig& tol) {
  return hermitian_eigen(m, tol).eigenvalues(0);
}

/// A <= B in the Loewner order, up to tol_psd (1 + max(||A||, ||B||)).
inline bool psd_order(const ComplexMatrix& a, const ComplexMatrix& b, const ToleranceConfig& tol) {
  if (!is_hermitian(a, tol) || !is_hermitian(b, tol)) {
    throw Error(ErrorCode::NotHermitian, "psd_order needs Hermitian arguments");
  }
  const double scale = std::max(operator_norm(a), operator_norm(b));
  return min_eigenvalue(b - a, tol) >= -tol.tol_psd * (1.0 + scale);
}

/// Orthonormal basis of the eigenspace of a projection for eigenvalue 1
/// (columns) and its complement. Eigenvalues are split at 1/2.
struct ProjectionBasis {
  ComplexMatrix range;
  ComplexMatrix kernel;
};

inline ProjectionBasis projection_basis(const ComplexMatrix& p, const ToleranceConfig& tol) {
  const HermitianEigen eig = hermitian_eigen(p, tol);
  const Index n = eig.eigenvalues.size();
  Index kernel_dim = 0;
  while (kernel_dim < n && eig.eigenvalues(kernel_dim) < 0.5) ++kernel_dim;
  ProjectionBasis out;
  // Ascending order, so the eigenvalue-1 block sits at the right; reverse it
  // to put the leading eigenvector first.
  out.range = eig.eigenvectors.rightCols(n - kernel_dim).rowwise().reverse();
  out.kernel = eig.eigenvectors.leftCols(kernel_dim);
  return out;
}

}  // namespace mproj
