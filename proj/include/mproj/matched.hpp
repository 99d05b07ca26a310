#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "mproj/check.hpp"
#include "mproj/idempotents.hpp"
#include "mproj/linalg.hpp"

namespace mproj {

/// Residual bound used for identities whose terms grow like ||Q||^power.
inline double scaled_bound(const ToleranceConfig& tol, double norm, int power = 1) {
  return tol.tol_check * std::pow(1.0 + norm, power);
}

inline bool is_numerical_projection(const ComplexMatrix& q, const ToleranceConfig& tol) {
  return hermitian_defect(q) <= tol.tol_check * (1.0 + operator_norm(q));
}

/// Selects the closed formula for m(Q). SignFlipped replaces (|Q*| + Q) by
/// (|Q*| - Q) in the last factor; it exists only to self-test the verifier.
enum class FormulaVariant { Standard, SignFlipped };

/// (P_R(Q) P_R(Q*) P_R(Q))^{1/2}, which equals the Moore-Penrose inverse of |Q*|.
inline ComplexMatrix mp_inverse_abs_qstar(const Idempotent& q, const ToleranceConfig& tol) {
  const ComplexMatrix pr = range_projection(q, tol).matrix();
  const ComplexMatrix pr_star = range_projection(adjoint(q, tol), tol).matrix();
  ComplexMatrix sandwich = pr * pr_star * pr;
  sandwich = 0.5 * (sandwich + sandwich.adjoint());
  return psd_sqrt(sandwich, tol);
}

struct MatchedPair {
  Idempotent q;
  Projection mq;
  ComplexMatrix t;         // |Q*| + Q*
  ComplexMatrix v_factor;  // (sqrt2/2) T (|Q*|^dagger)^{1/2} (I + |Q*|)^{-1/2}
  ComplexMatrix abs_q;
  ComplexMatrix abs_qstar;
  ComplexMatrix abs_qstar_dagger;

  /// ||m - T T^dagger||, ||m - V V*|| and ||Q* - (2m - I) Q (2m - I)||.
  std::vector<CheckResult> invariant_checks(const ToleranceConfig& tol) const {
    const Index n = q.dim();
    const ComplexMatrix& m = mq.matrix();
    const ComplexMatrix reflect = 2.0 * m - identity(n);
    const double bound = scaled_bound(tol, q.norm());
    return {
        make_check("m(Q)=TT^dagger", operator_norm(m - t * moore_penrose(t, tol)), bound),
        make_check("m(Q)=VV*", operator_norm(m - v_factor * v_factor.adjoint()), bound),
        make_check("Q*=(2m(Q)-I)Q(2m(Q)-I)",
                   operator_norm(q.matrix().adjoint() - reflect * q.matrix() * reflect), bound),
    };
  }
};

namespace detail {

inline ComplexMatrix hpd_inverse(const ComplexMatrix& m) {
  return m.llt().solve(identity(m.rows()));
}

inline ComplexMatrix v_factor(const ComplexMatrix& t, const ComplexMatrix& abs_qstar, const ComplexMatrix& dagger,
                              const ToleranceConfig& tol) {
  const Index n = t.rows();
  const ComplexMatrix dagger_root = psd_sqrt(dagger, tol);
  const ComplexMatrix inv_root = matrix_function(
      identity(n) + abs_qstar, [](double x) { return 1.0 / std::sqrt(x); }, tol);
  return (std::sqrt(2.0) / 2.0) * t * dagger_root * inv_root;
}

}  // namespace detail

/// m(Q) = 1/2 (|Q*| + Q*) |Q*|^dagger (|Q*| + I)^{-1} (|Q*| + Q).
inline MatchedPair matched_projection(const Idempotent& q, const ToleranceConfig& tol,
                                      FormulaVariant variant = FormulaVariant::Standard) {
  const Index n = q.dim();
  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix id = identity(n);
  ComplexMatrix abs_qstar = abs_value(qm.adjoint());
  ComplexMatrix abs_q = abs_value(qm);
  ComplexMatrix dagger = mp_inverse_abs_qstar(q, tol);
  const ComplexMatrix shifted_inverse = detail::hpd_inverse(abs_qstar + id);
  const ComplexMatrix tail = variant == FormulaVariant::Standard ? ComplexMatrix(abs_qstar + qm)
                                                                 : ComplexMatrix(abs_qstar - qm);
  ComplexMatrix t = abs_qstar + qm.adjoint();
  ComplexMatrix m = 0.5 * t * dagger * shifted_inverse * tail;
  Projection mq = Projection::validate(std::move(m), tol);
  ComplexMatrix v = detail::v_factor(t, abs_qstar, dagger, tol);
  return MatchedPair{q, std::move(mq), std::move(t), std::move(v), std::move(abs_q), std::move(abs_qstar),
                     std::move(dagger)};
}

struct FactorRoute {
  ComplexMatrix tt_dagger;  // T T^dagger
  ComplexMatrix vv_star;    // V V*
  ComplexMatrix tdagger_t;  // T^dagger T
  ComplexMatrix vstar_v;    // V* V
};

/// m(Q) via T T^dagger and V V*; the reversed products give P_R(Q).
inline FactorRoute matched_via_factor(const Idempotent& q, const ToleranceConfig& tol) {
  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix abs_qstar = abs_value(qm.adjoint());
  const ComplexMatrix dagger = mp_inverse_abs_qstar(q, tol);
  const ComplexMatrix t = abs_qstar + qm.adjoint();
  const ComplexMatrix t_dagger = moore_penrose(t, tol);
  const ComplexMatrix v = detail::v_factor(t, abs_qstar, dagger, tol);
  return FactorRoute{t * t_dagger, v * v.adjoint(), t_dagger * t, v.adjoint() * v};
}

// ---------------------------------------------------------------------------
// Quasi-projection pairs
// ---------------------------------------------------------------------------

struct QppVerdict {
  bool holds = false;
  bool block_conditions_hold = false;
  bool characterizations_hold = false;
  double bound = 0.0;
  std::map<std::string, double> residuals;

  bool equivalence_consistent() const { return block_conditions_hold == characterizations_hold; }
};

inline constexpr const char* kQppBlockTopLeft = "PQ*P=PQP";
inline constexpr const char* kQppBlockOff = "PQ*(I-P)=-PQ(I-P)";
inline constexpr const char* kQppBlockBottomRight = "(I-P)Q*(I-P)=(I-P)Q(I-P)";
inline constexpr const char* kQppReflection = "Q*=(2P-I)Q(2P-I)";
inline constexpr const char* kQppAbsReflection = "|Q*|=(2P-I)|Q|(2P-I)";

inline QppVerdict is_quasi_projection_pair(const ComplexMatrix& p, const ComplexMatrix& q, const ToleranceConfig& tol) {
  const Index n = q.rows();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix qs = q.adjoint();
  const ComplexMatrix pc = id - p;
  const ComplexMatrix reflect = 2.0 * p - id;
  QppVerdict v;
  v.bound = tol.tol_check * (1.0 + operator_norm(q));
  v.residuals[kQppBlockTopLeft] = operator_norm(p * qs * p - p * q * p);
  v.residuals[kQppBlockOff] = operator_norm(p * qs * pc + p * q * pc);
  v.residuals[kQppBlockBottomRight] = operator_norm(pc * qs * pc - pc * q * pc);
  v.residuals[kQppReflection] = operator_norm(qs - reflect * q * reflect);
  v.residuals[kQppAbsReflection] = operator_norm(abs_value(qs) - reflect * abs_value(q) * reflect);
  const auto ok = [&](const char* key) { return v.residuals.at(key) <= v.bound; };
  v.block_conditions_hold = ok(kQppBlockTopLeft) && ok(kQppBlockOff) && ok(kQppBlockBottomRight);
  v.characterizations_hold = ok(kQppReflection) && ok(kQppAbsReflection);
  v.holds = v.block_conditions_hold && v.characterizations_hold;
  return v;
}

inline QppVerdict is_quasi_projection_pair(const Projection& p, const Idempotent& q, const ToleranceConfig& tol) {
  return is_quasi_projection_pair(p.matrix(), q.matrix(), tol);
}

/// All eight pairs (A, B) with A in {P, I-P}, B in {Q, Q*, I-Q, I-Q*} are
/// quasi-projection pairs once (P, Q) is.
inline bool qpp_symmetry_closure(const Projection& p, const Idempotent& q, const ToleranceConfig& tol) {
  if (!is_quasi_projection_pair(p, q, tol).holds) {
    throw Error(ErrorCode::NotQpp, "(P, Q) is not a quasi-projection pair");
  }
  const Index n = q.dim();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix firsts[] = {p.matrix(), id - p.matrix()};
  const ComplexMatrix seconds[] = {qm, qm.adjoint(), id - qm, id - qm.adjoint()};
  for (const auto& a : firsts) {
    for (const auto& b : seconds) {
      if (!is_quasi_projection_pair(a, b, tol).holds) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Similarity witness and homotopy
// ---------------------------------------------------------------------------

struct SimilarityWitness {
  Projection p;
  ComplexMatrix w;
  ComplexMatrix w_inverse;
  double contraction_norm = 0.0;  // ||I - W||
  double contraction_bound = 0.0;  // sqrt(||B|| / (||B|| + 1)), 0 for projections
  double similarity_residual = 0.0;  // ||Q - W^{-1} P W||
};

/// Builds m(Q) and W from the block form of Q relative to R(Q) + N(Q*):
/// with Q = [[I, A], [0, 0]] and B = (AA* + I)^{1/2},
///   P = 1/2 [[(B + I)B^{-1}, B^{-1}A], [A*B^{-1}, A*(B(B + I))^{-1}A]]
///   W = 1/2 [[B^{-1}, 0], [A*(B(B + I))^{-1}, 2I]].
/// Projections are their own witness with W = I.
inline SimilarityWitness homotopy_witness(const Idempotent& q, const ToleranceConfig& tol) {
  const Index n = q.dim();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix& qm = q.matrix();
  if (is_numerical_projection(qm, tol)) {
    ComplexMatrix sym = 0.5 * (qm + qm.adjoint());
    return SimilarityWitness{Projection::validate(std::move(sym), tol), id, id, 0.0, 0.0,
                             operator_norm(qm - 0.5 * (qm + qm.adjoint()))};
  }

  const Projection pr = range_projection(q, tol);
  const BlockForm bf = block_form(qm, pr, tol);
  const Index r = bf.split;
  const Index k = n - r;
  const ComplexMatrix& a = bf.top_right;
  const ComplexMatrix ir = identity(r);

  const HermitianEigen gram = hermitian_eigen(a * a.adjoint() + ir, tol);
  const auto apply = [&](auto f) {
    RealVector mapped(r);
    for (Index i = 0; i < r; ++i) mapped(i) = f(gram.eigenvalues(i));
    return ComplexMatrix(gram.eigenvectors * mapped.cast<Complex>().asDiagonal() * gram.eigenvectors.adjoint());
  };
  const ComplexMatrix b = apply([](double x) { return std::sqrt(x); });
  const ComplexMatrix b_inv = apply([](double x) { return 1.0 / std::sqrt(x); });
  const ComplexMatrix b_bplus_inv = apply([](double x) { return 1.0 / (x + std::sqrt(x)); });
  const ComplexMatrix bplus_inv = apply([](double x) { return 1.0 / (std::sqrt(x) + 1.0); });

  ComplexMatrix p_block(n, n);
  p_block.topLeftCorner(r, r) = 0.5 * (b + ir) * b_inv;
  p_block.topRightCorner(r, k) = 0.5 * b_inv * a;
  p_block.bottomLeftCorner(k, r) = 0.5 * a.adjoint() * b_inv;
  p_block.bottomRightCorner(k, k) = 0.5 * a.adjoint() * b_bplus_inv * a;

  ComplexMatrix w_block = ComplexMatrix::Zero(n, n);
  w_block.topLeftCorner(r, r) = 0.5 * b_inv;
  w_block.bottomLeftCorner(k, r) = 0.5 * a.adjoint() * b_bplus_inv;
  w_block.bottomRightCorner(k, k) = identity(k);

  ComplexMatrix w_inv_block = ComplexMatrix::Zero(n, n);
  w_inv_block.topLeftCorner(r, r) = 2.0 * b;
  w_inv_block.bottomLeftCorner(k, r) = -a.adjoint() * bplus_inv;
  w_inv_block.bottomRightCorner(k, k) = identity(k);

  const ComplexMatrix& u = bf.basis;
  ComplexMatrix p = u * p_block * u.adjoint();
  p = 0.5 * (p + p.adjoint());
  ComplexMatrix w = u * w_block * u.adjoint();
  ComplexMatrix w_inv = u * w_inv_block * u.adjoint();

  const double b_norm = std::sqrt(gram.eigenvalues(r - 1));
  SimilarityWitness out{Projection::validate(std::move(p), tol), std::move(w), std::move(w_inv), 0.0,
                        std::sqrt(b_norm / (b_norm + 1.0)), 0.0};
  out.contraction_norm = operator_norm(id - out.w);
  out.similarity_residual = operator_norm(qm - out.w_inverse * out.p.matrix() * out.w);
  return out;
}

struct PathSample {
  double t;
  Idempotent q;
};

/// Q(t) = W_t^{-1} m(Q) W_t with W_t = I + t (W - I), sampled uniformly on [0, 1].
inline std::vector<PathSample> homotopy_path(const Idempotent& q, int samples, const ToleranceConfig& tol) {
  if (samples < 2) throw Error(ErrorCode::BadArgument, "homotopy_path needs at least 2 samples");
  const SimilarityWitness wit = homotopy_witness(q, tol);
  const Index n = q.dim();
  const ComplexMatrix id = identity(n);
  std::vector<PathSample> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    const ComplexMatrix wt = id + t * (wit.w - id);
    ComplexMatrix qt = wt.partialPivLu().solve(wit.p.matrix() * wt);
    out.push_back(PathSample{t, Idempotent::validate(std::move(qt), tol)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Identity batteries
// ---------------------------------------------------------------------------

/// Orthonormal-basis rank test for A cap B = {0}: rank [basis(A) basis(B)]
/// equals dim A + dim B.
inline bool trivial_intersection(const ComplexMatrix& proj_a, const ComplexMatrix& proj_b, const ToleranceConfig& tol) {
  const ComplexMatrix ba = projection_basis(proj_a, tol).range;
  const ComplexMatrix bb = projection_basis(proj_b, tol).range;
  if (ba.cols() + bb.cols() > proj_a.rows()) return false;
  if (ba.cols() == 0 || bb.cols() == 0) return true;
  ComplexMatrix stacked(proj_a.rows(), ba.cols() + bb.cols());
  stacked << ba, bb;
  return numerical_rank(stacked, tol) == stacked.cols();
}

/// Range and kernel identities of m(Q), compared through orthogonal
/// projections onto the relevant column spaces.
inline std::vector<CheckResult> range_identities(const MatchedPair& mp, const ToleranceConfig& tol) {
  const Index n = mp.q.dim();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix& qm = mp.q.matrix();
  const ComplexMatrix& m = mp.mq.matrix();
  const double sub = tol.tol_subspace;
  const ComplexMatrix sum = qm + qm.adjoint();
  const ComplexMatrix abs_sum = mp.abs_qstar + mp.abs_q;
  const ComplexMatrix range_sum = range_projector(sum, tol);

  std::vector<CheckResult> out;
  out.push_back(make_check("R[m(Q)]=R(|Q*|+Q*)", operator_norm(m - range_projector(mp.abs_qstar + qm.adjoint(), tol)), sub));
  out.push_back(make_check("R[m(Q)]=R(|Q|+Q)", operator_norm(m - range_projector(mp.abs_q + qm, tol)), sub));
  out.push_back(make_check("N[m(Q)]=N(|Q*|+Q)", operator_norm((id - m) - kernel_projector(mp.abs_qstar + qm, tol)), sub));
  out.push_back(make_check("R[m(Q)]<=R(Q+Q*)", operator_norm((id - range_sum) * m), sub));
  out.push_back(make_check("R(Q+Q*)=R(|Q*|+|Q|)", operator_norm(range_sum - range_projector(abs_sum, tol)), sub));
  out.push_back(make_check("R[m(Q)]=R(|Q*|+|Q|+Q+Q*)", operator_norm(m - range_projector(abs_sum + sum, tol)), sub));

  const Projection pr = range_projection(mp.q, tol);
  const Projection pn = null_projection(mp.q, tol);
  out.push_back(make_flag("R[m(Q)]^N(Q)={0}", trivial_intersection(m, pn.matrix(), tol)));
  out.push_back(make_flag("N[m(Q)]^R(Q)={0}", trivial_intersection(id - m, pr.matrix(), tol)));

  const double bound = scaled_bound(tol, mp.q.norm());
  out.push_back(make_check("m(Q)Q*=(|Q*|+Q*)/2", operator_norm(m * qm.adjoint() - 0.5 * (mp.abs_qstar + qm.adjoint())), bound));
  out.push_back(make_check("m(Q)Q=(|Q|+Q)/2", operator_norm(m * qm - 0.5 * (mp.abs_q + qm)), bound));

  const bool ranges_equal = operator_norm(m - range_sum) <= sub;
  const bool projection = is_numerical_projection(qm, tol);
  out.push_back(make_flag("R[m(Q)]=R(Q+Q*)<=>Q projection", ranges_equal == projection));
  return out;
}

/// Structural identities tying m(Q) to Q*, I - Q and the absolute values.
inline std::vector<CheckResult> structural_identities(const MatchedPair& mp, const ToleranceConfig& tol) {
  const Index n = mp.q.dim();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix& qm = mp.q.matrix();
  const ComplexMatrix& m = mp.mq.matrix();
  const ComplexMatrix reflect = 2.0 * m - id;
  const double bound = scaled_bound(tol, mp.q.norm());
  const double bound2 = scaled_bound(tol, mp.q.norm(), 2);
  const Idempotent qs = adjoint(mp.q, tol);
  const Idempotent qc = complement(mp.q, tol);
  const ComplexMatrix abs_complement = abs_value(id - qm);

  return {
      make_check("m(Q*)=m(Q)", operator_norm(matched_projection(qs, tol).mq.matrix() - m), bound),
      make_check("m(I-Q)=I-m(Q)", operator_norm(matched_projection(qc, tol).mq.matrix() - (id - m)), bound),
      make_check("(2m(Q)-I)Q=|Q|", operator_norm(reflect * qm - mp.abs_q), bound),
      make_check("(2m(Q)-I)(2Q-I)=|Q|+|I-Q|",
                 operator_norm(reflect * (2.0 * qm - id) - (mp.abs_q + abs_complement)), bound),
      make_check("|Q*||Q|=Q", operator_norm(mp.abs_qstar * mp.abs_q - qm), bound2),
      make_check("|Q||Q*|=Q*", operator_norm(mp.abs_q * mp.abs_qstar - qm.adjoint()), bound2),
      make_check("Q*|Q*|^dagger Q=|Q|", operator_norm(qm.adjoint() * mp.abs_qstar_dagger * qm - mp.abs_q), bound2),
      make_check("|Q*|^dagger=pinv(|Q*|)",
                 operator_norm(mp.abs_qstar_dagger - moore_penrose(mp.abs_qstar, tol)), bound),
  };
}

struct FractionalPowerReport {
  ComplexMatrix k;                 // m(Q) Q m(Q)
  double hermitian_defect = 0.0;
  bool dominates_matched = false;  // m(Q) <= K
  double quarter_residual = 0.0;   // ||K - (|Q*| + |Q| + Q + Q*)/4||
  std::vector<int> exponents;
  std::vector<double> gaps;        // ||K^{1/n} - m(Q)||
};

inline FractionalPowerReport fractional_power_limit(const MatchedPair& mp, const std::vector<int>& exponents,
                                                    const ToleranceConfig& tol) {
  const ComplexMatrix& qm = mp.q.matrix();
  const ComplexMatrix& m = mp.mq.matrix();
  FractionalPowerReport out;
  out.k = m * qm * m;
  out.hermitian_defect = hermitian_defect(out.k);
  if (!is_hermitian(out.k, tol)) throw Error(ErrorCode::NotHermitian, "m(Q) Q m(Q) is not Hermitian");
  out.dominates_matched = psd_order(m, out.k, tol);
  out.quarter_residual =
      operator_norm(out.k - 0.25 * (mp.abs_qstar + mp.abs_q + qm + qm.adjoint()));
  out.exponents = exponents;
  for (int e : exponents) {
    if (e < 1) throw Error(ErrorCode::BadArgument, "exponents must be positive");
    out.gaps.push_back(operator_norm(psd_power(out.k, 1.0 / e, tol) - m));
  }
  return out;
}

inline std::vector<int> power_of_two_exponents(int max_log2 = 10) {
  std::vector<int> out;
  for (int i = 0; i <= max_log2; ++i) out.push_back(1 << i);
  return out;
}

/// ||m(U* Q U) - U* m(Q) U||.
inline double unitary_equivariance(const Idempotent& q, const ComplexMatrix& u, const ToleranceConfig& tol) {
  if (u.rows() != q.dim() || u.cols() != q.dim()) throw Error(ErrorCode::BadArgument, "dimension mismatch");
  if (operator_norm(u.adjoint() * u - identity(q.dim())) > tol.tol_check) {
    throw Error(ErrorCode::NotUnitary, "U*U differs from I");
  }
  const ComplexMatrix m = matched_projection(q, tol).mq.matrix();
  const Idempotent rotated = Idempotent::validate(u.adjoint() * q.matrix() * u, tol);
  return operator_norm(matched_projection(rotated, tol).mq.matrix() - u.adjoint() * m * u);
}

// ---------------------------------------------------------------------------
// Quasi-projection pair generator
// ---------------------------------------------------------------------------

struct QppSample {
  Projection p;
  Idempotent q;
};

/// Random quasi-projection pair. The space is split into up to three blocks,
/// each carrying a random idempotent Q_k paired with m(Q_k) or I - m(Q_k)
/// (a projection block may instead take any commuting projection); the
/// direct sum is then conjugated by a Haar unitary. matched_weight is the
/// probability of choosing m(Q_k) for a block.
inline QppSample random_qpp(Index dim, double offdiag_norm, std::uint64_t seed, const ToleranceConfig& tol = {},
                            double matched_weight = 0.5) {
  if (dim < 1) throw Error(ErrorCode::BadArgument, "dim must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index blocks = std::min<Index>(dim, 1 + static_cast<Index>(rng() % 3));
  std::vector<Index> sizes(static_cast<std::size_t>(blocks), 1);
  for (Index extra = dim - blocks; extra > 0; --extra) ++sizes[rng() % sizes.size()];

  ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
  ComplexMatrix q = ComplexMatrix::Zero(dim, dim);
  Index offset = 0;
  for (Index size : sizes) {
    const Index rank = static_cast<Index>(rng() % static_cast<std::uint64_t>(size + 1));
    const Idempotent block = random_idempotent(size, rank, offdiag_norm, rng(), tol);
    ComplexMatrix pb;
    if (is_numerical_projection(block.matrix(), tol) && unit(rng) < 0.5) {
      // Any projection commuting with a projection block is a valid partner:
      // take a random subspace of R(Q_k) plus one of N(Q_k).
      const ProjectionBasis basis = projection_basis(block.matrix(), tol);
      const Index keep_r = static_cast<Index>(rng() % static_cast<std::uint64_t>(basis.range.cols() + 1));
      const Index keep_n = static_cast<Index>(rng() % static_cast<std::uint64_t>(basis.kernel.cols() + 1));
      pb = basis.range.leftCols(keep_r) * basis.range.leftCols(keep_r).adjoint() +
           basis.kernel.leftCols(keep_n) * basis.kernel.leftCols(keep_n).adjoint();
    } else {
      pb = matched_projection(block, tol).mq.matrix();
      if (unit(rng) >= matched_weight) pb = identity(size) - pb;
    }
    p.block(offset, offset, size, size) = pb;
    q.block(offset, offset, size, size) = block.matrix();
    offset += size;
  }
  const ComplexMatrix u = random_unitary(dim, rng);
  ComplexMatrix pu = u * p * u.adjoint();
  pu = 0.5 * (pu + pu.adjoint());
  return QppSample{Projection::validate(std::move(pu), tol), Idempotent::validate(u * q * u.adjoint(), tol)};
}

}  // namespace mproj
