#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mproj/check.hpp"
#include "mproj/matched.hpp"

namespace mproj {

// ---------------------------------------------------------------------------
// Distance between two projections
// ---------------------------------------------------------------------------

struct KkmDistance {
  double value = 0.0;   // max(||P1(I - P2)||, ||(I - P1)P2||)
  double direct = 0.0;  // ||P1 - P2||
  CheckResult check;
};

inline KkmDistance kkm_distance(const Projection& p1, const Projection& p2, const ToleranceConfig& tol) {
  if (p1.dim() != p2.dim()) throw Error(ErrorCode::BadArgument, "projection dimensions differ");
  const ComplexMatrix id = identity(p1.dim());
  KkmDistance out;
  out.value = std::max(operator_norm(p1.matrix() * (id - p2.matrix())), operator_norm((id - p1.matrix()) * p2.matrix()));
  out.direct = operator_norm(p1.matrix() - p2.matrix());
  out.check = make_check("||P1-P2||=max(||P1(I-P2)||,||(I-P1)P2||)", std::abs(out.value - out.direct), tol.tol_check);
  return out;
}

// ---------------------------------------------------------------------------
// Distances from Q to distinguished projections
// ---------------------------------------------------------------------------

struct DistanceReport {
  double norm_q = 0.0;
  double norm_complement = 0.0;  // ||I - Q||
  double d_matched = 0.0;        // ||m(Q) - Q||
  double d_matched_closed = 0.0; // (||Q|| - 1 + sqrt(||Q||^2 - 1)) / 2
  double d_range = 0.0;          // ||P_R(Q) - Q||
  double d_null = 0.0;           // ||P_N(Q) - Q||
  ComplexMatrix v_sim;           // (|Q| + |I - Q| + I) / 2
  ComplexMatrix d_op;            // -m(I - Q)m - (I - m)Q(I - m)
  ComplexMatrix x_op;            // (m - Q)(m - Q)*
  ComplexMatrix y_op;            // (m - Q)*(m - Q)
  bool sandwich_equality = false;
  std::vector<CheckResult> checks;
};

/// (s - 1 + sqrt(s^2 - 1)) / 2 for s = ||Q||, in terms of gap = sqrt(s^2 - 1).
inline double matched_distance_from_gap(double gap) {
  const double norm_minus_one = gap * gap / (std::sqrt(1.0 + gap * gap) + 1.0);
  return 0.5 * (norm_minus_one + gap);
}

inline DistanceReport distance_report(const MatchedPair& mp, const ToleranceConfig& tol) {
  const Index n = mp.q.dim();
  const ComplexMatrix id = identity(n);
  const ComplexMatrix& qm = mp.q.matrix();
  const ComplexMatrix qs = qm.adjoint();
  const ComplexMatrix& m = mp.mq.matrix();
  const ComplexMatrix mc = id - m;
  const ComplexMatrix diff = m - qm;

  DistanceReport r;
  r.norm_q = mp.q.norm();
  r.norm_complement = operator_norm(id - qm);
  r.d_matched = operator_norm(diff);
  r.d_range = operator_norm(range_projection(mp.q, tol).matrix() - qm);
  r.d_null = operator_norm(null_projection(mp.q, tol).matrix() - qm);
  r.d_matched_closed = matched_distance_from_gap(r.d_range);

  const double b1 = scaled_bound(tol, r.norm_q);
  const double b2 = scaled_bound(tol, r.norm_q, 2);
  const double b4 = scaled_bound(tol, r.norm_q, 4);
  auto& c = r.checks;

  c.push_back(make_check("||m(Q)-Q||=(||Q||-1+sqrt(||Q||^2-1))/2", std::abs(r.d_matched - r.d_matched_closed), b1));

  const double skew = operator_norm(qs - qm);
  const bool projection = is_numerical_projection(qm, tol);
  c.push_back(make_check("||P_R(Q)-Q||=||Q*-Q||", std::abs(r.d_range - skew), b1));
  if (projection) {
    c.push_back(make_check("||P_R(Q)-Q||=0 for a projection", r.d_range, b1));
  } else {
    c.push_back(make_check("||P_R(Q)-Q||^2=||Q||^2-1", std::abs(r.d_range * r.d_range - (r.norm_q * r.norm_q - 1.0)), b2));
  }

  c.push_back(make_check("||P_R(Q)-Q||/2<=||m(Q)-Q||", std::max(0.0, 0.5 * r.d_range - r.d_matched), b1));
  c.push_back(make_check("||m(Q)-Q||<=||P_R(Q)-Q||", std::max(0.0, r.d_matched - r.d_range), b1));
  const bool equalities = r.d_range - r.d_matched <= b1 && r.d_matched - 0.5 * r.d_range <= b1;
  r.sandwich_equality = equalities;
  c.push_back(make_flag("sandwich equalities<=>Q*=Q", equalities == (skew <= 2.0 * b1)));

  c.push_back(make_check("||m(Q)-Q||<=||Q||", std::max(0.0, r.d_matched - r.norm_q), b1));
  const bool trivial = r.norm_q <= b1 || r.norm_complement <= b1;
  if (!trivial) c.push_back(make_check("||Q||=||I-Q||", std::abs(r.norm_q - r.norm_complement), b1));
  c.push_back(make_check("||I-Q||<=||P_N(Q)-Q||", std::max(0.0, r.norm_complement - r.d_null), b1));

  r.v_sim = 0.5 * (mp.abs_q + abs_value(id - qm) + id);
  const ComplexMatrix v_inv = detail::hpd_inverse(r.v_sim);
  c.push_back(make_check("Q=V^-1 m(Q) V", operator_norm(qm - v_inv * m * r.v_sim), b2));
  const ComplexMatrix iv = id - r.v_sim;
  c.push_back(make_check("(I-V)^2=(m(Q)-Q)*(m(Q)-Q)", operator_norm(iv * iv - diff.adjoint() * diff), b2));

  const ComplexMatrix t_part = -(m * (id - qm) * m);
  const ComplexMatrix s_part = -(mc * qm * mc);
  r.d_op = t_part + s_part;
  r.x_op = diff * diff.adjoint();
  r.y_op = diff.adjoint() * diff;
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  const ComplexMatrix d_sym = 0.5 * (r.d_op + r.d_op.adjoint());
  c.push_back(make_check("D hermitian", hermitian_defect(r.d_op), b2));
  c.push_back(make_flag("D>=0", psd_order(zero, d_sym, tol)));
  c.push_back(make_flag("-m(Q)(I-Q)m(Q)>=0", psd_order(zero, 0.5 * (t_part + t_part.adjoint()), tol)));
  c.push_back(make_flag("-(I-m(Q))Q(I-m(Q))>=0", psd_order(zero, 0.5 * (s_part + s_part.adjoint()), tol)));
  c.push_back(make_flag("X>=0", psd_order(zero, r.x_op, tol)));
  c.push_back(make_flag("Y>=0", psd_order(zero, r.y_op, tol)));

  const ComplexMatrix skew_m = qs - qm;
  const ComplexMatrix d2 = d_sym * d_sym;
  c.push_back(make_check("4D^2+4D=(Q*-Q)(Q*-Q)*", operator_norm(4.0 * d2 + 4.0 * d_sym - skew_m * skew_m.adjoint()), b4));
  c.push_back(make_check("X+Y=4D^2+2D", operator_norm(r.x_op + r.y_op - (4.0 * d2 + 2.0 * d_sym)), b4));

  const double dm2 = r.d_matched * r.d_matched;
  const double nd = operator_norm(d_sym);
  c.push_back(make_check("||X||=||m(Q)-Q||^2", std::abs(operator_norm(r.x_op) - dm2), b2));
  c.push_back(make_check("||Y||=||m(Q)-Q||^2", std::abs(operator_norm(r.y_op) - dm2), b2));
  c.push_back(make_check("||X+Y||=4||D||^2+2||D||", std::abs(operator_norm(r.x_op + r.y_op) - (4.0 * nd * nd + 2.0 * nd)), b4));
  c.push_back(make_check("||Q*-Q||^2=4||D||^2+4||D||", std::abs(skew * skew - (4.0 * nd * nd + 4.0 * nd)), b4));
  c.push_back(make_check("||m(Q)(I-Q)m(Q)||=||(I-m(Q))Q(I-m(Q))||",
                         std::abs(operator_norm(t_part) - operator_norm(s_part)), b2));
  return r;
}

inline DistanceReport distance_report(const Idempotent& q, const ToleranceConfig& tol) {
  return distance_report(matched_projection(q, tol), tol);
}

// ---------------------------------------------------------------------------
// Comparing the matched projections of two idempotents
// ---------------------------------------------------------------------------

inline constexpr double kAlphaCeiling = 1.0 - 1e-6;

struct LipschitzReport {
  double lhs = 0.0;         // ||m(Q1) - m(Q2)||
  double q_distance = 0.0;  // ||Q1 - Q2||
  double alpha = 0.0;       // ||(I - m(Q1))Q1(I - m(Q1))||
  bool alpha_applicable = false;
  double rhs_alpha = std::numeric_limits<double>::infinity();  // ||Q1 - Q2|| / (1 - alpha)
  double rhs_min = 0.0;  // min(||m(Q1) - Q2||, ||Q1 - m(Q2)||)
  double rhs_left = 0.0;    // ||m(Q1)Q1 - m(Q2)Q2||
  double rhs_right = 0.0;   // ||Q1 m(Q1) - Q2 m(Q2)||
  bool unconditional_holds = false;  // lhs <= ||Q1 - Q2||, observed only
  std::vector<CheckResult> checks;
};

inline LipschitzReport matched_lipschitz_bounds(const Idempotent& q1, const Idempotent& q2, const ToleranceConfig& tol) {
  if (q1.dim() != q2.dim()) throw Error(ErrorCode::BadArgument, "idempotent dimensions differ");
  const ComplexMatrix id = identity(q1.dim());
  const ComplexMatrix m1 = matched_projection(q1, tol).mq.matrix();
  const ComplexMatrix m2 = matched_projection(q2, tol).mq.matrix();
  const ComplexMatrix& a = q1.matrix();
  const ComplexMatrix& b = q2.matrix();

  LipschitzReport r;
  r.lhs = operator_norm(m1 - m2);
  r.q_distance = operator_norm(a - b);
  r.alpha = operator_norm((id - m1) * a * (id - m1));
  r.alpha_applicable = r.alpha <= kAlphaCeiling;
  r.rhs_min = std::min(operator_norm(m1 - b), operator_norm(a - m2));
  r.rhs_left = operator_norm(m1 * a - m2 * b);
  r.rhs_right = operator_norm(a * m1 - b * m2);
  const double bound = scaled_bound(tol, std::max(q1.norm(), q2.norm()));
  r.unconditional_holds = r.lhs <= r.q_distance + bound;

  if (r.alpha_applicable) {
    r.rhs_alpha = r.q_distance / (1.0 - r.alpha);
    r.checks.push_back(make_check("||m1-m2||<=||Q1-Q2||/(1-alpha)", std::max(0.0, r.lhs - r.rhs_alpha), bound));
  }
  r.checks.push_back(make_check("||m1-m2||<=min(||m1-Q2||,||Q1-m2||)", std::max(0.0, r.lhs - r.rhs_min), bound));
  r.checks.push_back(make_check("||m1-m2||<=||m1Q1-m2Q2||", std::max(0.0, r.lhs - r.rhs_left), bound));
  r.checks.push_back(make_check("||m1-m2||<=||Q1m1-Q2m2||", std::max(0.0, r.lhs - r.rhs_right), bound));
  if (is_numerical_projection(a, tol) || is_numerical_projection(b, tol)) {
    r.checks.push_back(make_check("||m1-m2||<=||Q1-Q2|| (one side a projection)",
                                  std::max(0.0, r.lhs - r.q_distance), bound));
  }
  return r;
}

/// ||P - m(Q)|| <= ||P - Q|| for a projection P.
inline CheckResult projection_nonexpansive(const Projection& p, const MatchedPair& mp, const ToleranceConfig& tol) {
  const double lhs = operator_norm(p.matrix() - mp.mq.matrix());
  const double rhs = operator_norm(p.matrix() - mp.q.matrix());
  return make_check("||P-m(Q)||<=||P-Q||", std::max(0.0, lhs - rhs), scaled_bound(tol, mp.q.norm()));
}

struct ConvergenceReport {
  std::vector<int> exponents;
  std::vector<std::vector<double>> alpha;  // alpha[i][j] = ||K1^{1/e_i} - K2^{1/e_j}||
  std::vector<double> beta;                // ||K1^{1/e_i} - m(Q2)||
  std::vector<double> gamma;               // ||m(Q1) - K2^{1/e_j}||
  double target = 0.0;                     // ||m(Q1) - m(Q2)||
  double grid_minimum = 0.0;
  std::vector<CheckResult> checks;
};

inline constexpr double kConvergenceProximity = 1e-2;

inline ConvergenceReport convergence_report(const Idempotent& q1, const Idempotent& q2, const std::vector<int>& exponents,
                                            const ToleranceConfig& tol) {
  if (q1.dim() != q2.dim()) throw Error(ErrorCode::BadArgument, "idempotent dimensions differ");
  if (exponents.empty()) throw Error(ErrorCode::BadArgument, "exponent list is empty");
  for (int e : exponents) {
    if (e < 1) throw Error(ErrorCode::BadArgument, "exponents must be positive");
  }
  const ComplexMatrix m1 = matched_projection(q1, tol).mq.matrix();
  const ComplexMatrix m2 = matched_projection(q2, tol).mq.matrix();
  const auto sandwich = [](const ComplexMatrix& m, const ComplexMatrix& q) {
    ComplexMatrix k = m * q * m;
    return ComplexMatrix(0.5 * (k + k.adjoint()));
  };
  const ComplexMatrix k1 = sandwich(m1, q1.matrix());
  const ComplexMatrix k2 = sandwich(m2, q2.matrix());

  std::vector<ComplexMatrix> roots1, roots2;
  for (int e : exponents) {
    roots1.push_back(psd_power(k1, 1.0 / e, tol));
    roots2.push_back(psd_power(k2, 1.0 / e, tol));
  }

  ConvergenceReport r;
  r.exponents = exponents;
  r.target = operator_norm(m1 - m2);
  double lowest = std::numeric_limits<double>::infinity();
  for (const ComplexMatrix& x : roots1) {
    std::vector<double> row;
    for (const ComplexMatrix& y : roots2) {
      row.push_back(operator_norm(x - y));
      lowest = std::min(lowest, row.back());
    }
    r.alpha.push_back(std::move(row));
    r.beta.push_back(operator_norm(x - m2));
    lowest = std::min(lowest, r.beta.back());
  }
  for (const ComplexMatrix& y : roots2) {
    r.gamma.push_back(operator_norm(m1 - y));
    lowest = std::min(lowest, r.gamma.back());
  }
  r.grid_minimum = lowest;
  r.checks.push_back(make_check("min(alpha,beta,gamma)>=||m1-m2||", std::max(0.0, r.target - lowest), tol.tol_check));
  r.checks.push_back(
      make_check("beta at largest exponent near ||m1-m2||", std::abs(r.beta.back() - r.target), kConvergenceProximity));
  r.checks.push_back(
      make_check("gamma at largest exponent near ||m1-m2||", std::abs(r.gamma.back() - r.target), kConvergenceProximity));
  return r;
}

// ---------------------------------------------------------------------------
// Idempotents built from two projections
// ---------------------------------------------------------------------------

struct TwoProjectionResult {
  Idempotent q1;
  Idempotent q2;
  double product_norm = 0.0;  // ||P1 P2||
  double q_distance = 0.0;    // ||Q1 - Q2||
  double m_distance = 0.0;    // ||m(Q1) - m(Q2)||
  bool both_nonzero = false;
  bool bound_holds = false;
  bool separation_holds = true;  // ||Q1 - Q2|| >= 1 when both P1, P2 are nonzero
  std::vector<CheckResult> checks;
};

/// Q1 = (I - P1P2)^{-1} P1 (I - P2) and Q2 = (I - P2P1)^{-1} P2 (I - P1).
inline TwoProjectionResult two_projection_construction(const Projection& p1, const Projection& p2,
                                                       const ToleranceConfig& tol) {
  if (p1.dim() != p2.dim()) throw Error(ErrorCode::BadArgument, "projection dimensions differ");
  const ComplexMatrix id = identity(p1.dim());
  const ComplexMatrix& a = p1.matrix();
  const ComplexMatrix& b = p2.matrix();
  const double product_norm = operator_norm(a * b);
  if (product_norm >= 1.0 - tol.tol_check) {
    throw Error(ErrorCode::InapplicableHypothesis, "||P1 P2|| = " + std::to_string(product_norm) + " is not below 1");
  }
  Idempotent q1 = Idempotent::validate((id - a * b).partialPivLu().solve(a * (id - b)), tol);
  Idempotent q2 = Idempotent::validate((id - b * a).partialPivLu().solve(b * (id - a)), tol);

  TwoProjectionResult r{q1, q2, 0.0, 0.0, 0.0, false, false, true, {}};
  r.product_norm = product_norm;
  r.q_distance = operator_norm(q1.matrix() - q2.matrix());
  r.m_distance = operator_norm(matched_projection(q1, tol).mq.matrix() - matched_projection(q2, tol).mq.matrix());
  const double bound = scaled_bound(tol, std::max(q1.norm(), q2.norm()));
  r.both_nonzero = operator_norm(a) > 0.5 && operator_norm(b) > 0.5;
  r.checks.push_back(make_check("||m(Q1)-m(Q2)||<=||Q1-Q2||", std::max(0.0, r.m_distance - r.q_distance), bound));
  r.bound_holds = r.checks.back().passed;
  if (r.both_nonzero) {
    r.checks.push_back(make_check("||Q1-Q2||>=1", std::max(0.0, 1.0 - r.q_distance), bound));
    r.separation_holds = r.checks.back().passed;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Minimality of m(Q) among quasi-projection partners
// ---------------------------------------------------------------------------

inline constexpr double kFiveThirds = 5.0 / 3.0;

struct QppMinimalityReport {
  double d_pq = 0.0;       // ||P - Q||
  double d_matched = 0.0;  // ||m(Q) - Q||
  double d_pm = 0.0;       // ||P - m(Q)||
  bool is_qpp = false;
  bool p_is_matched = false;
  bool dominance_equal = false;
  std::vector<CheckResult> checks;
};

inline QppMinimalityReport qpp_minimality(const Projection& p, const Idempotent& q, const ToleranceConfig& tol) {
  if (p.dim() != q.dim()) throw Error(ErrorCode::BadArgument, "dimensions differ");
  const ComplexMatrix& pm = p.matrix();
  const ComplexMatrix& qm = q.matrix();
  const ComplexMatrix m = matched_projection(q, tol).mq.matrix();
  const ComplexMatrix dp = pm - qm;
  const ComplexMatrix dm = m - qm;

  QppMinimalityReport r;
  r.d_pq = operator_norm(dp);
  r.d_matched = operator_norm(dm);
  r.d_pm = operator_norm(pm - m);
  const double b1 = scaled_bound(tol, q.norm());
  const double b2 = scaled_bound(tol, q.norm(), 2);
  r.p_is_matched = r.d_pm <= b1;
  r.checks.push_back(make_check("||m(Q)-Q||<=2||P-Q||", std::max(0.0, r.d_matched - 2.0 * r.d_pq), b1));

  r.is_qpp = is_quasi_projection_pair(pm, qm, tol).holds;
  if (!r.is_qpp) return r;

  const ComplexMatrix xp = dp * dp.adjoint();
  const ComplexMatrix xm = dm * dm.adjoint();
  const ComplexMatrix yp = dp.adjoint() * dp;
  const ComplexMatrix ym = dm.adjoint() * dm;
  r.checks.push_back(make_flag("(P-Q)(P-Q)*>=(m(Q)-Q)(m(Q)-Q)*", psd_order(xm, xp, tol)));
  r.checks.push_back(make_flag("(P-Q)*(P-Q)>=(m(Q)-Q)*(m(Q)-Q)", psd_order(ym, yp, tol)));
  r.checks.push_back(make_check("||m(Q)-Q||<=||P-Q|| (qpp)", std::max(0.0, r.d_matched - r.d_pq), b1));
  const double gap = std::max(operator_norm(xp - xm), operator_norm(yp - ym));
  r.dominance_equal = gap <= b2;
  r.checks.push_back(make_flag("dominance equality<=>P=m(Q)", r.dominance_equal == r.p_is_matched));
  if (r.d_pq < 1.0 - b1) {
    r.checks.push_back(make_check("||P-Q||<1 => P=m(Q)", r.d_pm, b1));
    r.checks.push_back(make_check("||P-Q||<1 => ||Q||<5/3", std::max(0.0, q.norm() - kFiveThirds), tol.tol_check));
  }
  return r;
}

}  // namespace mproj
