#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "mproj/check.hpp"
#include "mproj/matched.hpp"

namespace mproj {

inline void require_nonzero(Complex a) {
  if (a == Complex(0.0, 0.0)) throw Error(ErrorCode::ZeroParameter, "the off-diagonal parameter a must be nonzero");
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw Error(ErrorCode::NotFinite, "a is not finite");
}

/// [[1, a], [0, 0]].
inline Idempotent canonical_idempotent(Complex a, const ToleranceConfig& tol = {}) {
  require_nonzero(a);
  ComplexMatrix q = ComplexMatrix::Zero(2, 2);
  q(0, 0) = 1.0;
  q(0, 1) = a;
  return Idempotent::validate(std::move(q), tol);
}

struct HalmosPoint {
  Complex z{1.0, 0.0};  // unimodular
  double t = 0.0;       // angle in [0, pi]
  double x = 1.0;       // Re z

  static HalmosPoint make(Complex z, double t, const ToleranceConfig& tol = {}) {
    if (std::abs(std::abs(z) - 1.0) > tol.tol_check) throw Error(ErrorCode::BadArgument, "z must be unimodular");
    if (!(t >= 0.0 && t <= std::numbers::pi)) throw Error(ErrorCode::BadArgument, "t must lie in [0, pi]");
    return HalmosPoint{z, t, z.real()};
  }

  /// The point with Re z = x and Im z >= 0.
  static HalmosPoint from_real_part(double x, double t, const ToleranceConfig& tol = {}) {
    if (!(x >= -1.0 && x <= 1.0)) throw Error(ErrorCode::BadArgument, "x must lie in [-1, 1]");
    return make(Complex(x, std::sqrt(std::max(0.0, 1.0 - x * x))), t, tol);
  }
};

/// U [[cos^2 t, conj(z)|cos t sin t|], [z|cos t sin t|, sin^2 t]] U*
/// with U = diag(1, exp(-i theta)).
inline Projection halmos_projection(const HalmosPoint& p, double theta, const ToleranceConfig& tol = {}) {
  const double c = std::cos(p.t);
  const double s = std::sin(p.t);
  const double cs = std::abs(c * s);
  const Complex phase = std::polar(1.0, -theta);
  ComplexMatrix m(2, 2);
  m(0, 0) = c * c;
  m(0, 1) = std::conj(p.z) * cs * std::conj(phase);
  m(1, 0) = p.z * cs * phase;
  m(1, 1) = s * s;
  return Projection::validate(std::move(m), tol);
}

/// ||P - Q||^2 for P on the Halmos family and Q = canonical_idempotent(a):
/// (2 sin^2 t + |a| (mu + sqrt(mu^2 + 4 sin^4 t))) / 2, mu = |a| - 2|cos t sin t| x.
inline double distance_objective(Complex a, double x, double t) {
  if (!(x >= -1.0 && x <= 1.0)) throw Error(ErrorCode::BadArgument, "x must lie in [-1, 1]");
  if (!(t >= 0.0 && t <= std::numbers::pi)) throw Error(ErrorCode::BadArgument, "t must lie in [0, pi]");
  const double abs_a = std::abs(a);
  const double s = std::sin(t);
  const double s2 = s * s;
  const double mu = abs_a - 2.0 * std::abs(std::cos(t) * s) * x;
  return 0.5 * (2.0 * s2 + abs_a * (mu + std::sqrt(mu * mu + 4.0 * s2 * s2)));
}

/// cos 2t + |a| |sin 2t|.
inline double g_profile(Complex a, double t) { return std::cos(2.0 * t) + std::abs(a) * std::abs(std::sin(2.0 * t)); }

/// The objective restricted to x = 1.
inline double f_profile(Complex a, double t) {
  const double abs_a = std::abs(a);
  const double g = g_profile(a, t);
  return 0.5 * (abs_a * abs_a + 1.0 - g + abs_a * std::sqrt(std::max(0.0, abs_a * abs_a + 2.0 - 2.0 * g)));
}

struct TwoByTwoProblem {
  Complex a;
  double b = 0.0;       // sqrt(1 + |a|^2)
  double theta0 = 0.0;  // sin = |a|/b, cos = 1/b
  double t0 = 0.0;      // theta0 / 2
  Projection p0;
  double optimum = 0.0;  // f(t0) = (b - 1)(b + |a|) / 2
  std::vector<CheckResult> checks;
};

inline TwoByTwoProblem closed_form_p0(Complex a, const ToleranceConfig& tol = {}) {
  require_nonzero(a);
  const double abs_a = std::abs(a);
  const double b = std::sqrt(1.0 + abs_a * abs_a);
  ComplexMatrix p(2, 2);
  p(0, 0) = b + 1.0;
  p(0, 1) = a;
  p(1, 0) = std::conj(a);
  p(1, 1) = b - 1.0;
  p /= 2.0 * b;

  TwoByTwoProblem out{a, b, std::atan2(abs_a, 1.0), 0.0, Projection::validate(std::move(p), tol), 0.0, {}};
  out.t0 = 0.5 * out.theta0;
  out.optimum = 0.5 * (b - 1.0) * (b + abs_a);

  const Idempotent q = canonical_idempotent(a, tol);
  const double bound = scaled_bound(tol, b);
  out.checks.push_back(make_check("P0=m(Q)", operator_norm(out.p0.matrix() - matched_projection(q, tol).mq.matrix()), bound));
  out.checks.push_back(make_check("sin(t0)cos(t0)=|a|/(2b)",
                                  std::abs(std::sin(out.t0) * std::cos(out.t0) - abs_a / (2.0 * b)), tol.tol_check));
  out.checks.push_back(make_check("trace(P0)=1", std::abs(out.p0.matrix().trace() - Complex(1.0, 0.0)), tol.tol_check));
  out.checks.push_back(make_check("||P0-Q||^2=f(t0)",
                                  std::abs(std::pow(operator_norm(out.p0.matrix() - q.matrix()), 2) - out.optimum),
                                  scaled_bound(tol, b, 2)));
  return out;
}

struct GridResult {
  Complex a;
  int grid_x = 0;
  int grid_t = 0;
  double min_value = std::numeric_limits<double>::infinity();
  double argmin_x = 0.0;
  double argmin_t = 0.0;  // folded into [0, pi/2]
  double optimum = 0.0;   // f(t0)
  double t0 = 0.0;
  double gap = 0.0;       // min_value - optimum
  double step_x = 0.0;
  double step_t = 0.0;
  double lipschitz_x = 0.0;
  double lipschitz_t = 0.0;
  double tol_grid = 0.0;
  double norm_q = 0.0;
  double norm_complement = 0.0;
  std::vector<CheckResult> checks;
};

/// Brute-force minimum of distance_objective on the uniform endpoint-inclusive
/// grid over [-1, 1] x [0, pi].
///
/// The grid tolerance is (L_x h_x + L_t h_t) / 2 with the step sizes h and the
/// partial-derivative bounds L_x = |a|, L_t = 1 + 3|a| of the objective.
inline GridResult grid_minimize(Complex a, int grid_x, int grid_t, const ToleranceConfig& tol = {}) {
  require_nonzero(a);
  if (grid_x < 2 || grid_t < 2) throw Error(ErrorCode::BadArgument, "grid needs at least 2 points per axis");
  const double pi = std::numbers::pi;
  const double abs_a = std::abs(a);

  GridResult r;
  r.a = a;
  r.grid_x = grid_x;
  r.grid_t = grid_t;
  r.step_x = 2.0 / (grid_x - 1);
  r.step_t = pi / (grid_t - 1);
  for (int j = 0; j < grid_t; ++j) {
    const double t = j == grid_t - 1 ? pi : j * r.step_t;
    for (int i = 0; i < grid_x; ++i) {
      const double x = i == grid_x - 1 ? 1.0 : -1.0 + i * r.step_x;
      const double v = distance_objective(a, x, t);
      if (v < r.min_value) {
        r.min_value = v;
        r.argmin_x = x;
        r.argmin_t = t;
      }
    }
  }
  // P(t) and P(pi - t) coincide.
  if (r.argmin_t > 0.5 * pi) r.argmin_t = pi - r.argmin_t;

  const TwoByTwoProblem problem = closed_form_p0(a, tol);
  r.optimum = problem.optimum;
  r.t0 = problem.t0;
  r.gap = r.min_value - r.optimum;
  r.lipschitz_x = abs_a;
  r.lipschitz_t = 1.0 + 3.0 * abs_a;
  r.tol_grid = 0.5 * (r.lipschitz_x * r.step_x + r.lipschitz_t * r.step_t) + scaled_bound(tol, problem.b, 2);

  r.checks.push_back(make_check("grid min>=f(t0)", std::max(0.0, -r.gap), r.tol_grid));
  r.checks.push_back(make_check("|grid min-f(t0)|<=tol_grid", std::abs(r.gap), r.tol_grid));

  const Idempotent q = canonical_idempotent(a, tol);
  r.norm_q = q.norm();
  r.norm_complement = operator_norm(identity(2) - q.matrix());
  const double bound = scaled_bound(tol, problem.b);
  r.checks.push_back(make_check("||0-Q||=sqrt(1+|a|^2)", std::abs(r.norm_q - problem.b), bound));
  r.checks.push_back(make_check("||I-Q||=sqrt(1+|a|^2)", std::abs(r.norm_complement - problem.b), bound));
  r.checks.push_back(make_flag("||P_R(Q)-Q||=|a|<sqrt(1+|a|^2)", abs_a < problem.b));
  return r;
}

/// ||m(Q) - Q|| / ||P_R(Q) - Q|| for Q = canonical_idempotent(a).
inline double sandwich_ratio(Complex a, const ToleranceConfig& tol = {}) {
  const Idempotent q = canonical_idempotent(a, tol);
  const double num = operator_norm(matched_projection(q, tol).mq.matrix() - q.matrix());
  const double den = operator_norm(range_projection(q, tol).matrix() - q.matrix());
  return num / den;
}

}  // namespace mproj
