#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mproj/norms.hpp"
#include "mproj/two_by_two.hpp"
#include "oracles.hpp"

using namespace mproj;

namespace {

const ToleranceConfig kTol;
const double kR2 = std::sqrt(2.0);

ComplexMatrix diag(std::initializer_list<double> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (double v : d) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

Idempotent sample(std::uint64_t s, Index dim_max = 12) {
  std::mt19937_64 rng(s * 104729 + 5);
  const Index dim = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(dim_max));
  const Index rank = static_cast<Index>(rng() % static_cast<std::uint64_t>(dim + 1));
  const double nu = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
  return random_idempotent(dim, rank, nu, rng());
}

}  // namespace

TEST(Kkm, Examples) {
  const Projection p = random_projection(4, 2, 1);
  EXPECT_LT(kkm_distance(p, p, kTol).value, 1e-14);

  const Projection e1 = Projection::validate(diag({1.0, 0.0}), kTol);
  const Projection e2 = Projection::validate(diag({0.0, 1.0}), kTol);
  EXPECT_NEAR(kkm_distance(e1, e2, kTol).value, 1.0, 1e-14);

  const Projection h = halmos_projection(HalmosPoint::make(1.0, std::numbers::pi / 4), 0.0);
  const KkmDistance k = kkm_distance(e1, h, kTol);
  EXPECT_NEAR(k.value, oracle::norm2x2(e1.matrix() - h.matrix()), 1e-12);
  EXPECT_NEAR(k.value, kR2 / 2.0, 1e-12);
}

TEST(Kkm, RandomPairs) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Index dim = 1 + static_cast<Index>(s % 10);
    const Projection a = random_projection(dim, static_cast<Index>(s % static_cast<std::uint64_t>(dim + 1)), s);
    const Projection b = random_projection(dim, static_cast<Index>((s / 3) % static_cast<std::uint64_t>(dim + 1)), s + 1000);
    const KkmDistance k = kkm_distance(a, b, kTol);
    EXPECT_TRUE(k.check.passed) << "seed " << s;
    EXPECT_NEAR(k.direct, oracle::power_norm(a.matrix() - b.matrix()), 1e-10);
  }
}

TEST(DistanceReport, Projection) {
  const Projection p = random_projection(5, 2, 3);
  const DistanceReport r = distance_report(p.as_idempotent(kTol), kTol);
  EXPECT_LT(r.d_matched, 1e-12);
  EXPECT_LT(r.d_range, 1e-12);
  EXPECT_LT(operator_norm(r.v_sim - identity(5)), 1e-12);
  EXPECT_LT(operator_norm(r.d_op), 1e-12);
  EXPECT_TRUE(r.sandwich_equality);
  EXPECT_TRUE(all_passed(r.checks));
}

TEST(DistanceReport, Canonical) {
  const DistanceReport r = distance_report(canonical_idempotent(1.0), kTol);
  EXPECT_NEAR(r.norm_q, kR2, 1e-14);
  EXPECT_NEAR(r.d_matched, kR2 / 2.0, 1e-12);
  EXPECT_NEAR(r.d_matched_closed, 0.5 * (kR2 - 1.0 + 1.0), 1e-14);
  EXPECT_NEAR(r.d_range, 1.0, 1e-12);
  // Square root of the nonzero eigenvalue (b - 1)(b + a) / 2 with a = 1, b = sqrt 2.
  EXPECT_NEAR(r.d_matched, std::sqrt(0.5 * (kR2 - 1.0) * (kR2 + 1.0)), 1e-12);
  EXPECT_LT(0.5 * r.d_range, r.d_matched - 0.1);
  EXPECT_LT(r.d_matched, r.d_range - 0.1);
  EXPECT_FALSE(r.sandwich_equality);
  EXPECT_TRUE(all_passed(r.checks));
}

TEST(DistanceReport, RandomIdempotents) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const Idempotent q = sample(s);
    const DistanceReport r = distance_report(q, kTol);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " seed " << s;
    const ComplexMatrix m = oracle::matched_by_polar(q.matrix());
    EXPECT_NEAR(r.d_matched, oracle::power_norm(m - q.matrix()), 1e-9 * (1.0 + q.norm()));
  }
}

TEST(Lipschitz, Examples) {
  const Idempotent q = sample(4);
  const LipschitzReport same = matched_lipschitz_bounds(q, q, kTol);
  EXPECT_LT(same.lhs, 1e-14);
  EXPECT_LT(same.q_distance, 1e-14);
  EXPECT_TRUE(all_passed(same.checks));

  const Projection p = random_projection(q.dim(), 1, 9);
  const LipschitzReport r = matched_lipschitz_bounds(p.as_idempotent(kTol), q, kTol);
  EXPECT_LT(r.alpha, 1e-12);
  EXPECT_TRUE(r.alpha_applicable);
  EXPECT_NEAR(r.rhs_alpha, r.q_distance, 1e-12);
  EXPECT_LE(r.lhs, r.q_distance + 1e-10);
  EXPECT_TRUE(all_passed(r.checks));
}

TEST(Lipschitz, RandomPairs) {
  int unconditional = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Idempotent q1 = sample(s, 8);
    const Idempotent q2 = random_idempotent(q1.dim(), static_cast<Index>(s % static_cast<std::uint64_t>(q1.dim() + 1)),
                                            std::pow(10.0, -2.0 + 4.0 * (s % 13) / 12.0), s + 7);
    const LipschitzReport r = matched_lipschitz_bounds(q1, q2, kTol);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " seed " << s;
    unconditional += r.unconditional_holds ? 1 : 0;
  }
  std::cout << "||m1-m2||<=||Q1-Q2|| observed in " << unconditional << "/200 pairs\n";
}

TEST(ProjectionNonexpansive, RandomTrials) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const MatchedPair mp = matched_projection(sample(s), kTol);
    for (int k = 0; k < 20; ++k) {
      const Index dim = mp.q.dim();
      const Projection p = random_projection(dim, static_cast<Index>((s + k) % static_cast<std::uint64_t>(dim + 1)),
                                             s * 100 + k);
      EXPECT_TRUE(projection_nonexpansive(p, mp, kTol).passed) << "seed " << s;
    }
  }
}

TEST(Convergence, Examples) {
  const Projection p = random_projection(4, 2, 1);
  const Idempotent pq = p.as_idempotent(kTol);
  const ConvergenceReport r = convergence_report(pq, pq, {1, 2, 4}, kTol);
  for (const auto& row : r.alpha) {
    for (double v : row) EXPECT_LT(v, 1e-12);
  }
  EXPECT_TRUE(all_passed(r.checks));

  const Idempotent q = canonical_idempotent(1.0);
  const ConvergenceReport c = convergence_report(q, q, power_of_two_exponents(10), kTol);
  EXPECT_LT(c.target, 1e-14);
  for (std::size_t i = 1; i < c.beta.size(); ++i) EXPECT_LE(c.beta[i], c.beta[i - 1] + kTol.tol_check);
  EXPECT_LE(c.beta.back(), 1e-2);
  EXPECT_TRUE(all_passed(c.checks));
}

TEST(Convergence, RandomPairsMonotone) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Idempotent q1 = sample(s, 6);
    const Idempotent q2 = sample(s + 5000, 6);
    if (q1.dim() != q2.dim()) continue;
    const ConvergenceReport r = convergence_report(q1, q2, power_of_two_exponents(10), kTol);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " seed " << s;
    EXPECT_GE(r.grid_minimum, r.target - 1e-9);
  }
}

TEST(TwoProjection, Examples) {
  const Projection zero = Projection::validate(ComplexMatrix::Zero(3, 3), kTol);
  const Projection p2 = random_projection(3, 1, 4);
  TwoProjectionResult r = two_projection_construction(zero, p2, kTol);
  EXPECT_LT(operator_norm(r.q1.matrix()), 1e-14);
  EXPECT_LT(operator_norm(r.q2.matrix() - p2.matrix()), 1e-12);
  EXPECT_TRUE(all_passed(r.checks));

  const Projection e1 = Projection::validate(diag({1.0, 0.0, 0.0}), kTol);
  ComplexMatrix v = ComplexMatrix::Zero(3, 1);
  v(1, 0) = v(2, 0) = 1.0 / kR2;
  const Projection pv = Projection::validate(v * v.adjoint(), kTol);
  r = two_projection_construction(e1, pv, kTol);
  EXPECT_LT(r.product_norm, 1e-14);
  EXPECT_LT(operator_norm(r.q1.matrix() - e1.matrix()), 1e-14);
  EXPECT_GE(r.q_distance, 1.0 - 1e-12);
  EXPECT_TRUE(r.both_nonzero);
  EXPECT_TRUE(all_passed(r.checks));

  try {
    two_projection_construction(e1, e1, kTol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InapplicableHypothesis);
  }
}

TEST(TwoProjection, RandomPairs) {
  int applied = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Index dim = 2 + static_cast<Index>(s % 7);
    const Index r1 = 1 + static_cast<Index>(s % static_cast<std::uint64_t>(dim - 1));
    const Index r2 = 1 + static_cast<Index>((s / 7) % static_cast<std::uint64_t>(dim - r1));
    const Projection p1 = random_projection(dim, r1, s);
    const Projection p2 = random_projection(dim, r2, s + 333);
    if (operator_norm(p1.matrix() * p2.matrix()) >= 1.0 - 1e-6) continue;
    const TwoProjectionResult r = two_projection_construction(p1, p2, kTol);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " seed " << s;
    ++applied;
  }
  EXPECT_GT(applied, 100);
}

TEST(QppMinimality, Examples) {
  const Idempotent q = canonical_idempotent(1.0);
  const MatchedPair mp = matched_projection(q, kTol);
  QppMinimalityReport r = qpp_minimality(mp.mq, q, kTol);
  EXPECT_TRUE(r.is_qpp);
  EXPECT_TRUE(r.p_is_matched);
  EXPECT_TRUE(r.dominance_equal);
  EXPECT_TRUE(all_passed(r.checks));

  r = qpp_minimality(range_projection(q, kTol), q, kTol);
  EXPECT_NEAR(r.d_pq, 1.0, 1e-12);
  EXPECT_NEAR(r.d_matched, kR2 / 2.0, 1e-12);
  EXPECT_GE(2.0 * r.d_pq, r.d_matched);
  EXPECT_TRUE(all_passed(r.checks));
}

TEST(QppMinimality, GeneratedPairs) {
  int close = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const QppSample pair = random_qpp(1 + static_cast<Index>(s % 10), std::pow(10.0, -2.0 + 4.0 * (s % 9) / 8.0), s, kTol);
    const QppMinimalityReport r = qpp_minimality(pair.p, pair.q, kTol);
    EXPECT_TRUE(r.is_qpp);
    for (const auto& c : r.checks) EXPECT_TRUE(c.passed) << c.name << " seed " << s;
    if (r.d_pq < 1.0 - 1e-6) {
      ++close;
      EXPECT_LE(r.d_pm, 1e-9);
      EXPECT_LT(pair.q.norm(), kFiveThirds + 1e-9);
    }
  }
  EXPECT_GT(close, 10);
}
