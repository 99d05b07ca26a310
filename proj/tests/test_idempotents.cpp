#include <gtest/gtest.h>

#include <cmath>

#include "mproj/idempotents.hpp"
#include "oracles.hpp"

using namespace mproj;

namespace {

const ToleranceConfig kTol;

ComplexMatrix m2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::BadArgument;
}

}  // namespace

TEST(Idempotent, Validation) {
  const Idempotent q = Idempotent::validate(m2(1.0, 1.0, 0.0, 0.0), kTol);
  EXPECT_EQ(q.defect(), 0.0);
  EXPECT_NEAR(q.norm(), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(code_of([] { Idempotent::validate(m2(1.0, 1.0, 0.0, 0.5), kTol); }), ErrorCode::NotIdempotent);
  EXPECT_EQ(code_of([] { Idempotent::validate(ComplexMatrix::Zero(2, 3), kTol); }), ErrorCode::NotSquare);
}

TEST(Projection, Validation) {
  EXPECT_NO_THROW(Projection::validate(m2(0.5, 0.5, 0.5, 0.5), kTol));
  EXPECT_EQ(code_of([] { Projection::validate(m2(1.0, 1.0, 0.0, 0.0), kTol); }), ErrorCode::NotProjection);
}

TEST(RangeProjection, Examples) {
  const Projection p = random_projection(5, 2, 7);
  EXPECT_LT(operator_norm(range_projection(p.as_idempotent(kTol), kTol).matrix() - p.matrix()), 1e-13);

  const Idempotent q = Idempotent::validate(m2(1.0, 1.0, 0.0, 0.0), kTol);
  EXPECT_LT(operator_norm(range_projection(q, kTol).matrix() - m2(1.0, 0.0, 0.0, 0.0)), 1e-15);

  const Idempotent zero = Idempotent::validate(ComplexMatrix::Zero(3, 3), kTol);
  EXPECT_LT(operator_norm(range_projection(zero, kTol).matrix()), 1e-15);
}

TEST(NullProjection, Examples) {
  const Projection p = random_projection(5, 3, 8);
  EXPECT_LT(operator_norm(null_projection(p.as_idempotent(kTol), kTol).matrix() - (identity(5) - p.matrix())), 1e-13);

  const Idempotent q = Idempotent::validate(m2(1.0, 1.0, 0.0, 0.0), kTol);
  EXPECT_LT(operator_norm(null_projection(q, kTol).matrix() - 0.5 * m2(1.0, -1.0, -1.0, 1.0)), 1e-15);

  const Idempotent id = Idempotent::validate(identity(3), kTol);
  EXPECT_LT(operator_norm(null_projection(id, kTol).matrix()), 1e-15);
}

TEST(RangeProjection, PropertiesAndQrOracle) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Index dim = 1 + static_cast<Index>(s % 12);
    const Index rank = static_cast<Index>(s % static_cast<std::uint64_t>(dim + 1));
    const Idempotent q = random_idempotent(dim, rank, std::pow(10.0, -2.0 + 4.0 * (s % 9) / 8.0), s);
    const ComplexMatrix pr = range_projection(q, kTol).matrix();
    const ComplexMatrix pn = null_projection(q, kTol).matrix();
    const ComplexMatrix& qm = q.matrix();
    const double b = kTol.tol_check * (1.0 + q.norm() * q.norm());
    EXPECT_LE(operator_norm(pr * qm - qm), b);
    EXPECT_LE(operator_norm(qm * pr - pr), b);
    EXPECT_LE(operator_norm(pn - range_projection(complement(q, kTol), kTol).matrix()), b);
    EXPECT_LE(operator_norm(pr - oracle::column_space_projector(qm)), 1e-8);
    EXPECT_LE(operator_norm(pn - (identity(dim) - oracle::column_space_projector(qm.adjoint()))), 1e-8);
  }
}

TEST(RangeProjection, SingularPencil) {
  // Far from idempotent but accepted with a loose tolerance: the pencil has
  // eigenvalues inside (-1/2, 1/2).
  ToleranceConfig loose;
  loose.tol_check = 10.0;
  const Idempotent bad = Idempotent::validate(0.5 * identity(2), loose);
  EXPECT_EQ(code_of([&] { range_projection(bad, loose); }), ErrorCode::SingularPencil);
}

TEST(RandomIdempotent, Examples) {
  EXPECT_EQ(operator_norm(random_idempotent(4, 0, 3.0, 1).matrix()), 0.0);
  EXPECT_LT(operator_norm(random_idempotent(4, 4, 3.0, 1).matrix() - identity(4)), 1e-14);
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    EXPECT_NEAR(random_idempotent(2, 1, 1.0, seed).norm(), std::sqrt(2.0), 1e-12);
  }
  EXPECT_EQ(code_of([] { random_idempotent(3, 4, 1.0, 0); }), ErrorCode::BadRank);
  EXPECT_EQ(code_of([] { random_idempotent(3, -1, 1.0, 0); }), ErrorCode::BadRank);
}

TEST(RandomIdempotent, NormAndDeterminism) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Index dim = 2 + static_cast<Index>(s % 15);
    const Index rank = 1 + static_cast<Index>(s % static_cast<std::uint64_t>(dim - 1));
    const double nu = std::pow(10.0, -2.0 + 4.0 * (s % 11) / 10.0);
    const Idempotent q = random_idempotent(dim, rank, nu, s);
    EXPECT_NEAR(q.norm(), std::sqrt(1.0 + nu * nu), 1e-10 * (1.0 + nu));
    EXPECT_EQ(q.matrix(), random_idempotent(dim, rank, nu, s).matrix());
  }
}

TEST(RandomUnitary, IsUnitary) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ComplexMatrix u = random_unitary(1 + static_cast<Index>(s % 10), s);
    EXPECT_LT(operator_norm(u.adjoint() * u - identity(u.rows())), 1e-13);
  }
}

TEST(BlockForm, Examples) {
  const Projection p = random_projection(5, 2, 4);
  BlockForm bf = block_form(p.matrix(), p, kTol);
  EXPECT_EQ(bf.split, 2);
  EXPECT_LT(operator_norm(bf.top_left - identity(2)), 1e-13);
  EXPECT_LT(operator_norm(bf.top_right), 1e-13);
  EXPECT_LT(operator_norm(bf.bottom_left), 1e-13);
  EXPECT_LT(operator_norm(bf.bottom_right), 1e-13);

  bf = block_form(identity(5), p, kTol);
  EXPECT_LT(operator_norm(bf.assembled() - identity(5)), 1e-13);

  const Idempotent q = random_idempotent(6, 2, 3.0, 5);
  bf = block_form(q.matrix(), range_projection(q, kTol), kTol);
  EXPECT_LT(operator_norm(bf.bottom_left), kTol.tol_check * (1.0 + q.norm()));
  EXPECT_LT(operator_norm(bf.bottom_right), kTol.tol_check * (1.0 + q.norm()));
  EXPECT_LT(operator_norm(bf.top_left - identity(2)), kTol.tol_check * (1.0 + q.norm()));
  EXPECT_NEAR(operator_norm(bf.top_right), 3.0, 1e-10);
}

TEST(BlockForm, RoundTrip) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Index dim = 1 + static_cast<Index>(s % 10);
    const Projection p = random_projection(dim, static_cast<Index>(s % static_cast<std::uint64_t>(dim + 1)), s);
    std::mt19937_64 rng(s);
    const ComplexMatrix t = random_gaussian(dim, dim, rng);
    const BlockForm bf = block_form(t, p, kTol);
    EXPECT_LE(operator_norm(bf.basis.adjoint() * bf.basis - identity(dim)), kTol.tol_check);
    EXPECT_LE(operator_norm(bf.reassemble() - t), kTol.tol_check * (1.0 + operator_norm(t)));
  }
}
