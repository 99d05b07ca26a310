#include <gtest/gtest.h>

#include <sstream>

#include "mproj/verify.hpp"

using namespace mproj;

TEST(Verify, ZeroTrialsPassVacuously) {
  VerifyOptions opt;
  opt.trials = 0;
  const VerifySummary s = run_verify(opt);
  EXPECT_TRUE(s.passed());
  EXPECT_EQ(s.trials_run, 0);
}

TEST(Verify, SmallBatteryPasses) {
  VerifyOptions opt;
  opt.trials = 24;
  opt.dim_max = 8;
  opt.seed = 3;
  const VerifySummary s = run_verify(opt);
  std::ostringstream os;
  print_summary(s, os);
  EXPECT_TRUE(s.passed()) << os.str();
  EXPECT_EQ(s.trials_run, 24);
  EXPECT_EQ(s.tallies.size(), 15u);
  for (const auto& t : s.tallies) EXPECT_EQ(t.run, 24) << t.name;
}

TEST(Verify, SabotageFailsInFirstBatch) {
  VerifyOptions opt;
  opt.trials = 500;
  opt.seed = 7;
  opt.variant = FormulaVariant::SignFlipped;
  const VerifySummary s = run_verify(opt);
  ASSERT_FALSE(s.passed());
  EXPECT_LE(s.trials_run, opt.batch_size);
  EXPECT_FALSE(s.first_failure->battery.empty());
}

TEST(Verify, Deterministic) {
  VerifyOptions opt;
  opt.trials = 6;
  opt.seed = 11;
  std::ostringstream a, b;
  print_summary(run_verify(opt), a);
  print_summary(run_verify(opt), b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Verify, DrawTrialRanges) {
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const TrialInput in = draw_trial(s, 12);
    EXPECT_GE(in.dim, 1);
    EXPECT_LE(in.dim, 12);
    EXPECT_GE(in.rank, 0);
    EXPECT_LE(in.rank, in.dim);
    EXPECT_GE(in.offdiag_norm, 1e-2);
    EXPECT_LE(in.offdiag_norm, 1e2);
  }
}

TEST(Verify, RejectsBadOptions) {
  VerifyOptions opt;
  opt.dim_max = 0;
  EXPECT_THROW(run_verify(opt), Error);
  opt = VerifyOptions{};
  opt.trials = -1;
  EXPECT_THROW(run_verify(opt), Error);
}
