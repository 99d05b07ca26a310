#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "mproj/check.hpp"
#include "mproj/matched.hpp"
#include "mproj/norms.hpp"
#include "mproj/two_by_two.hpp"

namespace mproj {

struct VerifyOptions {
  int dim_max = 12;
  int trials = 100;
  std::uint64_t seed = 0;
  ToleranceConfig tol;
  FormulaVariant variant = FormulaVariant::Standard;
  int batch_size = 32;
  int path_samples = 11;
  int projections_per_trial = 5;
  int grid = 64;
};

struct BatteryTally {
  std::string name;
  int passed = 0;
  int run = 0;
};

struct VerifyFailure {
  std::string battery;
  std::uint64_t seed = 0;
  Index dim = 0;
  std::string detail;
};

struct VerifySummary {
  std::vector<BatteryTally> tallies;
  int trials_run = 0;
  std::optional<VerifyFailure> first_failure;

  bool passed() const { return !first_failure.has_value(); }
};

/// Sample parameters of one verification trial.
struct TrialInput {
  std::uint64_t seed = 0;
  Index dim = 1;
  Index rank = 0;
  double offdiag_norm = 1.0;
};

inline TrialInput draw_trial(std::uint64_t seed, int dim_max) {
  std::mt19937_64 rng(seed);
  TrialInput in;
  in.seed = seed;
  in.dim = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(dim_max));
  in.rank = static_cast<Index>(rng() % static_cast<std::uint64_t>(in.dim + 1));
  in.offdiag_norm = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
  return in;
}

namespace detail {

inline std::string first_failed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return c.name + " (residual " + std::to_string(c.residual) + ", bound " + std::to_string(c.bound) + ")";
  }
  return {};
}

}  // namespace detail

/// One verification trial: every property battery on a seeded random input.
/// Returns (battery, failure detail) for each battery; an empty detail means pass.
inline std::vector<std::pair<std::string, std::string>> run_trial(const TrialInput& in, const VerifyOptions& opt) {
  const ToleranceConfig& tol = opt.tol;
  std::mt19937_64 rng(in.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<std::string, std::string>> out;

  const auto run = [&](const std::string& name, const std::function<std::vector<CheckResult>()>& body) {
    std::string detail;
    try {
      detail = detail::first_failed(body());
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    out.emplace_back(name, detail);
  };

  std::optional<Idempotent> q;
  std::optional<MatchedPair> mp;
  run("matched projection", [&] {
    q = random_idempotent(in.dim, in.rank, in.offdiag_norm, rng(), tol);
    mp = matched_projection(*q, tol, opt.variant);
    return mp->invariant_checks(tol);
  });
  const auto need = [&]() -> const MatchedPair& {
    if (!mp) throw Error(ErrorCode::DomainError, "matched projection unavailable");
    return *mp;
  };

  run("route agreement", [&] {
    const MatchedPair& m = need();
    const FactorRoute f = matched_via_factor(m.q, tol);
    const SimilarityWitness w = homotopy_witness(m.q, tol);
    const double bound = scaled_bound(tol, m.q.norm());
    return std::vector<CheckResult>{
        make_check("formula=TT^dagger", operator_norm(m.mq.matrix() - f.tt_dagger), bound),
        make_check("formula=VV*", operator_norm(m.mq.matrix() - f.vv_star), bound),
        make_check("formula=block construction", operator_norm(m.mq.matrix() - w.p.matrix()), bound),
        make_check("P_R(Q)=T^dagger T", operator_norm(range_projection(m.q, tol).matrix() - f.tdagger_t), bound),
        make_check("P_R(Q)=V*V", operator_norm(range_projection(m.q, tol).matrix() - f.vstar_v), bound),
    };
  });
  run("range identities", [&] { return range_identities(need(), tol); });
  run("structural identities", [&] { return structural_identities(need(), tol); });
  run("quasi-projection pairs", [&] {
    const MatchedPair& m = need();
    const QppVerdict v = is_quasi_projection_pair(m.mq, m.q, tol);
    std::vector<CheckResult> c{make_flag("(m(Q),Q) is a qpp", v.holds),
                               make_flag("symmetry closure", qpp_symmetry_closure(m.mq, m.q, tol))};
    for (const ComplexMatrix& p : {range_projection(m.q, tol).matrix(), null_projection(m.q, tol).matrix()}) {
      c.push_back(make_flag("block conditions<=>characterizations",
                            is_quasi_projection_pair(p, m.q.matrix(), tol).equivalence_consistent()));
    }
    return c;
  });
  run("homotopy", [&] {
    const MatchedPair& m = need();
    const SimilarityWitness w = homotopy_witness(m.q, tol);
    std::vector<CheckResult> c{
        make_check("||I-W||<1", std::max(0.0, w.contraction_norm - (1.0 - tol.tol_check)), 0.0),
        make_check("||I-W||^2<=||B||/(||B||+1)", std::max(0.0, w.contraction_norm - w.contraction_bound), tol.tol_check),
        make_check("W^-1 m(Q) W=Q", w.similarity_residual, scaled_bound(tol, m.q.norm(), 2))};
    const auto path = homotopy_path(m.q, opt.path_samples, tol);
    c.push_back(make_check("path starts at m(Q)", operator_norm(path.front().q.matrix() - m.mq.matrix()),
                           scaled_bound(tol, m.q.norm())));
    c.push_back(make_check("path ends at Q", operator_norm(path.back().q.matrix() - m.q.matrix()),
                           scaled_bound(tol, m.q.norm(), 2)));
    return c;
  });
  run("distance identities", [&] { return distance_report(need(), tol).checks; });
  run("projection nonexpansive", [&] {
    const MatchedPair& m = need();
    std::vector<CheckResult> c;
    for (int k = 0; k < opt.projections_per_trial; ++k) {
      const Index r = static_cast<Index>(rng() % static_cast<std::uint64_t>(in.dim + 1));
      c.push_back(projection_nonexpansive(random_projection(in.dim, r, rng(), tol), m, tol));
    }
    return c;
  });
  run("fractional powers", [&] {
    const MatchedPair& m = need();
    const FractionalPowerReport f = fractional_power_limit(m, power_of_two_exponents(10), tol);
    return std::vector<CheckResult>{
        make_flag("m(Q)Qm(Q)>=m(Q)", f.dominates_matched),
        make_check("m(Q)Qm(Q)=(|Q*|+|Q|+Q+Q*)/4", f.quarter_residual, scaled_bound(tol, m.q.norm())),
        make_check("K^(1/1024) near m(Q)", f.gaps.back(), kConvergenceProximity)};
  });
  run("unitary equivariance", [&] {
    const MatchedPair& m = need();
    const ComplexMatrix u = random_unitary(in.dim, rng());
    return std::vector<CheckResult>{
        make_check("m(U*QU)=U*m(Q)U", unitary_equivariance(m.q, u, tol), scaled_bound(tol, m.q.norm()))};
  });

  const Idempotent q2 = random_idempotent(in.dim, static_cast<Index>(rng() % static_cast<std::uint64_t>(in.dim + 1)),
                                          in.offdiag_norm, rng(), tol);
  run("matched projection bounds", [&] { return matched_lipschitz_bounds(need().q, q2, tol).checks; });
  run("fractional power convergence", [&] {
    return convergence_report(need().q, q2, power_of_two_exponents(10), tol).checks;
  });
  run("two-projection construction", [&] {
    const Index r1 = static_cast<Index>(rng() % static_cast<std::uint64_t>(in.dim + 1));
    const Index r2 = static_cast<Index>(rng() % static_cast<std::uint64_t>(in.dim - r1 + 1));
    const Projection p1 = random_projection(in.dim, r1, rng(), tol);
    const Projection p2 = random_projection(in.dim, r2, rng(), tol);
    try {
      return two_projection_construction(p1, p2, tol).checks;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InapplicableHypothesis) return std::vector<CheckResult>{};
      throw;
    }
  });
  run("quasi-projection minimality", [&] {
    const QppSample s = random_qpp(in.dim, in.offdiag_norm, rng(), tol);
    const QppMinimalityReport r = qpp_minimality(s.p, s.q, tol);
    std::vector<CheckResult> c = r.checks;
    c.push_back(make_flag("generated pair is a qpp", r.is_qpp));
    return c;
  });
  run("2x2 optimum", [&] {
    const double mag = std::pow(10.0, std::uniform_real_distribution<double>(-2.0, 2.0)(rng));
    const double phase = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const Complex a = std::polar(mag, phase);
    std::vector<CheckResult> c = closed_form_p0(a, tol).checks;
    append(c, grid_minimize(a, opt.grid, opt.grid, tol).checks);
    return c;
  });
  return out;
}

/// Runs trials in batches; stops after the batch holding the first failure.
inline VerifySummary run_verify(const VerifyOptions& opt) {
  if (opt.dim_max < 1) throw Error(ErrorCode::BadArgument, "dim-max must be positive");
  if (opt.trials < 0) throw Error(ErrorCode::BadArgument, "trials must be nonnegative");
  if (opt.batch_size < 1) throw Error(ErrorCode::BadArgument, "batch size must be positive");
  opt.tol.validate();

  VerifySummary s;
  const auto tally = [&](const std::string& name) -> BatteryTally& {
    for (auto& t : s.tallies) {
      if (t.name == name) return t;
    }
    s.tallies.push_back(BatteryTally{name});
    return s.tallies.back();
  };

  for (int start = 0; start < opt.trials && !s.first_failure; start += opt.batch_size) {
    const int stop = std::min(opt.trials, start + opt.batch_size);
    for (int trial = start; trial < stop; ++trial) {
      const TrialInput in = draw_trial(opt.seed ^ static_cast<std::uint64_t>(trial), opt.dim_max);
      for (const auto& [name, detail] : run_trial(in, opt)) {
        BatteryTally& t = tally(name);
        ++t.run;
        if (detail.empty()) {
          ++t.passed;
        } else if (!s.first_failure) {
          s.first_failure = VerifyFailure{name, in.seed, in.dim, detail};
        }
      }
      ++s.trials_run;
    }
  }
  return s;
}

inline void print_summary(const VerifySummary& s, std::ostream& os) {
  os << "trials run: " << s.trials_run << "\n";
  for (const auto& t : s.tallies) {
    os << "  " << t.name << ": " << t.passed << "/" << t.run << (t.passed == t.run ? "" : "  FAIL") << "\n";
  }
  if (s.first_failure) {
    const VerifyFailure& f = *s.first_failure;
    os << "first failure: battery=\"" << f.battery << "\" seed=" << f.seed << " dim=" << f.dim << "\n  " << f.detail
       << "\n";
  } else {
    os << "all checks passed\n";
  }
}

}  // namespace mproj
