#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>

#include "mproj/io.hpp"
#include "mproj/report.hpp"
#include "mproj/two_by_two.hpp"
#include "mproj/verify.hpp"

namespace {

using namespace mproj;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr double kMaxOffdiagNorm = 1e3;

// Thrown for input problems that must map to the usage exit code.
struct InputError {
  std::string message;
};

void add_tolerance_flags(CLI::App* cmd, ToleranceConfig& tol) {
  cmd->add_option("--tol-check", tol.tol_check, "residual tolerance for identities")->capture_default_str();
  cmd->add_option("--tol-rank", tol.tol_rank, "relative rank cutoff (0 selects 100*dim*eps)")->capture_default_str();
}

Idempotent load_idempotent(const std::string& path, const ToleranceConfig& tol) {
  try {
    tol.validate();
    return Idempotent::validate(read_matrix_file(path), tol);
  } catch (const Error& e) {
    throw InputError{e.what()};
  }
}

void emit(const std::string& path, const Json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    write_text_file(path, j.dump(2) + "\n");
  }
}

void print_failed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) std::cout << "  FAIL " << c.name << ": residual " << c.residual << " > bound " << c.bound << "\n";
  }
}

int cmd_analyze(const std::string& input, const std::string& output, const ToleranceConfig& tol) {
  const Idempotent q = load_idempotent(input, tol);
  const AnalysisReport r = analyze(q, tol);
  if (!output.empty()) write_text_file(output, to_json(r).dump(2) + "\n");
  const Distances& d = r.distances;
  int passed = 0;
  for (const auto& c : r.checks) passed += c.passed ? 1 : 0;
  std::cout << std::setprecision(10) << "dim " << r.dim << ", idempotent defect " << r.idempotent_defect << "\n"
            << "||Q|| = " << d.norm_q << ", ||I-Q|| = " << d.norm_complement << "\n"
            << "||m(Q)-Q|| = " << d.d_matched << " (closed form " << d.d_matched_closed << ")\n"
            << "||P_R(Q)-Q|| = " << d.d_range << ", ||P_N(Q)-Q|| = " << d.d_null << "\n";
  for (const auto& [name, v] : r.qpp) std::cout << "qpp(" << name << ", Q): " << (v.holds ? "yes" : "no") << "\n";
  std::cout << "checks passed: " << passed << "/" << r.checks.size() << "\n";
  print_failed(r.checks);
  return r.all_passed() ? kExitPass : kExitFail;
}

int cmd_generate(int dim, int rank, double offdiag, std::uint64_t seed, const std::string& output) {
  if (dim < 1) throw InputError{"--dim must be positive"};
  if (rank < 0 || rank > dim) throw InputError{"--rank must lie in [0, dim]"};
  if (!(offdiag >= 0.0 && offdiag <= kMaxOffdiagNorm)) throw InputError{"--offdiag-norm must lie in [0, 1000]"};
  const Idempotent q = random_idempotent(dim, rank, offdiag, seed);
  emit(output, matrix_to_json(q.matrix()));
  return kExitPass;
}

int cmd_verify(const VerifyOptions& opt) {
  if (opt.dim_max < 1) throw InputError{"--dim-max must be positive"};
  if (opt.trials < 0) throw InputError{"--trials must be nonnegative"};
  try {
    opt.tol.validate();
  } catch (const Error& e) {
    throw InputError{e.what()};
  }
  const VerifySummary s = run_verify(opt);
  print_summary(s, std::cout);
  return s.passed() ? kExitPass : kExitFail;
}

int cmd_path(const std::string& input, int samples, const std::string& output, const ToleranceConfig& tol) {
  if (samples < 2) throw InputError{"--samples must be at least 2"};
  const Idempotent q = load_idempotent(input, tol);
  const auto path = homotopy_path(q, samples, tol);
  Json out = Json::array();
  double worst = 0.0;
  for (const auto& s : path) {
    Json rec = matrix_to_json(s.q.matrix());
    rec["t"] = s.t;
    rec["defect"] = s.q.defect();
    worst = std::max(worst, s.q.defect());
    out.push_back(std::move(rec));
  }
  emit(output, out);
  const double bound = scaled_bound(tol, q.norm(), 2);
  const double start = operator_norm(path.front().q.matrix() - matched_projection(q, tol).mq.matrix());
  const double end = operator_norm(path.back().q.matrix() - q.matrix());
  std::cerr << samples << " samples, worst idempotency defect " << worst << ", endpoint residuals " << start << ", "
            << end << "\n";
  return start <= bound && end <= bound ? kExitPass : kExitFail;
}

int cmd_min2x2(double a_re, double a_im, int grid, const std::string& output, const ToleranceConfig& tol) {
  const Complex a(a_re, a_im);
  if (a == Complex(0.0, 0.0)) throw InputError{"a must be nonzero"};
  if (grid < 2) throw InputError{"--grid must be at least 2"};
  const TwoByTwoProblem p = closed_form_p0(a, tol);
  const GridResult g = grid_minimize(a, grid, grid, tol);
  std::vector<CheckResult> checks = p.checks;
  append(checks, g.checks);
  Json jchecks = Json::array();
  for (const auto& c : checks) jchecks.push_back(to_json(c));
  const Json out{{"a", {a.real(), a.imag()}},
                 {"b", p.b},
                 {"theta0", p.theta0},
                 {"t0", p.t0},
                 {"p0", matrix_to_json(p.p0.matrix())},
                 {"closed_form_min", p.optimum},
                 {"grid", grid},
                 {"grid_min", g.min_value},
                 {"argmin_x", g.argmin_x},
                 {"argmin_t", g.argmin_t},
                 {"gap", g.gap},
                 {"tol_grid", g.tol_grid},
                 {"lipschitz_x", g.lipschitz_x},
                 {"lipschitz_t", g.lipschitz_t},
                 {"checks", jchecks},
                 {"all_passed", all_passed(checks)}};
  if (!output.empty()) write_text_file(output, out.dump(2) + "\n");
  std::cout << std::setprecision(10) << "closed-form minimum " << p.optimum << " at t0 = " << p.t0 << "\n"
            << "grid minimum " << g.min_value << " at (x, t) = (" << g.argmin_x << ", " << g.argmin_t << ")\n"
            << "gap " << g.gap << " (tolerance " << g.tol_grid << ")\n";
  print_failed(checks);
  return all_passed(checks) ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Matched projections of idempotent matrices"};
  app.require_subcommand(1);

  ToleranceConfig tol;
  std::string input, output;

  auto* analyze_cmd = app.add_subcommand("analyze", "run every identity check on an idempotent");
  analyze_cmd->add_option("--input", input, "matrix JSON file")->required();
  analyze_cmd->add_option("--output", output, "report JSON file");
  add_tolerance_flags(analyze_cmd, tol);

  int dim = 0, rank = 0;
  double offdiag = 1.0;
  std::uint64_t seed = 0;
  auto* generate_cmd = app.add_subcommand("generate", "write a random idempotent");
  generate_cmd->add_option("--dim", dim)->required();
  generate_cmd->add_option("--rank", rank)->required();
  generate_cmd->add_option("--offdiag-norm", offdiag, "norm of the off-diagonal block")->capture_default_str();
  generate_cmd->add_option("--seed", seed)->capture_default_str();
  generate_cmd->add_option("--output", output, "matrix JSON file (stdout if omitted)");

  VerifyOptions vopt;
  bool sabotage = false;
  auto* verify_cmd = app.add_subcommand("verify", "run the randomized property battery");
  verify_cmd->add_option("--dim-max", vopt.dim_max)->capture_default_str();
  verify_cmd->add_option("--trials", vopt.trials)->capture_default_str();
  verify_cmd->add_option("--seed", vopt.seed)->capture_default_str();
  verify_cmd->add_flag("--sabotage", sabotage)->group("");
  add_tolerance_flags(verify_cmd, vopt.tol);

  int samples = 11;
  auto* path_cmd = app.add_subcommand("path", "sample the homotopy from m(Q) to Q");
  path_cmd->add_option("--input", input, "matrix JSON file")->required();
  path_cmd->add_option("--samples", samples)->capture_default_str();
  path_cmd->add_option("--output", output, "JSON file (stdout if omitted)");
  add_tolerance_flags(path_cmd, tol);

  double a_re = 0.0, a_im = 0.0;
  int grid = 2048;
  auto* min_cmd = app.add_subcommand("min2x2", "closed-form and brute-force 2x2 minimization");
  min_cmd->add_option("--a-re", a_re)->capture_default_str();
  min_cmd->add_option("--a-im", a_im)->capture_default_str();
  min_cmd->add_option("--grid", grid, "grid points per axis")->capture_default_str();
  min_cmd->add_option("--output", output, "report JSON file");
  add_tolerance_flags(min_cmd, tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(input, output, tol);
    if (*generate_cmd) return cmd_generate(dim, rank, offdiag, seed, output);
    if (*verify_cmd) {
      vopt.variant = sabotage ? FormulaVariant::SignFlipped : FormulaVariant::Standard;
      return cmd_verify(vopt);
    }
    if (*path_cmd) return cmd_path(input, samples, output, tol);
    if (*min_cmd) return cmd_min2x2(a_re, a_im, grid, output, tol);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
