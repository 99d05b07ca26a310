#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "mproj/check.hpp"
#include "mproj/io.hpp"
#include "mproj/matched.hpp"
#include "mproj/norms.hpp"

namespace mproj {

/// Hex SHA-256 of a byte string.
inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::DomainError, "SHA-256 failed");
  }
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

/// Digest of the canonical JSON form of a matrix.
inline std::string matrix_digest(const ComplexMatrix& m) { return sha256_hex(matrix_to_json(m).dump()); }

struct QppSummary {
  bool holds = false;
  bool block_conditions_hold = false;
  bool characterizations_hold = false;
  double bound = 0.0;
  std::map<std::string, double> residuals;

  friend bool operator==(const QppSummary&, const QppSummary&) = default;
};

inline QppSummary summarize(const QppVerdict& v) {
  return QppSummary{v.holds, v.block_conditions_hold, v.characterizations_hold, v.bound, v.residuals};
}

struct Distances {
  double norm_q = 0.0;
  double norm_complement = 0.0;
  double d_matched = 0.0;
  double d_matched_closed = 0.0;
  double d_range = 0.0;
  double d_null = 0.0;

  friend bool operator==(const Distances&, const Distances&) = default;
};

struct AnalysisReport {
  std::string input_digest;
  Index dim = 0;
  double idempotent_defect = 0.0;
  ComplexMatrix matched;
  Distances distances;
  std::map<std::string, QppSummary> qpp;  // keyed by "m(Q)", "P_R(Q)", "P_N(Q)"
  std::vector<CheckResult> checks;

  bool all_passed() const { return mproj::all_passed(checks); }

  friend bool operator==(const AnalysisReport& a, const AnalysisReport& b) {
    return a.input_digest == b.input_digest && a.dim == b.dim && a.idempotent_defect == b.idempotent_defect &&
           a.matched == b.matched && a.distances == b.distances && a.qpp == b.qpp && a.checks == b.checks;
  }
};

/// Runs every identity battery on a validated idempotent.
inline AnalysisReport analyze(const Idempotent& q, const ToleranceConfig& tol) {
  AnalysisReport r;
  r.input_digest = matrix_digest(q.matrix());
  r.dim = q.dim();
  r.idempotent_defect = q.defect();

  const MatchedPair mp = matched_projection(q, tol);
  r.matched = mp.mq.matrix();
  append(r.checks, mp.invariant_checks(tol));
  append(r.checks, range_identities(mp, tol));
  append(r.checks, structural_identities(mp, tol));

  const DistanceReport dr = distance_report(mp, tol);
  r.distances = Distances{dr.norm_q, dr.norm_complement, dr.d_matched, dr.d_matched_closed, dr.d_range, dr.d_null};
  append(r.checks, dr.checks);

  const std::pair<std::string, ComplexMatrix> partners[] = {
      {"m(Q)", mp.mq.matrix()},
      {"P_R(Q)", range_projection(q, tol).matrix()},
      {"P_N(Q)", null_projection(q, tol).matrix()},
  };
  for (const auto& [name, p] : partners) {
    const QppVerdict v = is_quasi_projection_pair(p, q.matrix(), tol);
    r.qpp[name] = summarize(v);
    r.checks.push_back(make_flag("qpp(" + name + ",Q): block conditions<=>characterizations", v.equivalence_consistent()));
  }
  const QppVerdict matched_v = is_quasi_projection_pair(mp.mq, q, tol);
  for (const auto& [key, residual] : matched_v.residuals) {
    r.checks.push_back(make_check("qpp(m(Q),Q): " + key, residual, matched_v.bound));
  }
  r.checks.push_back(make_flag("qpp(m(Q),Q): symmetry closure", qpp_symmetry_closure(mp.mq, q, tol)));
  return r;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline Json to_json(const CheckResult& c) {
  return Json{{"name", c.name}, {"residual", c.residual}, {"bound", c.bound}, {"passed", c.passed}};
}

inline CheckResult check_from_json(const Json& j) {
  return CheckResult{j.at("name").get<std::string>(), j.at("residual").get<double>(), j.at("bound").get<double>(),
                     j.at("passed").get<bool>()};
}

inline Json to_json(const QppSummary& q) {
  return Json{{"holds", q.holds},
              {"block_conditions_hold", q.block_conditions_hold},
              {"characterizations_hold", q.characterizations_hold},
              {"bound", q.bound},
              {"residuals", q.residuals}};
}

inline QppSummary qpp_from_json(const Json& j) {
  return QppSummary{j.at("holds").get<bool>(), j.at("block_conditions_hold").get<bool>(),
                    j.at("characterizations_hold").get<bool>(), j.at("bound").get<double>(),
                    j.at("residuals").get<std::map<std::string, double>>()};
}

inline Json to_json(const AnalysisReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  Json qpp = Json::object();
  for (const auto& [k, v] : r.qpp) qpp[k] = to_json(v);
  const Distances& d = r.distances;
  return Json{{"input_digest", r.input_digest},
              {"dim", r.dim},
              {"idempotent_defect", r.idempotent_defect},
              {"matched_projection", matrix_to_json(r.matched)},
              {"distances",
               {{"norm_q", d.norm_q},
                {"norm_complement", d.norm_complement},
                {"d_matched", d.d_matched},
                {"d_matched_closed", d.d_matched_closed},
                {"d_range", d.d_range},
                {"d_null", d.d_null}}},
              {"qpp", std::move(qpp)},
              {"checks", std::move(checks)},
              {"all_passed", r.all_passed()}};
}

inline AnalysisReport report_from_json(const Json& j) {
  try {
    AnalysisReport r;
    r.input_digest = j.at("input_digest").get<std::string>();
    r.dim = j.at("dim").get<Index>();
    r.idempotent_defect = j.at("idempotent_defect").get<double>();
    r.matched = matrix_from_json(j.at("matched_projection"));
    const Json& d = j.at("distances");
    r.distances = Distances{d.at("norm_q").get<double>(),    d.at("norm_complement").get<double>(),
                            d.at("d_matched").get<double>(), d.at("d_matched_closed").get<double>(),
                            d.at("d_range").get<double>(),   d.at("d_null").get<double>()};
    for (const auto& [k, v] : j.at("qpp").items()) r.qpp[k] = qpp_from_json(v);
    for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace mproj
