#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "mproj/linalg.hpp"

namespace mproj {

using Json = nlohmann::json;

/// {"dim": [n, n], "entries": [[[re, im], ...], ...]}
inline Json matrix_to_json(const ComplexMatrix& m) {
  Json entries = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    entries.push_back(std::move(row));
  }
  return Json{{"dim", {m.rows(), m.cols()}}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  const auto fail = [](const std::string& what) { throw Error(ErrorCode::ParseError, what); };
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) fail("matrix needs \"dim\" and \"entries\"");
  const Json& dim = j.at("dim");
  if (!dim.is_array() || dim.size() != 2 || !dim[0].is_number_integer() || !dim[1].is_number_integer()) {
    fail("\"dim\" must be a pair of integers");
  }
  const auto rows = dim[0].get<long long>();
  const auto cols = dim[1].get<long long>();
  if (rows < 1 || cols < 1) fail("\"dim\" entries must be positive");
  if (rows != cols) throw Error(ErrorCode::NotSquare, "dim is " + std::to_string(rows) + "x" + std::to_string(cols));
  const Json& entries = j.at("entries");
  if (!entries.is_array() || static_cast<long long>(entries.size()) != rows) fail("\"entries\" row count differs from dim");
  ComplexMatrix m(rows, cols);
  for (long long i = 0; i < rows; ++i) {
    const Json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<long long>(row.size()) != cols) fail("row " + std::to_string(i) + " has the wrong length");
    for (long long k = 0; k < cols; ++k) {
      const Json& z = row[static_cast<std::size_t>(k)];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        fail("entry (" + std::to_string(i) + "," + std::to_string(k) + ") is not a [re, im] pair");
      }
      m(i, k) = Complex(z[0].get<double>(), z[1].get<double>());
    }
  }
  if (!all_finite(m)) throw Error(ErrorCode::NotFinite, "matrix has a NaN or infinite entry");
  return m;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadArgument, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::BadArgument, "write to " + path + " failed");
}

inline ComplexMatrix read_matrix_file(const std::string& path) { return matrix_from_json(parse_json_text(read_text_file(path))); }

inline void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
  write_text_file(path, matrix_to_json(m).dump(2) + "\n");
}

}  // namespace mproj
