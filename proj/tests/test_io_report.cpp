#include <gtest/gtest.h>

#include <filesystem>

#include "mproj/io.hpp"
#include "mproj/report.hpp"

using namespace mproj;

namespace {

const ToleranceConfig kTol;

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mproj_test_" + name);
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

TEST(MatrixJson, Format) {
  ComplexMatrix m(2, 2);
  m << Complex(1.0, 0.5), 2.0, Complex(0.0, -3.0), 0.1;
  const Json j = matrix_to_json(m);
  EXPECT_EQ(j["dim"], Json::array({2, 2}));
  EXPECT_EQ(j["entries"][0][0], Json::array({1.0, 0.5}));
  EXPECT_EQ(j["entries"][1][0], Json::array({0.0, -3.0}));
}

TEST(MatrixJson, ExactRoundTrip) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ComplexMatrix m = random_idempotent(1 + static_cast<Index>(s % 9), static_cast<Index>(s % 2), 1.7, s).matrix();
    const ComplexMatrix back = matrix_from_json(parse_json_text(matrix_to_json(m).dump()));
    EXPECT_EQ(back, m);
  }
}

TEST(MatrixJson, Errors) {
  EXPECT_EQ(code_of([] { parse_json_text("{not json"); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { matrix_from_json(Json{{"dim", {2, 2}}}); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { matrix_from_json(parse_json_text(R"({"dim":[1,2],"entries":[[[1,0],[0,0]]]})")); }),
            ErrorCode::NotSquare);
  EXPECT_EQ(code_of([] { matrix_from_json(parse_json_text(R"({"dim":[2,2],"entries":[[[1,0]]]})")); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { matrix_from_json(parse_json_text(R"({"dim":[1,1],"entries":[[[1,"x"]]]})")); }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { read_text_file("/nonexistent/mproj.json"); }), ErrorCode::ParseError);
}

TEST(MatrixFile, WriteRead) {
  const auto path = temp_file("matrix.json");
  const ComplexMatrix m = random_idempotent(5, 2, 3.0, 8).matrix();
  write_matrix_file(path.string(), m);
  EXPECT_EQ(read_matrix_file(path.string()), m);
  std::filesystem::remove(path);
}

TEST(Digest, Sha256) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(AnalysisReport, CanonicalAndProjection) {
  ComplexMatrix q(2, 2);
  q << 1.0, 1.0, 0.0, 0.0;
  const AnalysisReport r = analyze(Idempotent::validate(q, kTol), kTol);
  EXPECT_NEAR(r.distances.d_matched, std::sqrt(2.0) / 2.0, 1e-12);
  EXPECT_TRUE(r.all_passed());
  EXPECT_TRUE(r.qpp.at("m(Q)").holds);
  EXPECT_FALSE(r.qpp.at("P_R(Q)").holds);

  const Projection p = random_projection(4, 2, 3);
  const AnalysisReport rp = analyze(p.as_idempotent(kTol), kTol);
  EXPECT_LT(rp.distances.d_matched, 1e-12);
  EXPECT_LT(rp.distances.d_range, 1e-12);
  EXPECT_TRUE(rp.all_passed());
}

TEST(AnalysisReport, JsonRoundTrip) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Idempotent q = random_idempotent(1 + static_cast<Index>(s % 8), static_cast<Index>(s % 3) % (1 + static_cast<Index>(s % 8)),
                                           std::pow(10.0, -2.0 + (s % 5)), s);
    const AnalysisReport r = analyze(q, kTol);
    const AnalysisReport back = report_from_json(parse_json_text(to_json(r).dump(2)));
    EXPECT_TRUE(back == r) << "seed " << s;
    EXPECT_EQ(to_json(back).dump(), to_json(r).dump());
  }
  EXPECT_EQ(code_of([] { report_from_json(Json{{"dim", 3}}); }), ErrorCode::ParseError);
}

TEST(AnalysisReport, Deterministic) {
  const Idempotent q = random_idempotent(7, 3, 4.0, 99);
  EXPECT_EQ(to_json(analyze(q, kTol)).dump(), to_json(analyze(q, kTol)).dump());
}
