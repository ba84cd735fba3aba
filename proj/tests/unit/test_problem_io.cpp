#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "radplap/errors.hpp"
#include "radplap/presets.hpp"
#include "radplap/problem_io.hpp"

using namespace radplap;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const SpecError& e) {
    return e.field();
  }
  return "<no error>";
}

std::string message_of(const std::string& text) {
  try {
    parse_problem(text);
  } catch (const SpecError& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(ProblemIo, ParsesMinimalSpec) {
  const auto ps = parse_problem(R"({"N": 3, "p": 2, "R1": 1, "R2": "inf",
    "v": [{"lo": 1, "hi": "inf", "a": 0.5}],
    "w": [{"lo": 1, "hi": 2, "a": -0.5}, {"lo": 2, "hi": "inf", "c": 0.25, "b": -4}]})");
  EXPECT_EQ(ps.N(), 3);
  EXPECT_TRUE(ps.exterior());
  EXPECT_DOUBLE_EQ(ps.v()(2.0), 1.0);
  EXPECT_DOUBLE_EQ(ps.w()(4.0), 0.25 / 256.0);
  EXPECT_FALSE(ps.lambda().has_value());
}

TEST(ProblemIo, RoundTripPreservesPresets) {
  for (const auto& name : preset_names()) {
    const auto ps = preset_by_name(name);
    const auto text = problem_to_json(ps);
    const auto back = parse_problem(text);
    EXPECT_EQ(problem_to_json(back), text) << name;
    EXPECT_EQ(problem_hash(back), problem_hash(ps)) << name;
  }
}

TEST(ProblemIo, HashIgnoresFormattingAndKeyOrder) {
  const auto a = parse_problem(R"({"N":1,"p":2,"R1":1,"R2":2,"v":[{"lo":1,"hi":2}],"w":[{"lo":1,"hi":2}]})");
  const auto b = parse_problem(R"({
    "w": [{"hi": 2, "lo": 1, "c": 1}],
    "v": [{"lo": 1, "hi": 2, "a": 0}],
    "R2": 2, "R1": 1, "p": 2.0, "N": 1
  })");
  EXPECT_EQ(problem_hash(a), problem_hash(b));
  EXPECT_EQ(problem_hash(a).size(), 16u);
  EXPECT_NE(problem_hash(a), problem_hash(a.with_lambda(3.0)));
}

TEST(ProblemIo, FnvReferenceVectors) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(ProblemIo, ErrorFieldsArePointers) {
  EXPECT_EQ(field_of(R"({"p":2,"R1":1,"R2":2,"v":[{"lo":1,"hi":2}],"w":[{"lo":1,"hi":2}]})"), "/N");
  EXPECT_EQ(field_of(R"({"N":1.5,"p":2,"R1":1,"R2":2,"v":[{"lo":1,"hi":2}],"w":[{"lo":1,"hi":2}]})"), "/N");
  EXPECT_EQ(field_of(R"({"N":1,"p":0.5,"R1":1,"R2":2,"v":[{"lo":1,"hi":2}],"w":[{"lo":1,"hi":2}]})"), "/p");
  EXPECT_EQ(field_of(R"({"N":1,"p":2,"R1":1,"R2":2,"v":[{"lo":1,"hi":2,"c":-1}],"w":[{"lo":1,"hi":2}]})"),
            "/v/0/c");
  EXPECT_EQ(field_of(R"({"N":1,"p":2,"R1":1,"R2":3,"v":[{"lo":1,"hi":3}],
    "w":[{"lo":1,"hi":2},{"lo":2,"hi":1.5}]})"),
            "/w/1/hi");
  EXPECT_EQ(field_of(R"({"N":1,"p":2,"R1":1,"R2":2,"v":[{"lo":1,"hi":"big"}],"w":[{"lo":1,"hi":2}]})"),
            "/v/0/hi");
  EXPECT_EQ(field_of(R"({"N":1,"p":2,"R1":1,"R2":2,"v":[],"w":[{"lo":1,"hi":2}]})"), "/v");
  EXPECT_EQ(field_of(R"({"N":1,"p":2,"R1":1,"R2":2,"v":[{"lo":1,"hi":2}],"w":[{"lo":1,"hi":2}],
    "lambda":-1})"),
            "/lambda");
}

TEST(ProblemIo, SyntaxErrorsReportLine) {
  const auto msg = message_of("{\n  \"N\": 1,\n  \"p\": 2,,\n}");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(ProblemIo, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "radplap_problem_io_test.json";
  {
    std::ofstream out(path);
    out << problem_to_json(singular_exterior());
  }
  EXPECT_EQ(problem_hash(load_problem(path)), problem_hash(singular_exterior()));
  std::filesystem::remove(path);
  EXPECT_THROW(load_problem(path), SpecError);
}
