#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "edgeguard/cli/commands.hpp"
#include "edgeguard/cli/family_file.hpp"
#include "edgeguard/cli/report.hpp"
#include "edgeguard/manipulator.hpp"
#include "json.hpp"

using namespace edgeguard;
using namespace edgeguard::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "edgeguard");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("edgeguard_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

  fs::path dir_;
};

const char* kScalarBorderline = R"({
  "n": 1,
  "n_deg": 2,
  "A": [[[1]]],
  "C": [[[1]]],
  "B": [[[1, 0, 1]]],
  "D": [[[0, [0, 1]]]]
})";

}  // namespace

TEST_F(CliFiles, ExampleRoundTripsByteForByte) {
  const std::string path = (dir_ / "m.json").string();
  ASSERT_EQ(run_cli({"example", "manipulator", "--epsilon", "0.1", "--emit", path}).code, kExitStable);
  std::ifstream in(path);
  const std::string first((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const FamilyFile parsed = parse_family_file(first);
  EXPECT_EQ(emit_family_file(parsed), first);
  ASSERT_TRUE(parsed.scaled.has_value());
  ASSERT_TRUE(parsed.epsilon.has_value());
  EXPECT_EQ(*parsed.epsilon, 0.1);
  EXPECT_EQ(parsed.family.d(0, 0), manipulator_family(0.1).d(0, 0));
}

TEST_F(CliFiles, NominalAnalyzeIsStable) {
  const std::string path = (dir_ / "m0.json").string();
  ASSERT_EQ(run_cli({"example", "manipulator", "--epsilon", "0", "--emit", path}).code, kExitStable);
  for (const char* set : {"minimal", "kd", "oracle"}) {
    const auto r = run_cli({"analyze", path, "--set", set, "--grid", "9", "--output", "json"});
    EXPECT_EQ(r.code, kExitStable) << set << r.err;
    EXPECT_TRUE(nlohmann::json::parse(r.out)["stable"].get<bool>());
  }
}

TEST_F(CliFiles, UnstableAnalyzePrintsWitness) {
  const auto r = run_cli({"example", "manipulator", "--epsilon", "0.1", "--analyze", "--grid", "9", "--output", "json",
                          "--no-timing"});
  EXPECT_EQ(r.code, kExitUnstable);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "unstable");
  EXPECT_EQ(j["patterns"], 7);
  EXPECT_FALSE(j.contains("wall_time_ms"));
  for (const char* key : {"problem", "lambdas", "polynomial", "reason", "rightmost_root"}) {
    EXPECT_TRUE(j["witness"].contains(key)) << key;
  }
  for (const char* key : {"stable", "set", "max_dimension", "problems_checked", "routh_evaluations", "marginal"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST_F(CliFiles, InputErrorsExitThree) {
  EXPECT_EQ(run_cli({"example", "manipulator", "--epsilon", "1.1"}).code, kExitInputError);
  EXPECT_EQ(run_cli({"example", "robot"}).code, kExitInputError);
  EXPECT_EQ(run_cli({"analyze", (dir_ / "missing.json").string()}).code, kExitInputError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitInputError);
  const std::string reversed = write("rev.json", R"({"n": 1, "n_deg": 1, "A": [[[1]]], "C": [[[1]]],
    "B": [[[[2, 1], 1]]], "D": [[[1]]]})");
  const auto r = run_cli({"analyze", reversed});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("/B/0/0/0"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"analyze", write("syntax.json", "{\"n\": 1,")}).code, kExitInputError);
  EXPECT_EQ(run_cli({"analyze", write("extra.json", R"({"n": 1, "n_deg": 1, "A": [[[1]]], "C": [[[1]]],
    "B": [[[0, 1]]], "D": [[[1]]], "bogus": 1})")}).code, kExitInputError);
}

TEST_F(CliFiles, AssumptionAViolationExitsThree) {
  const auto r = run_cli({"analyze", write("a.json", R"({"n": 1, "n_deg": 1, "A": [[[1]]], "C": [[[1]]],
    "B": [[[1, [-1, 1]]]], "D": [[[1]]]})")});
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("witness"), std::string::npos) << r.err;
}

TEST_F(CliFiles, MarginNeedsScale) {
  EXPECT_EQ(run_cli({"margin", write("plain.json", kScalarBorderline)}).code, kExitInputError);
}

TEST_F(CliFiles, MarginWithZeroScaleClampsToOne) {
  FamilyFile file;
  file.family = manipulator_family(0.0);
  file.scaled = manipulator_template();
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      if (file.scaled->d_scale(i, j)) {
        for (auto& c : *file.scaled->d_scale(i, j)) c.spread = 0.0;
      }
    }
  }
  const auto r = run_cli({"margin", write("z.json", emit_family_file(file)), "--grid", "5", "--output", "json"});
  EXPECT_EQ(r.code, kExitStable) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["epsilon"], 1.0);
}

TEST_F(CliFiles, MarginUnstableAtLowerEnd) {
  FamilyFile file;
  file.scaled = manipulator_template();
  (*file.scaled->d_scale(0, 0))[0].center = -5.11;
  file.family = file.scaled->at(0.0);
  EXPECT_EQ(run_cli({"margin", write("u.json", emit_family_file(file)), "--grid", "5"}).code, kExitUnstable);
}

TEST_F(CliFiles, CompareFlagsBorderlineFamily) {
  const auto r = run_cli({"compare", write("b.json", kScalarBorderline), "--grid", "9", "--output", "json"});
  EXPECT_EQ(r.code, kExitMarginal) << r.out << r.err;
  EXPECT_FALSE(nlohmann::json::parse(r.out)["agree"].get<bool>());
}

TEST_F(CliFiles, ComparePointFamily) {
  FamilyFile file;
  file.family = manipulator_family(0.0);
  file.family.b(0, 1) = IntervalPolynomial::Point(Polynomial::Monomial(1, 3));
  file.family.b(1, 0) = IntervalPolynomial::Point(Polynomial::Monomial(-1, 3));
  const auto r = run_cli({"compare", write("p.json", emit_family_file(file)), "--output", "json"});
  EXPECT_EQ(r.code, kExitStable) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["sets"].size(), 3u);
  for (const auto& s : j["sets"]) EXPECT_EQ(s["verdict"]["problems_checked"], 1) << s["set"];
}

TEST_F(CliFiles, CountsOnExample) {
  const std::string path = (dir_ / "m.json").string();
  ASSERT_EQ(run_cli({"example", "manipulator", "--epsilon", "0.5", "--emit", path}).code, kExitStable);
  const auto j = nlohmann::json::parse(run_cli({"counts", path, "--output", "json"}).out);
  EXPECT_EQ(j["minimal"]["patterns"], 7);
  EXPECT_EQ(j["kd"]["patterns"], 2);
  EXPECT_EQ(j["minimal"]["max_dimension"], 2);
  EXPECT_EQ(j["kd"]["max_dimension"], 4);
}

TEST_F(CliFiles, ValueSetCsv) {
  const std::string fam = (dir_ / "m.json").string(), csv = (dir_ / "v.csv").string();
  ASSERT_EQ(run_cli({"example", "manipulator", "--epsilon", "0", "--emit", fam}).code, kExitStable);
  run_cli({"analyze", fam, "--grid", "3", "--freq-points", "4", "--emit-valueset", csv});
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_NE(header.find("omega"), std::string::npos);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 4 * 9);
}

TEST(CliKharitonov, CubicVertices) {
  const auto r = run_cli({"kharitonov", "[[1,2],[3,4],[5,6],[7,8]]"});
  EXPECT_EQ(r.code, kExitStable);
  EXPECT_NE(r.out.find("r1  1 + 3s + 6s^2 + 8s^3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("r4  2 + 4s + 5s^2 + 7s^3"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("(3,1)  r3 -- r1"), std::string::npos) << r.out;
}

TEST(CliKharitonov, PointPolynomial) {
  const auto r = run_cli({"kharitonov", "[[1,1]]"});
  EXPECT_EQ(r.code, kExitStable);
  EXPECT_NE(r.out.find("r1  1\n"), std::string::npos);
  EXPECT_NE(r.out.find("none"), std::string::npos);
}

TEST(CliKharitonov, ManipulatorD11AtTenPercent) {
  const auto r = run_cli({"kharitonov", "[[4.599, 5.621], [5.508, 6.732], [5.463, 6.677]]"});
  EXPECT_NE(r.out.find("r1  4.599 + 5.508s + 6.677s^2"), std::string::npos) << r.out;
  EXPECT_EQ(run_cli({"kharitonov", "[[2, 1]]"}).code, kExitInputError);
}

TEST(CliReport, PolynomialText) {
  EXPECT_EQ(polynomial_text(Polynomial{1, 3, 6, 8}), "1 + 3s + 6s^2 + 8s^3");
  EXPECT_EQ(polynomial_text(Polynomial{0, -1}), "-s");
  EXPECT_EQ(polynomial_text(Polynomial{}), "0");
}

TEST(CliReport, ExitCodes) {
  EXPECT_EQ(exit_code_for(VerdictStatus::kStable), 0);
  EXPECT_EQ(exit_code_for(VerdictStatus::kUnstable), 1);
  EXPECT_EQ(exit_code_for(VerdictStatus::kMarginal), 2);
}

TEST(CliReport, SummarizeComparison) {
  Verdict stable, unstable;
  unstable.status = VerdictStatus::kUnstable;
  EXPECT_TRUE(summarize_comparison({{"a", stable, ""}, {"b", stable, ""}, {"c", std::nullopt, "skip"}}).agree);
  EXPECT_FALSE(summarize_comparison({{"a", stable, ""}, {"b", unstable, ""}}).agree);
  EXPECT_FALSE(summarize_comparison({{"a", std::nullopt, "skip"}}).agree);
}
