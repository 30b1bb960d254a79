#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "equilens/cli.hpp"
#include "equilens/errors.hpp"
#include "equilens/report.hpp"

using namespace equilens;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Cli, SigmaLattice) {
  auto r = run({"analyze", "--seq", "glp:1,2@5", "--measure", "sigma-lattice"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "1");
  EXPECT_EQ(j["measure"], "sigma-lattice");
  EXPECT_NEAR(j["value"].get<double>(), 0.4472135954999579, 1e-15);
  EXPECT_EQ(j["N"], 5);
}

TEST(Cli, DiscreteStarAtMatchedResolution) {
  auto r = run({"analyze", "--seq", "halton:2", "--N", "16", "--measure", "discrete-discrepancy", "--base", "2",
                "--resolution", "4", "--star"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["value"].get<double>(), 0.0);
}

TEST(Cli, DefaultsArePrinted) {
  auto r = run({"analyze", "--seq", "kron:sqrt2-1,sqrt3-1", "--N", "64", "--measure", "diaphony"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["weight"], "r");
  EXPECT_EQ(j["parameters"]["alpha"], 2.0);
  EXPECT_EQ(j["parameters"]["norm"], "max");
  EXPECT_EQ(j["parameters"]["method"], "kernel");
}

TEST(Cli, JsonRoundTrip) {
  const std::vector<std::vector<std::string>> cases = {
      {"analyze", "--seq", "glp:1,5@8", "--measure", "bz-index"},
      {"analyze", "--seq", "glp:1,5@8", "--measure", "p-alpha", "--K", "20"},
      {"analyze", "--seq", "halton:2,3", "--N", "32", "--measure", "spectral", "--system", "walsh:2,badic:3",
       "--weight", "digit"},
      {"analyze", "--seq", "halton:2,3", "--N", "20", "--measure", "discrepancy-spectral", "--epsilon", "0.5"},
      {"analyze", "--seq", "halton:3", "--N", "20", "--measure", "star"},
      {"analyze", "--seq", "halton:2,3", "--N", "10", "--measure", "extreme-oracle"},
  };
  for (const auto& args : cases) {
    auto r = run(args);
    ASSERT_EQ(r.code, cli::kOk) << args[4] << ": " << r.err;
    auto rep = report_from_json(nlohmann::ordered_json::parse(r.out));
    EXPECT_EQ(to_json(rep).dump() + "\n", r.out);
    EXPECT_GE(rep.value, 0.0);
  }
}

TEST(Cli, SchemaValidation) {
  auto j = nlohmann::json::parse(run({"analyze", "--seq", "glp:1,2@5", "--measure", "bz-index"}).out);
  auto bad = j;
  bad["schema"] = "2";
  EXPECT_THROW(report_from_json(bad), ArgumentError);
  bad = j;
  bad.erase("tail_bound");
  EXPECT_THROW(report_from_json(bad), ArgumentError);
  bad = j;
  bad["N"] = "five";
  EXPECT_THROW(report_from_json(bad), ArgumentError);
}

TEST(Cli, SweepCsv) {
  auto r = run({"analyze", "--seq", "kron:sqrt2-1", "--sweep", "16,32,64", "--measure", "spectral"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), csv_header());
  EXPECT_EQ(lines(r.out), 4u);
  EXPECT_NE(r.out.find("\nspectral,32,"), std::string::npos);
}

TEST(Cli, Generate) {
  auto r = run({"generate", "--seq", "halton:2,3", "--N", "3"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "# halton:2,3 N=3\n0/1 0/1\n1/2 1/3\n1/4 2/3\n");
  // generated files feed back into analyze
  const std::string path = ::testing::TempDir() + "equilens_points.txt";
  {
    std::ofstream f(path);
    f << run({"generate", "--seq", "kron:golden", "--N", "8"}).out;
  }
  auto file = run({"analyze", "--seq", "file:" + path, "--measure", "star"});
  auto direct = run({"analyze", "--seq", "kron:golden", "--N", "8", "--measure", "star"});
  ASSERT_EQ(file.code, cli::kOk) << file.err;
  EXPECT_EQ(nlohmann::json::parse(file.out)["value"], nlohmann::json::parse(direct.out)["value"]);
  std::remove(path.c_str());
}

TEST(Cli, Verify) {
  auto d = run({"verify", "digits", "--base", "2", "--m", "3"});
  EXPECT_EQ(d.code, cli::kOk) << d.out << d.err;
  EXPECT_EQ(run({"verify", "sloan-kachoyan", "--seq", "glp:1,2@5"}).code, cli::kOk);
  EXPECT_EQ(run({"verify", "sandwich", "--seq", "halton:2,3", "--N", "12", "--base", "2,3", "--resolution", "3,2"}).code,
            cli::kOk);
  EXPECT_EQ(run({"verify", "sandwich", "--seq", "kron:golden", "--N", "30", "--epsilon", "0.25"}).code, cli::kOk);
}

TEST(Cli, ArgumentErrors) {
  const std::vector<std::vector<std::string>> cases = {
      {},
      {"analyze", "--measure", "spectral"},
      {"analyze", "--seq", "halton:2", "--measure", "spectral"},
      {"analyze", "--seq", "halton:2", "--N", "8", "--measure", "nonsense"},
      {"analyze", "--seq", "halton:2", "--N", "8", "--measure", "discrete-discrepancy"},
      {"analyze", "--seq", "halton:2,3", "--N", "8", "--measure", "star"},
      {"analyze", "--seq", "halton:2", "--N", "8", "--measure", "sigma-lattice"},
      {"analyze", "--seq", "glp:1,2@5", "--N", "4", "--measure", "bz-index"},
      {"analyze", "--seq", "halton:2", "--N", "0", "--measure", "spectral"},
      {"analyze", "--seq", "halton:2", "--N", "8", "--measure", "spectral", "--system", "walsh:2,trig"},
      {"analyze", "--seq", "halton:2", "--N", "8", "--measure", "spectral", "--weight", "euclid"},
      {"analyze", "--seq", "file:/nonexistent/points.txt", "--measure", "star"},
      {"analyze", "--seq", "halton:2", "--N", "8", "--measure", "diaphony", "--weight", "euclidean"},
      {"analyze", "--seq", "halton:2", "--N", "8", "--measure", "diaphony", "--alpha", "1"},
      {"analyze", "--seq", "glp:1,2@5", "--measure", "p-alpha", "--alpha", "1"},
      {"verify", "digits", "--base", "1", "--m", "3"},
      {"generate", "--seq", "kron:golden"},
  };
  for (const auto& args : cases) {
    auto r = run(args);
    EXPECT_EQ(r.code, cli::kArgumentError) << (args.empty() ? "" : args.back());
    EXPECT_EQ(lines(r.err), 1u) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
}

TEST(Cli, ResourceLimits) {
  auto r = run({"analyze", "--seq", "glp:1,3,5,7@11", "--measure", "bz-index"});
  EXPECT_EQ(r.code, cli::kResourceLimit);
  EXPECT_EQ(lines(r.err), 1u);
  auto big = run({"analyze", "--seq", "halton:2,3", "--N", "8", "--measure", "discrete-discrepancy", "--base", "2",
                  "--resolution", "13"});
  EXPECT_EQ(big.code, cli::kResourceLimit) << big.err;
}
