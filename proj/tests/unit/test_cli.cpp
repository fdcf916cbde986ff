#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "chabauty/cli/commands.hpp"
#include "chabauty/cli/rng.hpp"
#include "chabauty/cli/suites.hpp"

using nlohmann::json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& stdin_text = "",
              std::map<std::string, std::string> env = {}) {
  args.insert(args.begin(), "chabauty");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int status = chabauty::cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err,
                                  [&](const std::string& k) -> std::optional<std::string> {
                                    auto it = env.find(k);
                                    if (it == env.end()) return std::nullopt;
                                    return it->second;
                                  });
  return {status, out.str(), err.str()};
}

}  // namespace

TEST(Rng, DerivedStreamsAreReproducibleAndDistinct) {
  chabauty::cli::TrialRng a(42, "duality", 3), b(42, "duality", 3), c(42, "duality", 4), d(42, "paths", 3);
  auto x = a.uniform(0, 1000000);
  EXPECT_EQ(x, b.uniform(0, 1000000));
  EXPECT_NE(chabauty::cli::derive_seed(42, "duality", 3), chabauty::cli::derive_seed(42, "duality", 4));
  EXPECT_NE(chabauty::cli::derive_seed(42, "duality", 3), chabauty::cli::derive_seed(42, "paths", 3));
  (void)c;
  (void)d;
  chabauty::cli::TrialRng r(7);
  for (int i = 0; i < 1000; ++i) {
    auto v = r.uniform(-3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
  }
}

TEST(Cli, DualExamples) {
  auto r = invoke({"dual", R"({"ambient":{"a":3},"cont":[["1","0","0"]],"disc":[["0","1","0"]]})"});
  ASSERT_EQ(r.status, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_EQ(j["cont"], json::parse(R"([["0","0","1"]])"));
  EXPECT_EQ(j["disc"], json::parse(R"([["0","1","0"]])"));

  r = invoke({"dual", "-"}, R"({"ambient":{"a":0,"b":1,"c":1,"finite":[3]}})");
  ASSERT_EQ(r.status, 0) << r.err;
  j = json::parse(r.out);
  EXPECT_EQ(j["cont"].size(), 1u);
  EXPECT_EQ(j["disc"], json::parse(R"([["1","0","0"],["0","0","1"]])"));

  r = invoke({"dual", R"({"ambient":{"a":2},"disc":[["2","0"],["0","3"]]})"});
  j = json::parse(r.out);
  EXPECT_EQ(j["disc"], json::parse(R"([["1/2","0"],["0","1/3"]])"));
}

TEST(Cli, ClassifyExamples) {
  auto r = invoke({"classify", "R*R"});
  ASSERT_EQ(r.status, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["sdim"], 4);
  EXPECT_EQ(j["connectivity"]["path_connected"], true);
  j = json::parse(invoke({"classify", "Qp2*Zp3*Pruf5*Z/7"}).out);
  EXPECT_EQ(j["component_cardinality"]["kind"], "CountablyInfinite");
  j = json::parse(invoke({"classify", ""}).out);
  EXPECT_EQ(j["sdim"], 0);
  EXPECT_EQ(j["component_cardinality"]["kind"], "Finite");
}

TEST(Cli, ErrorsAreJsonOnStderr) {
  auto r = invoke({"classify", "R*Q"});
  EXPECT_EQ(r.status, 2);
  json e = json::parse(r.err);
  EXPECT_EQ(e["error"]["code"], "parse");
  r = invoke({"dual", "{not json"});
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "parse");
  r = invoke({"verify", "nonsense"});
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "usage");
  r = invoke({"distance", R"({"ambient":{"a":1}})", R"({"ambient":{"a":2}})"});
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "ambient_mismatch");
  r = invoke({"enumerate", "[10007]"});
  EXPECT_EQ(r.status, 3);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "resource");
}

TEST(Cli, DistanceExamples) {
  const std::string zero = R"({"ambient":{"a":1}})";
  const std::string line = R"({"ambient":{"a":1},"cont":[["1"]]})";
  auto r = invoke({"distance", zero, line, "--r-cut", "8", "--delta", "1/40"});
  ASSERT_EQ(r.status, 0) << r.err;
  json j = json::parse(r.out);
  EXPECT_LE(j["lower_approx"].get<double>(), 0.6180339887);
  EXPECT_GE(j["upper_approx"].get<double>(), 0.6180339887);
  j = json::parse(invoke({"distance", line, line}).out);
  EXPECT_EQ(j["lower"], "0");
  auto at = [&](const char* lam) {
    std::string h = std::string(R"({"ambient":{"a":1},"disc":[[")") + lam + R"("]]})";
    return json::parse(invoke({"distance", h, line, "--r-cut", "8"}).out)["upper_approx"].get<double>();
  };
  EXPECT_LT(at("1/8"), at("1"));
  r = invoke({"distance", zero, line, "--format", "csv"});
  EXPECT_EQ(r.out.substr(0, 12), "lower,upper,");
}

TEST(Cli, EnumerateExamples) {
  EXPECT_EQ(json::parse(invoke({"enumerate", R"({"invariant_factors":[2,2]})"}).out)["count"], 5);
  EXPECT_EQ(json::parse(invoke({"enumerate", "[12]"}).out)["count"], 6);
  json j = json::parse(invoke({"enumerate", "[2,4]"}).out);
  EXPECT_EQ(j["count"], 8);
  for (const auto& s : j["subgroups"]) {
    const auto& partner = j["subgroups"][s["orthogonal"].get<std::size_t>()];
    EXPECT_EQ(partner["orthogonal"], s["index"]);
    EXPECT_EQ(s["order"].get<int>() * partner["order"].get<int>(), 8);
  }
}

TEST(Cli, VerifyIsDeterministicAndHonoursEnv) {
  auto a = invoke({"verify", "transference", "--trials", "5", "--seed", "9"});
  auto b = invoke({"verify", "transference", "--trials", "5"}, "", {{"CHABAUTY_SEED", "9"}});
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  json j = json::parse(a.out);
  EXPECT_EQ(j["seed"], 9);
  EXPECT_EQ(j["summary"]["total"], 5);
  EXPECT_EQ(j["version"], chabauty::version());
  // The flag wins over the environment.
  auto c = invoke({"verify", "transference", "--trials", "5", "--seed", "9"}, "", {{"CHABAUTY_SEED", "10"}});
  EXPECT_EQ(a.out, c.out);
}

TEST(Cli, VerifyExitCodeReflectsFailures) {
  // C_d far below any attainable product forces FAIL verdicts.
  auto r = invoke({"verify", "transference", "--trials", "3", "--cd", "1/100"});
  EXPECT_EQ(r.status, 1);
  json j = json::parse(r.out);
  EXPECT_EQ(j["summary"]["fail"], 3);
  EXPECT_EQ(j["failures"].size(), 3u);
}

TEST(Cli, VerifyWritesReportFile) {
  std::string path = ::testing::TempDir() + "chabauty_finite.json";
  auto r = invoke({"verify", "finite", "--max-order", "12", "--out", path});
  ASSERT_EQ(r.status, 0) << r.err;
  json summary = json::parse(r.out);
  EXPECT_EQ(summary["overall"], "PASS");
  std::ifstream file(path);
  json report = json::parse(file);
  EXPECT_EQ(report["suite"], "finite");
  EXPECT_EQ(report["summary"]["total"], summary["total"]);
  std::remove(path.c_str());
}

TEST(Cli, SuitesSmoke) {
  chabauty::cli::RunConfig config;
  config.trials = 2;
  for (const auto& name : chabauty::cli::suite_names()) {
    if (name == "finite") config.max_order = 8;
    auto report = chabauty::cli::run_suite(name, config);
    EXPECT_EQ(report.summary().failed, 0u) << name << " " << report.to_json().dump();
  }
}
