#include <doctest.h>

#include "fixtures.hpp"
#include "ricci/cli.hpp"
#include "ricci/errors.hpp"
#include "ricci/export.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ricci;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ricci_forge_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string c;
    std::istringstream ls(line);
    while (std::getline(ls, c, ',')) row.push_back(c);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("default run writes a passing report and the CSV dumps") {
  const auto report = scratch("report.json"), prof = scratch("profile.csv"),
             curv = scratch("curvature.csv"), bdry = scratch("boundary.csv");
  const Run r = cli({"--dim", "3", "--punctures", "3", "--out", report.string(), "--profile-csv",
                     prof.string(), "--curvature-csv", curv.string(), "--boundary-csv",
                     bdry.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("overall PASS") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["overall"] == "pass");
  CHECK(j["grid_points"] == 10000);
  CHECK_FALSE(fs::exists(report.string() + ".tmp"));

  // profile rows reproduce the jets bit for bit
  const auto& B = ricci::testing::built(3, 3);
  const auto rows = parse_csv(slurp(prof));
  REQUIRE(rows.size() > 1000);
  CHECK(rows[0] == std::vector<std::string>{"t", "R", "R1", "R2"});
  for (std::size_t i = 1; i < rows.size(); i += 97) {
    const double t = std::stod(rows[i][0]);
    const ProfileJet jet = B.smooth->jet(t);
    CHECK(std::stod(rows[i][1]) == jet.value);
    CHECK(std::stod(rows[i][2]) == jet.d1);
    CHECK(std::stod(rows[i][3]) == jet.d2);
  }

  const auto crows = parse_csv(slurp(curv));
  REQUIRE(crows.size() > 1000);
  CHECK(crows[0].size() == 8);
  bool saw_blank = false;
  for (std::size_t i = 1; i < crows.size(); ++i) {
    REQUIRE(crows[i].size() == 8);
    const double t = std::stod(crows[i][0]);
    CHECK(std::stod(crows[i][1]) > 0.0);
    if (t > B.ps.r0) {
      CHECK(crows[i][4].empty());
      saw_blank = true;
    } else {
      CHECK_FALSE(crows[i][6].empty());
    }
  }
  CHECK(saw_blank);

  const auto brows = parse_csv(slurp(bdry));
  REQUIRE(brows.size() > 100);
  CHECK(brows[0] == std::vector<std::string>{"s", "B", "B1", "B2", "K_rad", "K_tan"});
  double bmax = 0;
  for (std::size_t i = 1; i < brows.size(); ++i) bmax = std::max(bmax, std::stod(brows[i][1]));
  CHECK(bmax == doctest::Approx(j["boundary"]["tau"].get<double>()).epsilon(1e-6));
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"--dim", "2", "--punctures", "1"}).code == 2);
  CHECK(cli({"--punctures", "0"}).code == 2);
  CHECK(cli({"--grid", "50"}).code == 2);
  CHECK(cli({"--frobnicate"}).code == 2);
  CHECK(cli({"--quiet", "--verbose"}).code == 2);
  const Run bad = cli({"--set", "sigma=1"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("R0, kappa, zeta, Lambda, r0, mu") != std::string::npos);
  CHECK(cli({"--set", "zeta"}).code == 2);
  CHECK(cli({"--set", "zeta=abc"}).code == 2);
  CHECK(cli({"--config", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("an unwritable output exits 2") {
  const Run r = cli({"--grid", "200", "--out", "/nonexistent-dir/report.json"});
  CHECK(r.code == 2);
  CHECK(r.err.find("report.json") != std::string::npos);
}

TEST_CASE("an invalid override fails certification with exit 1") {
  const auto report = scratch("bad.json");
  const Run r = cli({"--dim", "3", "--punctures", "1", "--set", "zeta=0.1", "--out",
                     report.string(), "--quiet"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["overall"] == "fail");
  for (const auto& c : j["checks"]) {
    if (c["name"] == "zeta_interval") CHECK(c["passed"] == false);
  }
}

TEST_CASE("config file values yield to flags") {
  const auto cfg = scratch("config.json");
  {
    std::ofstream f(cfg);
    f << R"({"n": 5, "p": 2, "grid_points": 150, "overrides": {"R0": 0.09},
            "out_report": ")" << scratch("from_config.json").string() << R"("})";
  }
  const RunConfig loaded = load_config(cfg.string());
  CHECK(loaded.n == 5);
  CHECK(loaded.p == 2);
  CHECK(loaded.grid_points == 150);
  CHECK(loaded.overrides.at("R0") == 0.09);

  const Run r = cli({"--config", cfg.string(), "--grid", "200", "--dim", "4"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(scratch("from_config.json")));
  CHECK(j["n"] == 4);
  CHECK(j["p"] == 2);
  CHECK(j["grid_points"] == 200);
  CHECK(j["overrides"]["R0"] == 0.09);
  CHECK(j["params"]["R0"] == 0.09);

  std::ofstream(scratch("bad_config.json")) << R"({"overrides": {"nope": 1}})";
  CHECK_THROWS_AS(load_config(scratch("bad_config.json").string()), ConfigError);
}

TEST_CASE("override parsing") {
  const auto [k, v] = parse_override("mu=1e-9");
  CHECK(k == "mu");
  CHECK(v == 1e-9);
  CHECK_THROWS_AS(parse_override("mu=1e-9x"), ConfigError);
  CHECK_THROWS_AS(parse_override("=3"), ConfigError);
}

TEST_CASE("atomic writes replace the target") {
  const auto p = scratch("atomic.txt");
  write_atomic(p, "first");
  write_atomic(p, "second");
  CHECK(slurp(p) == "second");
  CHECK_THROWS_AS(write_atomic("/nonexistent-dir/x.txt", "x"), std::runtime_error);
}
