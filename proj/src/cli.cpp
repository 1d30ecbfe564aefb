#include "ricci/cli.hpp"

#include "ricci/errors.hpp"
#include "ricci/export.hpp"
#include "ricci/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace ricci {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> opt_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

Verbosity parse_verbosity(const std::string& v) {
  if (v == "quiet") return Verbosity::quiet;
  if (v == "normal") return Verbosity::normal;
  if (v == "verbose") return Verbosity::verbose;
  throw ConfigError("verbosity must be quiet, normal or verbose");
}

void validate(const RunConfig& cfg) {
  if (cfg.n < 3) throw ConfigError("--dim must be >= 3");
  if (cfg.p < 1) throw ConfigError("--punctures must be >= 1");
  if (cfg.grid_points < 100) throw ConfigError("--grid must be >= 100");
}

std::string format_margin(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::pair<std::string, double> parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + text + "' is not name=value");
  std::string name = text.substr(0, eq);
  if (std::find(kOverrideNames.begin(), kOverrideNames.end(), name) == kOverrideNames.end()) {
    throw ConfigError("unknown override '" + name + "'; valid names: " + override_names());
  }
  const std::string value = text.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ConfigError("override '" + name + "' has non-numeric value '" + value + "'");
  }
  return {name, v};
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  RunConfig cfg;
  try {
    if (j.contains("n")) cfg.n = j["n"].get<int>();
    if (j.contains("p")) cfg.p = j["p"].get<int>();
    if (j.contains("grid_points")) cfg.grid_points = j["grid_points"].get<int>();
    if (j.contains("overrides")) {
      for (const auto& [k, v] : j["overrides"].items()) {
        parse_override(k + "=0");  // validates the name
        cfg.overrides[k] = v.get<double>();
      }
    }
    cfg.out_report = opt_string(j, "out_report");
    cfg.out_profile_csv = opt_string(j, "out_profile_csv");
    cfg.out_curvature_csv = opt_string(j, "out_curvature_csv");
    cfg.out_boundary_csv = opt_string(j, "out_boundary_csv");
    if (j.contains("verbosity")) cfg.verbosity = parse_verbosity(j["verbosity"].get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct and certify a Ricci-positive metric on a punctured sphere", "ricci-forge"};
  int n = 3, p = 1, grid = 10000;
  std::vector<std::string> sets;
  std::string report_path, profile_path, curvature_path, boundary_path, config_path;
  bool quiet = false, verbose = false;
  auto* o_dim = app.add_option("--dim", n, "sphere dimension n (>= 3)");
  auto* o_p = app.add_option("--punctures", p, "number of removed discs p (>= 1)");
  auto* o_grid = app.add_option("--grid", grid, "grid nodes per piece (>= 100)");
  auto* o_set = app.add_option("--set", sets, "override name=value (repeatable)");
  auto* o_out = app.add_option("--out", report_path, "JSON report path");
  auto* o_prof = app.add_option("--profile-csv", profile_path, "profile CSV path");
  auto* o_curv = app.add_option("--curvature-csv", curvature_path, "curvature CSV path");
  auto* o_bdry = app.add_option("--boundary-csv", boundary_path, "boundary CSV path");
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  auto* o_quiet = app.add_flag("--quiet", quiet, "print nothing");
  auto* o_verbose = app.add_flag("--verbose", verbose, "print every check");
  o_quiet->excludes(o_verbose);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_config(config_path);
    if (o_dim->count()) cfg.n = n;
    if (o_p->count()) cfg.p = p;
    if (o_grid->count()) cfg.grid_points = grid;
    for (const auto& s : sets) {
      const auto [k, v] = parse_override(s);
      cfg.overrides[k] = v;
    }
    (void)o_set;
    if (o_out->count()) cfg.out_report = report_path;
    if (o_prof->count()) cfg.out_profile_csv = profile_path;
    if (o_curv->count()) cfg.out_curvature_csv = curvature_path;
    if (o_bdry->count()) cfg.out_boundary_csv = boundary_path;
    if (o_quiet->count()) cfg.verbosity = Verbosity::quiet;
    if (o_verbose->count()) cfg.verbosity = Verbosity::verbose;
    validate(cfg);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  VerificationReport report;
  try {
    report = run_verification(cfg.n, cfg.p, cfg.overrides, GridSpec{cfg.grid_points, 0.0, 1.0});
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (cfg.out_report) write_atomic(*cfg.out_report, report_json(report) + "\n");
    const bool have_profile = static_cast<bool>(report.profile);
    if ((cfg.out_profile_csv || cfg.out_curvature_csv || cfg.out_boundary_csv) && !have_profile) {
      err << "warning: construction failed before the profile existed; CSV dumps skipped\n";
    } else if (have_profile) {
      const SmoothProfile& R = *report.profile;
      const ParamSet& ps = *report.params;
      if (cfg.out_profile_csv) write_atomic(*cfg.out_profile_csv, profile_csv(R, cfg.grid_points));
      if (cfg.out_curvature_csv) {
        write_atomic(*cfg.out_curvature_csv, curvature_csv(R, cfg.n, ps.r0, cfg.grid_points));
      }
      if (cfg.out_boundary_csv) {
        write_atomic(*cfg.out_boundary_csv, boundary_csv(R, ps, cfg.grid_points));
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  if (cfg.verbosity != Verbosity::quiet) {
    int failed = 0;
    for (const auto& r : report.checks) {
      if (!r.passed) ++failed;
      if (cfg.verbosity == Verbosity::verbose || !r.passed) {
        out << (r.passed ? "  ok    " : "  FAIL  ") << r.name << "  margin " << format_margin(r.margin);
        if (r.cause) out << "  (" << *r.cause << ")";
        out << "\n";
      }
    }
    out << "n=" << cfg.n << " p=" << cfg.p << ": " << report.checks.size() - failed << "/"
        << report.checks.size() << " checks passed, overall " << (report.overall ? "PASS" : "FAIL")
        << "\n";
  }
  return report.overall ? kExitPass : kExitFail;
}

}  // namespace ricci
