#include "ricci/export.hpp"

#include "ricci/boundary.hpp"
#include "ricci/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace ricci {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

Eigen::ArrayXd export_grid(const std::vector<double>& features, double lo, double hi, int points) {
  const int pieces = std::max<int>(1, static_cast<int>(features.size()) - 1);
  return feature_grid(features, lo, hi, std::max(8, points / pieces));
}

std::ostringstream make_stream() {
  std::ostringstream os;
  os.precision(17);
  return os;
}

void cell(std::ostringstream& os, double v) {
  os << ',';
  if (std::isfinite(v)) os << v;
}

}  // namespace

std::string profile_csv(const WarpingProfile& R, int points) {
  auto os = make_stream();
  os << "t,R,R1,R2\n";
  for (double t : export_grid(R.features(), 0.0, kHalfPi, points)) {
    const ProfileJet j = R.jet(t);
    os << t;
    cell(os, j.value);
    cell(os, j.d1);
    cell(os, j.d2);
    os << '\n';
  }
  return os.str();
}

std::string curvature_csv(const WarpingProfile& R, int n, double r0, int points) {
  auto os = make_stream();
  os << "t,ric_TT,ric_XX,ric_SS,pc_circle,pc_sphere,ki_YS,ki_SS\n";
  std::vector<double> features = R.features();
  features.push_back(r0);
  std::sort(features.begin(), features.end());
  const Eigen::ArrayXd t = export_grid(features, 0.0, kHalfPi, points);
  for (const CurvatureSample& s : curvature_grid(R, n, r0, t)) {
    os << s.t;
    for (double v : {s.ric_TT, s.ric_XX, s.ric_SS, s.pc_circle, s.pc_sphere, s.ki_YS, s.ki_SS}) {
      cell(os, v);
    }
    os << '\n';
  }
  return os.str();
}

std::string boundary_csv(const WarpingProfile& R, const ParamSet& ps, int points) {
  auto os = make_stream();
  os << "s,B,B1,B2,K_rad,K_tan\n";
  const BoundaryMetric bm = boundary_metric(R, ps, GridSpec{points, 0.0, 1.0});
  for (Eigen::Index i = 0; i < bm.s.size(); ++i) {
    os << bm.s[i];
    for (double v : {bm.B[i], bm.B1[i], bm.B2[i], bm.K_rad[i], bm.K_tan[i]}) cell(os, v);
    os << '\n';
  }
  return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot move output into place at " + path.string());
  }
}

}  // namespace ricci
