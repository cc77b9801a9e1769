// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <unistd.h>

#include "cusplab/cli.hpp"
#include "cusplab/config.hpp"
#include "cusplab/contour.hpp"
#include "cusplab/fem.hpp"
#include "cusplab/io.hpp"
#include "cusplab/probe.hpp"
#include "cusplab/wiener.hpp"
#include "cusplab/wos.hpp"

using namespace cusplab;
namespace fs = std::filesystem;

namespace {

int g_failed = 0;

void verdict(int n, const char* name, bool pass, const std::string& detail) {
  std::printf("%s %2d  %s: %s\n", pass ? "PASS" : "FAIL", n, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failed;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  const bool up = f(hi) > 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) > 0) == up ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double axis_value(double z) {
  if (z < 0) return 1 + z * std::log((1 - z) / (-z));
  return -1 + z * std::log(z / (z - 1));
}

struct Fem {
  std::shared_ptr<const Mesh> mesh;
  SolutionField sol;
  double oracle_err = 0.0;
  double seconds = 0.0;
};

Fem canonical_fem(const CrossSection& cs, int nl, int ns) {
  const auto t0 = std::chrono::steady_clock::now();
  Fem f;
  f.mesh = std::make_shared<const Mesh>(triangulate(cs, nl, ns));
  f.sol = solve_dirichlet(f.mesh, BoundaryData::constants(cs.A, cs.B), 1e-12);
  for (int i = 0; i < f.mesh->num_nodes(); ++i) {
    const Point p = f.mesh->node(i);
    if (f.mesh->tags[i] != BoundaryTag::interior || p.y() < 2 * cs.z_cut) continue;
    const double v = cs.field(p);
    f.oracle_err = std::max(f.oracle_err, std::abs(f.sol.values(i) - v) / v);
  }
  f.seconds = seconds_since(t0);
  return f;
}

}  // namespace

int main() {
  const PotentialField field(DensityProfile::lebesgue());

  {  // 1
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ur(0.0, 3.0), uz(-1.0, 3.0);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    int n = 0;
    while (n < 1000) {
      const double r = ur(rng), z = uz(rng);
      if (r == 0) continue;
      const double c = eval_closed_form(r, z, ClosedForm::lebesgue);
      worst = std::max(worst, std::abs(field.quadrature(r, z) - c) / c);
      ++n;
    }
    const double s = seconds_since(t0);
    verdict(1, "closed form vs quadrature", worst <= 1e-8 && s < 5,
            fmt("worst relative discrepancy %.2e over 1000 points in %.2f s", worst, s));
  }

  {  // 2
    const double e = std::abs(field.v00() - 1.0);
    verdict(2, "V(0,0) = 1", e <= 1e-10, fmt("|V(0,0) - 1| = %.2e (quadrature)", e));
  }

  {  // 3
    const double o2 = bisect([](double z) { return axis_value(z) - 2; }, 1 + 1e-12, 10);
    const double oh2 = bisect([](double z) { return axis_value(z) - 0.5; }, 1 + 1e-12, 10);
    const double oh1 = bisect([](double z) { return axis_value(z) - 0.5; }, -10, -1e-12);
    const auto a = axis_crossings(field, 2.0), b = axis_crossings(field, 0.5);
    const double e = std::max({std::abs(a.z2 - o2), std::abs(b.z2 - oh2), std::abs(b.z1 - oh1)});
    verdict(3, "axis crossings", e <= 1e-6,
            fmt("z2(2)=%.10f z2(1/2)=%.10f z1(1/2)=%.10f, max deviation %.1e", a.z2, b.z2, b.z1, e));
  }

  {  // 4
    double prev = INFINITY;
    bool mono = true;
    std::string d;
    for (double z : {1e-1, 1e-2, 1e-3}) {
      const double e = std::abs(field.at_log_radius(-0.25 / z, z) - 1.5);
      mono = mono && e < prev;
      prev = e;
      d += fmt("z=%g: %.4f  ", z, e);
    }
    verdict(4, "cusp limit along exp(-0.25/z)", mono && prev <= 0.05, d + (mono ? "(shrinking)" : "(not monotone)"));
  }

  {  // 5
    const auto rep = cusp_rate_bounds(field, 2.0, 0.4, 0.6, 0.1, {0.1, 0.05, 0.02, 0.01});
    std::string d;
    for (const auto& row : rep.rows)
      d += fmt("z=%g: log r=%.3f in (%.2f, %.2f) %s; ", row.z, row.log_r, row.log_lower, row.log_upper,
               row.pass ? "ok" : "OUT");
    verdict(5, "cusp band exp(-0.6/z) < r_2 < exp(-0.4/z)", rep.all_pass, d);
  }

  const CrossSection cs = build_cross_section(field, 0.5, 2.0);
  const Fem coarse = canonical_fem(cs, 16, 64);
  const Fem fine = canonical_fem(cs, 32, 128);

  verdict(6, "FEM vs analytic solution",
          coarse.oracle_err <= 0.01 && fine.oracle_err < coarse.oracle_err && coarse.seconds < 60,
          fmt("16x64 max rel error %.4f%%, 32x128 %.4f%%, 16x64 in %.2f s", 100 * coarse.oracle_err,
              100 * fine.oracle_err, coarse.seconds));

  {  // 7
    const double o = 3 * M_PI;
    const double ec = std::abs(energy(coarse.sol) - o) / o, ef = std::abs(energy(fine.sol) - o) / o;
    verdict(7, "Dirichlet energy vs 3 pi", ec <= 0.02 && ef < ec,
            fmt("16x64 E=%.6f (%.3f%%), 32x128 E=%.6f (%.3f%%)", energy(coarse.sol), 100 * ec,
                energy(fine.sol), 100 * ef));
  }

  {  // 8
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-3, 3), w(0.05, 1.5), s(0, 3);
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
      BoundaryData d;
      switch (trial % 4) {
        case 0: d = BoundaryData::constants(u(rng), u(rng)); break;
        case 1:
          d.set(BoundaryTag::outer_level, BumpDatum{s(rng), w(rng), u(rng)}).set(BoundaryTag::inner_level, u(rng));
          break;
        case 2:
          d.set(BoundaryTag::outer_level, u(rng)).set(BoundaryTag::inner_level, BumpDatum{s(rng), w(rng), u(rng)});
          break;
        default: {
          TabulatedDatum t;
          for (int i = 0; i < coarse.mesh->num_nodes(); ++i)
            if (coarse.mesh->tags[i] == BoundaryTag::outer_level) t.values.push_back(u(rng));
          d.set(BoundaryTag::outer_level, t).set(BoundaryTag::inner_level, u(rng));
        }
      }
      const auto sol = solve_dirichlet(coarse.mesh, d);
      worst = std::max({worst, sol.min_datum - sol.values.minCoeff(), sol.values.maxCoeff() - sol.max_datum});
    }
    verdict(8, "discrete maximum principle", worst <= 1e-8,
            fmt("20 random data sets, worst excursion beyond the data range %.2e", std::max(worst, 0.0)));
  }

  {  // 9
    double worst = 0;
    for (auto [a, b] : {std::pair{0.0, 1.0}, std::pair{-1.0, 3.0}, std::pair{2.0, -0.5}}) {
      const auto sol = solve_dirichlet(coarse.mesh, BoundaryData::constants(a, b), 1e-12);
      const double k = (b - a) / (cs.B - cs.A);
      const Eigen::VectorXd aff = (a + k * (coarse.sol.values.array() - cs.A)).matrix();
      worst = std::max(worst, (sol.values - aff).cwiseAbs().maxCoeff());
    }
    verdict(9, "two-constant affine identity", worst <= 1e-8, fmt("max nodal deviation %.2e", worst));
  }

  {  // 10
    const OracleSource src{&field, 0.5, 2.0, 0.5, 2.0};
    std::vector<ProbePath> paths;
    PathSpec ax;
    ax.kind = PathKind::axis_below;
    paths.push_back(sample_path(src, field, ax));
    for (double c : {1.05, 1.25, 1.5, 1.75, 1.95}) {
      PathSpec p;
      p.level = c;
      paths.push_back(sample_path(src, field, p));
    }
    const LimitSet ls = limit_set_estimate(paths, 2.0);
    const bool ok = std::abs(ls.lo - 1.0) <= 0.01 && std::abs(ls.hi - 1.95) <= 0.01 &&
                    ls.classification == LimitClass::strongly_irregular_like;
    verdict(10, "limit set", ok, fmt("[%.4f, %.4f], %s", ls.lo, ls.hi, to_string(ls.classification)));
  }

  const RunConfig defaults = RunConfig::from_json({{"subcommand", "wos"}});

  {  // 11
    const WosDomain dom(cs);
    const WosScore score = score_boundary_data(BoundaryData::constants(0.5, 2.0));
    bool ok = defaults.wos_points.size() == 5;
    std::string d;
    for (std::size_t i = 0; i < defaults.wos_points.size(); ++i) {
      const Point p = defaults.wos_points[i];
      WosOptions o;
      o.walks = 100000;
      o.seed = walk_seed(defaults.seed, i);
      const auto e = estimate(dom, score, Eigen::Vector3d(p.x(), 0, p.y()), o);
      const double v = field(p);
      const double zs = (e.mean - v) / e.std_error;
      ok = ok && std::abs(zs) <= 3;
      d += fmt("(%.2g,%.2g) %+.2f sd; ", p.x(), p.y(), zs);
    }
    verdict(11, "walk-on-spheres vs oracle", ok, d);
  }

  {  // 12
    WosOptions o;
    o.walks = 100000;
    o.seed = walk_seed(defaults.seed, 77);
    const double L = cs.outer_dense.length();
    const auto nl = nonlocality_experiment(cs, {0.5 * L, 0.25 * L, 1.0}, {1.5}, {0.32, 0.16, 0.08, 0.04, 0.02}, o);
    const auto& last = nl.paths.front().stations.back();
    verdict(12, "non-locality floor", nl.floor > 0,
            fmt("floor %.4f, value at z=%.2f is %.4f +- %.4f, verdict %s", nl.floor, last.z, last.value,
                last.std_error, nl.verdict.c_str()));
  }

  {  // 13
    const std::vector<std::pair<WienerProfile, WienerClass>> cases{
        {profile_exp_log_squared(), WienerClass::singular},
        {profile_log_power(), WienerClass::regular},
        {profile_power(3.0), WienerClass::regular},
        {profile_from_field(field, 2.0, "lebesgue-r2"), WienerClass::singular}};
    bool ok = true;
    std::string d;
    for (const auto& [p, expect] : cases) {
      std::string got;
      for (double q : {0.3, 0.5, 0.7}) {
        auto rep = log_series(p, q);
        classify(rep);
        ok = ok && rep.classification == expect;
        got += std::string(got.empty() ? "" : "/") + to_string(rep.classification);
      }
      d += p.name + " " + got + "; ";
    }
    verdict(13, "Wiener classification", ok, d);
  }

  {  // 14
    const fs::path dir = fs::temp_directory_path() / ("cusplab_acceptance_" + std::to_string(::getpid()));
    RunConfig cfg = RunConfig::from_json({{"subcommand", "reproduce-figures"}, {"output_dir", dir.string()}});
    const auto rep = run_subcommand(cfg);
    const CsvTable cont = read_csv(dir / "contour_map.csv");
    double res_half = -1, res_two = -1;
    for (const auto& row : cont.rows) {
      const double c = std::stod(row[0]), res = std::stod(row[3]);
      if (c == 0.5) res_half = std::max(res_half, res);
      if (c == 2.0) res_two = std::max(res_two, res);
    }
    const CsvTable cloud = read_csv(dir / "surface_cloud.csv");
    std::vector<std::pair<double, double>> rz;
    for (const auto& row : cloud.rows) {
      const double x = std::stod(row[0]), y = std::stod(row[1]), z = std::stod(row[2]);
      if (std::stod(row[3]) == 2.0 && y == 0.0 && x > 0 && z > 0) rz.emplace_back(z, x / z);
    }
    std::sort(rz.begin(), rz.end());
    bool mono = !rz.empty();
    for (std::size_t i = 1; i < rz.size() && rz[i].first <= 10 * rz.front().first; ++i)
      mono = mono && rz[i - 1].second < rz[i].second;
    const bool ok = res_half >= 0 && res_half <= 1e-10 && res_two >= 0 && res_two <= 2e-10 && mono &&
                    rz.front().second < 1e-6 && rep["all_pass"] == true;
    verdict(14, "figure reproduction", ok,
            fmt("residual max 1/2: %.1e, 2: %.1e; r/z at z=%.2e is %.2e", res_half, res_two,
                rz.empty() ? 0.0 : rz.front().first, rz.empty() ? 0.0 : rz.front().second));
    fs::remove_all(dir);
  }

  std::printf("%d of 14 criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
