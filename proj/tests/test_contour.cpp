#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cusplab/contour.hpp"
#include "cusplab/errors.hpp"

using namespace cusplab;

namespace {

// axis values of the linear rod, from the antiderivative
double axis_value(double z) {
  if (z < 0) return 1 + z * std::log((1 - z) / (-z));
  return -1 + z * std::log(z / (z - 1));
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

const PotentialField& lebesgue() {
  static const PotentialField f(DensityProfile::lebesgue());
  return f;
}

}  // namespace

TEST_CASE("axis crossings against bisection on the axis formula") {
  const auto& f = lebesgue();
  const double z2_2 = bisect([](double z) { return axis_value(z) - 2; }, 1 + 1e-12, 10);
  const double z2_h = bisect([](double z) { return axis_value(z) - 0.5; }, 1 + 1e-12, 10);
  const double z1_h = bisect([](double z) { return axis_value(z) - 0.5; }, -10, -1e-12);
  const auto a = axis_crossings(f, 2.0);
  const auto b = axis_crossings(f, 0.5);
  CHECK(a.z1 == 0.0);
  CHECK(std::abs(a.z2 - z2_2) < 1e-6);
  CHECK(std::abs(b.z2 - z2_h) < 1e-6);
  CHECK(std::abs(b.z1 - z1_h) < 1e-6);
  CHECK(a.z2 == doctest::Approx(1.0633).epsilon(1e-4));
  CHECK(b.z2 == doctest::Approx(1.716).epsilon(1e-3));
  CHECK(b.z1 == doctest::Approx(-0.398).epsilon(1e-3));
  CHECK(axis_crossings(f, 1.0).z1 == 0.0);
  CHECK_THROWS_AS(axis_crossings(f, 1e-9, 10.0), RangeError);
}

TEST_CASE("contour radius satisfies the residual bound") {
  const auto& f = lebesgue();
  for (auto [c, z] : {std::pair{2.0, 0.5}, std::pair{0.5, -0.2}, std::pair{0.5, 1.7}, std::pair{2.0, 0.01}}) {
    const double r = radius_at(f, c, z);
    CHECK(r > 0);
    CHECK(std::abs(f(r, z) - c) <= 1e-10 * c);
  }
}

TEST_CASE("root is unique under a different bracket") {
  const auto& f = lebesgue();
  SearchOptions wide;
  wide.search_radius = 1e3;
  wide.min_log_radius = -5000;
  for (double z : {0.05, 0.3, 0.9}) {
    const double a = log_radius_at(f, 2.0, z), b = log_radius_at(f, 2.0, z, wide);
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
  }
}

TEST_CASE("log radius against an independent log-space bisection") {
  const auto& f = lebesgue();
  for (double z : {0.1, 0.02, 0.005}) {
    const double ref = bisect([&](double t) { return eval_closed_form_log(t, z, ClosedForm::lebesgue) - 2; },
                              -1e4, 0.0);
    CHECK(log_radius_at(f, 2.0, z) == doctest::Approx(ref).epsilon(1e-12));
  }
}

TEST_CASE("exponential band holds below a threshold station") {
  const auto& f = lebesgue();
  // the lower bound e^{-0.6/z} fails at z = 0.1 and holds from z = 0.05 down
  CHECK(log_radius_at(f, 2.0, 0.1) < -6.0);
  for (double z : {0.05, 0.02, 0.01, 0.005, 0.001}) {
    const double t = log_radius_at(f, 2.0, z);
    CHECK(t > -0.6 / z);
    CHECK(t < -0.4 / z);
  }
}

TEST_CASE("radius vanishes toward the far axis crossing") {
  const auto& f = lebesgue();
  const double z2 = axis_crossings(f, 0.5).z2;
  CHECK(radius_at(f, 0.5, z2 - 1e-6) < 1e-2);
  CHECK(radius_at(f, 0.5, z2 - 1e-3) > radius_at(f, 0.5, z2 - 1e-6));
  CHECK_THROWS_AS(radius_at(f, 0.5, z2 + 0.1), RangeError);
}

TEST_CASE("traced level 2 is tangent to the axis at the cusp") {
  const auto& f = lebesgue();
  const auto cv = trace_contour(f, 2.0, 64);
  CHECK(cv.max_residual() <= 1e-10 * 2);
  CHECK(cv.samples.front().r == 0.0);
  CHECK(cv.samples.back().r == 0.0);
  std::vector<std::pair<double, double>> q;
  for (const auto& s : cv.samples)
    if (s.z > 0 && s.r > 0) q.emplace_back(s.z, s.r / (s.z - cv.z1));
  std::sort(q.begin(), q.end());
  const double zmin = q.front().first;
  for (std::size_t i = 1; i < q.size() && q[i].first <= 10 * zmin; ++i) CHECK(q[i - 1].second < q[i].second);
  CHECK(q.front().second < 1e-6);
}

TEST_CASE("level 1/2 stays away from the rod") {
  const auto& f = lebesgue();
  const auto cv = trace_contour(f, 0.5, 64, Grading::uniform);
  CHECK(cv.z1 == doctest::Approx(-0.398).epsilon(1e-3));
  CHECK(cv.z2 == doctest::Approx(1.716).epsilon(1e-3));
  double dmin = INFINITY;
  for (std::size_t i = 1; i + 1 < cv.samples.size(); ++i) {
    const auto& s = cv.samples[i];
    CHECK(s.r > 0);
    const double dz = std::max({0.0, -s.z, s.z - 1});
    dmin = std::min(dmin, std::hypot(s.r, dz));
  }
  CHECK(dmin > 0.1);
  CHECK_THROWS_AS(trace_contour(f, 0.5, 8), InputError);
}

TEST_CASE("threaded sampling equals pointwise solves") {
  const auto& f = lebesgue();
  std::vector<double> zs;
  for (int i = 1; i < 100; ++i) zs.push_back(0.01 * i);
  const auto s = sample_contour(f, 2.0, zs);
  for (std::size_t i = 0; i < zs.size(); ++i) CHECK(s[i].log_r == log_radius_at(f, 2.0, zs[i]));
}

TEST_CASE("cusp rate bounds") {
  const auto& f = lebesgue();
  const auto dini = cusp_rate_bounds(f, 2.0, 0.4, 0.6, 0.1, {0.1, 0.05, 0.02, 0.01});
  REQUIRE(dini.rows.size() == 4);
  CHECK_FALSE(dini.rows[0].pass);  // z = 0.1 lies above the band threshold
  for (std::size_t i = 1; i < 4; ++i) CHECK(dini.rows[i].pass);
  const auto mono = cusp_rate_bounds(f, 2.0, 0.4, 0.6, 0.1, {0.1, 0.05, 0.02, 0.01}, RateVariant::monotone);
  CHECK(mono.all_pass);
  CHECK_THROWS_AS(cusp_rate_bounds(f, 2.0, 0.6, 0.7, 0.1, {0.01}), InputError);
}

TEST_CASE("cusp limit along r = exp(-0.25/z)") {
  const auto& f = lebesgue();
  const auto rep = cusp_rate_bounds(f, 2.0, 0.25, 0.6, 0.1, default_rate_grid());
  CHECK(rep.trend_target == doctest::Approx(1.5));
  double prev = INFINITY;
  for (const auto& row : rep.rows) {
    CHECK(row.trend == doctest::Approx(f.at_log_radius(-0.25 / row.z, row.z)));
    const double d = std::abs(row.trend - 1.5);
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev <= 0.05);
}

TEST_CASE("bisect_root and projection onto a level") {
  CHECK(bisect_root([](double x) { return x * x - 2; }, 0, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1; }, 0, 2), RangeError);
  const auto& f = lebesgue();
  const Point p = project_to_level(f, 1.5, Point(0.3, 0.4));
  CHECK(std::abs(f(p) - 1.5) < 1e-12);
}
