#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cusplab/contour.hpp"
#include "cusplab/errors.hpp"
#include "cusplab/wos.hpp"

using namespace cusplab;

namespace {

const CrossSection& canonical() {
  static const CrossSection cs = build_cross_section(PotentialField(DensityProfile::lebesgue()), 0.5, 2.0);
  return cs;
}

// x3 on the unit sphere, read off the nearest meridian point
double height(const NearestBoundary& nb) { return nb.point.y(); }

WosOptions opts(int walks, std::uint64_t seed, int threads = 0) {
  WosOptions o;
  o.walks = walks;
  o.seed = seed;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("distance on a synthetic two-segment boundary") {
  TaggedPolyline lo{BoundaryTag::outer_level, {Point(0, 0), Point(2, 0)}, {2, 0}};
  TaggedPolyline hi{BoundaryTag::inner_level, {Point(0, 1), Point(2, 1)}, {2, 0}};
  const WosDomain d({lo, hi}, [](const Point& p) { return p.y() > 0 && p.y() < 1; });
  CHECK(distance_to_boundary(d, Point(1, 0.5)) == doctest::Approx(0.5));
  const auto nb = d.nearest(Point(0.5, 0.8));
  CHECK(nb.tag == BoundaryTag::inner_level);
  CHECK(nb.arc == doctest::Approx(1.5));
  CHECK_THROWS_AS(distance_to_boundary(d, Point(1, 2)), DomainError);
}

TEST_CASE("a contour sample is at distance zero") {
  const auto& cs = canonical();
  const WosDomain d(cs);
  for (std::size_t i = 1; i < cs.outer_dense.points.size(); i += 97)
    CHECK(d.nearest(cs.outer_dense.points[i]).distance < 1e-15);
  CHECK_THROWS_AS(distance_to_boundary(cs, cs.outer_dense.points[500]), DomainError);
}

TEST_CASE("lower-axis point distance against a brute-force resampling") {
  const auto& cs = canonical();
  const Point p(0.0, -0.2);
  double best = INFINITY;
  SearchOptions deep;
  deep.min_log_radius = -1e300;
  // dense resampling of both level curves from independent log-space solves
  for (double c : {0.5, 2.0}) {
    const auto ax = axis_crossings(cs.field, c);
    best = std::min({best, (p - Point(0, ax.z1)).norm(), (p - Point(0, ax.z2)).norm()});
    const int n = 40000;
    for (int i = 1; i < n; ++i) {
      const double z = ax.z1 + (ax.z2 - ax.z1) * (0.5 - 0.5 * std::cos(M_PI * i / n));
      best = std::min(best, (p - Point(radius_at(cs.field, c, z, deep), z)).norm());
    }
  }
  const double d = distance_to_boundary(cs, p);
  CHECK(d > 0);
  CHECK(std::abs(d - best) < 1e-6);
}

TEST_CASE("unit ball: mean value property and the harmonic x3") {
  const WosDomain ball = unit_ball_domain();
  const auto e0 = estimate(ball, height, Eigen::Vector3d(0, 0, 0), opts(20000, 5));
  CHECK(std::abs(e0.mean) <= 3 * e0.std_error);
  const auto e1 = estimate(ball, height, Eigen::Vector3d(0, 0, 0.5), opts(20000, 6));
  CHECK(std::abs(e1.mean - 0.5) <= 3 * e1.std_error);
  CHECK(e1.walks == 20000);
  CHECK(e1.discarded == 0);
}

TEST_CASE("seed determinism and thread independence") {
  const WosDomain ball = unit_ball_domain();
  const Eigen::Vector3d x(0.2, 0.1, 0.3);
  const auto a = estimate(ball, height, x, opts(5000, 42, 1));
  const auto b = estimate(ball, height, x, opts(5000, 42, 4));
  const auto c = estimate(ball, height, x, opts(5000, 43, 1));
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean != c.mean);
  CHECK(walk_seed(1, 0) != walk_seed(1, 1));
  CHECK(walk_seed(1, 0) != walk_seed(2, 0));
}

TEST_CASE("standard error scales like 1/sqrt(walks)") {
  const WosDomain ball = unit_ball_domain();
  const Eigen::Vector3d x(0, 0, 0.3);
  const auto a = estimate(ball, height, x, opts(4000, 9));
  const auto b = estimate(ball, height, x, opts(16000, 9));
  const double ratio = b.std_error / a.std_error;
  CHECK(ratio >= 0.4);
  CHECK(ratio <= 0.6);
}

TEST_CASE("canonical domain agrees with the closed form at (0.5, 0.5)") {
  const auto& cs = canonical();
  const auto e = estimate(cs, BoundaryData::constants(0.5, 2.0), Eigen::Vector3d(0.5, 0, 0.5), opts(100000, 1));
  const double v = cs.field(0.5, 0.5);
  CHECK(std::abs(e.mean - v) <= 3 * e.std_error);
  CHECK(e.mean >= 0.5);
  CHECK(e.mean <= 2.0);
  CHECK(e.point == Point(0.5, 0.5));
}

TEST_CASE("rotating the start point about the axis changes nothing in law") {
  const auto& cs = canonical();
  const auto data = BoundaryData::constants(0.5, 2.0);
  const auto a = estimate(cs, data, Eigen::Vector3d(0.6, 0, 0.3), opts(20000, 3));
  const auto b = estimate(cs, data, Eigen::Vector3d(0, 0.6, 0.3), opts(20000, 4));
  CHECK(std::abs(a.mean - b.mean) <= 3 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("discards beyond one percent are a reliability error") {
  const WosDomain ball = unit_ball_domain();
  WosOptions o = opts(1000, 1);
  o.step_cap = 1;
  o.eps = 1e-12;
  CHECK_THROWS_AS(estimate(ball, height, Eigen::Vector3d(0, 0, 0), o), ReliabilityError);
  o.walks = 1;
  CHECK_THROWS_AS(estimate(ball, height, Eigen::Vector3d(0, 0, 0), o), InputError);
  CHECK_THROWS_AS(estimate(ball, height, Eigen::Vector3d(2, 0, 0), opts(100, 1)), DomainError);
}
