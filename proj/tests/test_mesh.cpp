#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cusplab/contour.hpp"
#include "cusplab/errors.hpp"
#include "cusplab/mesh.hpp"

using namespace cusplab;

namespace {

const CrossSection& canonical() {
  static const CrossSection cs = build_cross_section(PotentialField(DensityProfile::lebesgue()), 0.5, 2.0);
  return cs;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  const bool up = f(hi) > 0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((f(mid) > 0) == up ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("cross-section geometry") {
  const auto& cs = canonical();
  CHECK(cs.lower_axis[0] == doctest::Approx(-0.398).epsilon(1e-3));
  CHECK(cs.lower_axis[1] == 0.0);
  CHECK(cs.upper_axis[0] == doctest::Approx(1.0633).epsilon(1e-4));
  CHECK(cs.upper_axis[1] == doctest::Approx(1.716).epsilon(1e-3));
  CHECK(cs.contains(Point(0.5, 0.5)));
  CHECK_FALSE(cs.contains(Point(2.0, 0.5)));
  CHECK_FALSE(cs.contains(Point(0.01, 0.5)));
  const PotentialField f(DensityProfile::lebesgue());
  CHECK_THROWS_AS(build_cross_section(f, 1.5, 2.0), InputError);
  CHECK_THROWS_AS(build_cross_section(f, 0.5, 0.9), InputError);
}

TEST_CASE("z_cut matches a root-find on the closed form") {
  const auto& cs = canonical();
  const double lr = std::log(1e-4);
  const double ref = bisect(
      [&](double z) {
        // log r_2(z) by bisection in log r on the closed form
        const double t = bisect([&](double s) { return 2.0 - eval_closed_form_log(s, z, ClosedForm::lebesgue); },
                                -1e4, 0.0);
        return t - lr;
      },
      1e-3, 0.5);
  CHECK(cs.z_cut == doctest::Approx(ref).epsilon(1e-9));
  CHECK(cs.z_cut == doctest::Approx(0.0665).epsilon(1e-2));
  CHECK(cs.r_min == 1e-4);
}

TEST_CASE("dense boundary curves") {
  const auto& cs = canonical();
  for (const auto* b : {&cs.outer_dense, &cs.inner_dense}) {
    for (std::size_t i = 1; i < b->points.size(); ++i) {
      CHECK(b->points[i].y() > b->points[i - 1].y());
      CHECK(b->arc[i] < b->arc[i - 1]);
    }
    CHECK(b->arc.back() == 0.0);
  }
  CHECK(cs.inner_dense.points.front() == Point(0, 0));
}

TEST_CASE("canonical 8x32 mesh passes every invariant") {
  const auto& cs = canonical();
  const Mesh m = triangulate(cs, 8, 32);
  const MeshQuality q = mesh_quality(m);
  CHECK(q.pass);
  CHECK(q.euler == 1);
  CHECK(q.euler_ok);
  CHECK(q.boundary_loops == 1);
  CHECK(q.negative_area_count == 0);
  CHECK(q.untagged_boundary_edges == 0);
  CHECK(q.multiply_tagged_boundary_edges == 0);
  CHECK(q.min_angle_deg >= 15.0);
  CHECK(m.num_nodes() == 8 * 32);
  CHECK(m.num_triangles() == 2 * 7 * 31);
}

TEST_CASE("node values respect the level tags") {
  const auto& cs = canonical();
  const Mesh m = triangulate(cs, 8, 32);
  for (int i = 0; i < m.num_nodes(); ++i) {
    const Point p = m.node(i);
    switch (m.tags[i]) {
      case BoundaryTag::outer_level: CHECK(std::abs(cs.field(p) - 0.5) <= 1e-9); break;
      case BoundaryTag::inner_level: CHECK(std::abs(cs.field(p) - 2.0) <= 1e-9); break;
      case BoundaryTag::interior: {
        const double v = cs.field(p);
        CHECK(v > 0.5);
        CHECK(v < 2.0);
        break;
      }
      case BoundaryTag::axis: CHECK(p.x() == 0.0); break;
      case BoundaryTag::cusp_cap: CHECK(p == Point(0.0, cs.z_cut)); break;
    }
  }
}

TEST_CASE("cusp cap is short") {
  const auto& cs = canonical();
  const Mesh m = triangulate(cs, 16, 64);
  double cap = 0;
  for (const auto& e : m.boundary_edges)
    if (e.tag == BoundaryTag::cusp_cap) cap += (m.node(e.a) - m.node(e.b)).norm();
  const double band = std::exp(-0.4 / cs.z_cut) - std::exp(-0.6 / cs.z_cut);
  CHECK(cap > 0);
  CHECK(cap <= 2 * cs.r_min + band);
}

TEST_CASE("refinement quadruples the node count") {
  const auto& cs = canonical();
  const Mesh a = triangulate(cs, 8, 32), b = triangulate(cs, 16, 64);
  const double g = double(b.num_nodes()) / a.num_nodes();
  CHECK(g > 3.5);
  CHECK(g < 4.5);
  CHECK(mesh_quality(b).pass);
  CHECK_THROWS_AS(triangulate(cs, 2, 32), InputError);
  CHECK_THROWS_AS(triangulate(cs, 8, 4), InputError);
}

TEST_CASE("quality of a single triangle") {
  Mesh m;
  m.nodes.resize(3, 2);
  m.nodes << 0, 0, 4, 0, 4, 3;
  m.triangles.resize(1, 3);
  m.triangles << 0, 1, 2;
  m.tags.assign(3, BoundaryTag::outer_level);
  m.boundary_edges = {{0, 1, BoundaryTag::outer_level}, {1, 2, BoundaryTag::outer_level},
                      {2, 0, BoundaryTag::outer_level}};
  const MeshQuality q = mesh_quality(m);
  CHECK(q.min_angle_deg == doctest::Approx(std::atan2(3.0, 4.0) * 180 / M_PI));
  CHECK(q.max_angle_deg == doctest::Approx(90.0));
  CHECK(q.negative_area_count == 0);
  CHECK(q.euler == 1);

  m.triangles << 0, 2, 1;
  CHECK(mesh_quality(m).negative_area_count == 1);
  CHECK_FALSE(mesh_quality(m).pass);
}

TEST_CASE("rectangle mesh") {
  const Mesh m = rectangle_mesh(1, 2, 0, 1, 4, 4);
  CHECK(m.num_nodes() == 25);
  CHECK(m.num_triangles() == 32);
  double area = 0;
  for (int t = 0; t < m.num_triangles(); ++t) area += m.signed_area(t);
  CHECK(area == doctest::Approx(1.0));
  CHECK(mesh_quality(m).euler == 1);
}

TEST_CASE("Vinokur stretching approximates the requested end spacings") {
  const Eigen::VectorXd s = vinokur_stretching(20, 0.01, 0.1);
  CHECK(s(0) == 0.0);
  CHECK(s(19) == doctest::Approx(1.0));
  for (int i = 1; i < 20; ++i) CHECK(s(i) > s(i - 1));
  CHECK(s(1) - s(0) == doctest::Approx(0.01).epsilon(0.1));
  CHECK(s(19) - s(18) == doctest::Approx(0.1).epsilon(0.1));
}

TEST_CASE("tag names round-trip") {
  for (auto t : {BoundaryTag::interior, BoundaryTag::outer_level, BoundaryTag::inner_level,
                 BoundaryTag::cusp_cap, BoundaryTag::axis})
    CHECK(tag_from_string(to_string(t)) == t);
  CHECK(std::string(to_string(BoundaryTag::cusp_cap)) == "cusp-cap");
  CHECK_THROWS_AS(tag_from_string("edge"), InputError);
}
