#pragma once

#include <Eigen/Geometry>
#include <cstdint>
#include <functional>
#include <vector>

#include "cusplab/fem.hpp"
#include "cusplab/mesh.hpp"

namespace cusplab {

struct NearestBoundary {
  double distance = 0.0;
  BoundaryTag tag = BoundaryTag::interior;
  double arc = 0.0;  // arc coordinate of the nearest point on its curve
  Point point = Point::Zero();
};

struct TaggedPolyline {
  BoundaryTag tag = BoundaryTag::outer_level;
  std::vector<Point> points;
  std::vector<double> arc;  // same length as points
};

// Meridian-plane boundary with a segment BVH for nearest-point queries.
class WosDomain {
 public:
  WosDomain(std::vector<TaggedPolyline> curves, std::function<bool(const Point&)> inside);
  explicit WosDomain(const CrossSection& cs);

  NearestBoundary nearest(const Point& p) const;
  bool contains(const Point& p) const { return inside_(p); }

 private:
  struct Segment {
    Point a, b;
    double arc_a, arc_b;
    BoundaryTag tag;
  };
  struct Node {
    Eigen::AlignedBox2d box;
    int left = -1, right = -1;
    int first = 0, count = 0;
  };
  int build(int first, int count);

  std::vector<Segment> segs_;
  std::vector<Node> nodes_;
  std::function<bool(const Point&)> inside_;
};

// unit ball: meridian semicircle tagged outer-level, arc from (0,1)
WosDomain unit_ball_domain(int n_segments = 4000);

double distance_to_boundary(const CrossSection& cs, const Point& p);
double distance_to_boundary(const WosDomain& domain, const Point& p);

struct WosOptions {
  int walks = 100000;
  double eps = 1e-4;
  std::uint64_t seed = 1;
  int step_cap = 100000;
  int threads = 0;  // 0: hardware concurrency
};

struct WosEstimate {
  Point point = Point::Zero();  // (r, z)
  double mean = 0.0;
  double std_error = 0.0;
  int walks = 0;
  int discarded = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  double mean_steps = 0.0;
};

using WosScore = std::function<double(const NearestBoundary&)>;

WosScore score_boundary_data(const BoundaryData& data);

WosEstimate estimate(const WosDomain& domain, const WosScore& score,
                     const Eigen::Vector3d& x0, const WosOptions& opt);
WosEstimate estimate(const CrossSection& cs, const BoundaryData& data,
                     const Eigen::Vector3d& x0, const WosOptions& opt);

// per-walk stream seed
std::uint64_t walk_seed(std::uint64_t seed, std::uint64_t walk);

}  // namespace cusplab
