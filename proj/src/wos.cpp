#include "cusplab/wos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "cusplab/errors.hpp"

namespace cusplab {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t& state) { return (splitmix64(state) >> 11) * 0x1.0p-53; }

double segment_distance(const Point& p, const Point& a, const Point& b, double& t) {
  const Point d = b - a;
  const double l2 = d.squaredNorm();
  t = l2 > 0 ? std::clamp((p - a).dot(d) / l2, 0.0, 1.0) : 0.0;
  return (p - (a + t * d)).norm();
}

}  // namespace

std::uint64_t walk_seed(std::uint64_t seed, std::uint64_t walk) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  h += walk * 0xD1B54A32D192ED03ull;
  return splitmix64(h);
}

WosDomain::WosDomain(std::vector<TaggedPolyline> curves, std::function<bool(const Point&)> inside)
    : inside_(std::move(inside)) {
  for (const auto& c : curves) {
    if (c.points.size() != c.arc.size()) throw InputError("polyline arc length count mismatch");
    for (std::size_t i = 0; i + 1 < c.points.size(); ++i)
      segs_.push_back({c.points[i], c.points[i + 1], c.arc[i], c.arc[i + 1], c.tag});
  }
  if (segs_.empty()) throw InputError("domain needs at least one boundary segment");
  nodes_.reserve(2 * segs_.size());
  build(0, static_cast<int>(segs_.size()));
}

WosDomain::WosDomain(const CrossSection& cs)
    : WosDomain(
          {TaggedPolyline{BoundaryTag::outer_level, cs.outer_dense.points, cs.outer_dense.arc},
           TaggedPolyline{BoundaryTag::inner_level, cs.inner_dense.points, cs.inner_dense.arc}},
          [field = cs.field, A = cs.A, B = cs.B](const Point& p) {
            if (!(p.x() >= 0)) return false;
            const double v = field(p);
            return v > A && v < B;
          }) {}

int WosDomain::build(int first, int count) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  Eigen::AlignedBox2d box;
  for (int i = first; i < first + count; ++i) {
    box.extend(segs_[i].a);
    box.extend(segs_[i].b);
  }
  nodes_[id].box = box;
  nodes_[id].first = first;
  nodes_[id].count = count;
  if (count <= 4) return id;
  const int axis = box.sizes().x() >= box.sizes().y() ? 0 : 1;
  const int mid = first + count / 2;
  std::nth_element(segs_.begin() + first, segs_.begin() + mid, segs_.begin() + first + count,
                   [axis](const Segment& s, const Segment& t) {
                     return s.a(axis) + s.b(axis) < t.a(axis) + t.b(axis);
                   });
  const int l = build(first, mid - first);
  const int r = build(mid, first + count - mid);
  nodes_[id].left = l;
  nodes_[id].right = r;
  return id;
}

NearestBoundary WosDomain::nearest(const Point& p) const {
  NearestBoundary best;
  best.distance = std::numeric_limits<double>::infinity();
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& n = nodes_[stack[--top]];
    if (n.box.exteriorDistance(p) >= best.distance) continue;
    if (n.left < 0) {
      for (int i = n.first; i < n.first + n.count; ++i) {
        const Segment& s = segs_[i];
        double t;
        const double d = segment_distance(p, s.a, s.b, t);
        if (d < best.distance) {
          best.distance = d;
          best.tag = s.tag;
          best.arc = s.arc_a + t * (s.arc_b - s.arc_a);
          best.point = s.a + t * (s.b - s.a);
        }
      }
      continue;
    }
    const double dl = nodes_[n.left].box.exteriorDistance(p);
    const double dr = nodes_[n.right].box.exteriorDistance(p);
    // visit the nearer child first
    if (dl < dr) {
      stack[top++] = n.right;
      stack[top++] = n.left;
    } else {
      stack[top++] = n.left;
      stack[top++] = n.right;
    }
  }
  return best;
}

WosDomain unit_ball_domain(int n) {
  TaggedPolyline c;
  c.tag = BoundaryTag::outer_level;
  for (int i = 0; i <= n; ++i) {
    const double th = M_PI * i / n;  // from the south pole
    c.points.emplace_back(std::sin(th), -std::cos(th));
    c.arc.push_back(M_PI - th);
  }
  return WosDomain({c}, [](const Point& p) { return p.squaredNorm() < 1.0; });
}

double distance_to_boundary(const WosDomain& domain, const Point& p) {
  if (!domain.contains(p)) {
    std::ostringstream s;
    s << "point (r=" << p.x() << ", z=" << p.y() << ") is not interior";
    throw DomainError(s.str());
  }
  return domain.nearest(p).distance;
}

double distance_to_boundary(const CrossSection& cs, const Point& p) {
  return distance_to_boundary(WosDomain(cs), p);
}

WosScore score_boundary_data(const BoundaryData& data) {
  // validates up front that every component is evaluable by arc length
  data.at_arc(BoundaryTag::outer_level, 0.0);
  data.at_arc(BoundaryTag::inner_level, 0.0);
  return [data](const NearestBoundary& nb) { return data.at_arc(nb.tag, nb.arc); };
}

WosEstimate estimate(const WosDomain& domain, const WosScore& score, const Eigen::Vector3d& x0,
                     const WosOptions& opt) {
  if (opt.walks < 2) throw InputError("walk count must be >= 2", "walks");
  if (!(opt.eps > 0)) throw InputError("eps must be > 0", "eps");
  if (opt.step_cap < 1) throw InputError("step cap must be >= 1", "step_cap");
  const Point p0(std::hypot(x0.x(), x0.y()), x0.z());
  if (!domain.contains(p0)) {
    std::ostringstream s;
    s << "start point (r=" << p0.x() << ", z=" << p0.y() << ") is not interior";
    throw DomainError(s.str());
  }

  const int W = opt.walks;
  std::vector<double> scores(W);
  std::vector<int> steps(W);
  auto walk = [&](int w) {
    std::uint64_t st = walk_seed(opt.seed, static_cast<std::uint64_t>(w));
    Eigen::Vector3d x = x0;
    for (int k = 0; k < opt.step_cap; ++k) {
      const Point p(std::hypot(x.x(), x.y()), x.z());
      const NearestBoundary nb = domain.nearest(p);
      if (nb.distance <= opt.eps) {
        scores[w] = score(nb);
        steps[w] = k;
        return;
      }
      const double u = 2.0 * uniform01(st) - 1.0;
      const double phi = 2.0 * M_PI * uniform01(st);
      const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
      x += nb.distance * Eigen::Vector3d(s * std::cos(phi), s * std::sin(phi), u);
    }
    scores[w] = std::numeric_limits<double>::quiet_NaN();
    steps[w] = opt.step_cap;
  };

  int nt = opt.threads > 0 ? opt.threads : static_cast<int>(std::thread::hardware_concurrency());
  nt = std::clamp(nt, 1, 64);
  if (nt == 1 || W < 1000) {
    for (int w = 0; w < W; ++w) walk(w);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (W + nt - 1) / nt;
    for (int k = 0; k < nt; ++k)
      pool.emplace_back([&, k] {
        for (int w = k * chunk; w < std::min(W, (k + 1) * chunk); ++w) walk(w);
      });
    for (auto& t : pool) t.join();
  }

  WosEstimate est;
  est.point = p0;
  est.eps = opt.eps;
  est.seed = opt.seed;
  double sum = 0.0, nsteps = 0.0;
  int n = 0;
  for (int w = 0; w < W; ++w) {
    nsteps += steps[w];
    if (std::isnan(scores[w])) {
      ++est.discarded;
      continue;
    }
    sum += scores[w];
    ++n;
  }
  if (est.discarded > 0.01 * W) {
    std::ostringstream s;
    s << est.discarded << " of " << W << " walks exceeded the step cap of " << opt.step_cap;
    throw ReliabilityError(s.str());
  }
  est.walks = n;
  est.mean = sum / n;
  double ss = 0.0;
  for (int w = 0; w < W; ++w)
    if (!std::isnan(scores[w])) ss += (scores[w] - est.mean) * (scores[w] - est.mean);
  est.std_error = std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n));
  est.mean_steps = nsteps / W;
  return est;
}

WosEstimate estimate(const CrossSection& cs, const BoundaryData& data, const Eigen::Vector3d& x0,
                     const WosOptions& opt) {
  return estimate(WosDomain(cs), score_boundary_data(data), x0, opt);
}

}  // namespace cusplab
