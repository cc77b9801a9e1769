#include "cusplab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "cusplab/errors.hpp"

namespace cusplab {
namespace {

using cplx = std::complex<double>;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double tri_min_angle(const Point& a, const Point& b, const Point& c) {
  auto ang = [](const Point& p, const Point& q, const Point& r) {
    const Point u = q - p, v = r - p;
    return std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v));
  };
  return std::min({ang(a, b, c), ang(b, c, a), ang(c, a, b)});
}

double cross2(const Point& a, const Point& b, const Point& c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

BoundaryCurve make_curve(double level, std::vector<Point> pts) {
  BoundaryCurve bc;
  bc.level = level;
  bc.points = std::move(pts);
  bc.arc.assign(bc.points.size(), 0.0);
  for (std::size_t i = bc.points.size() - 1; i-- > 0;)
    bc.arc[i] = bc.arc[i + 1] + (bc.points[i + 1] - bc.points[i]).norm();
  return bc;
}

std::vector<Point> to_points(const std::vector<ContourSample>& s) {
  std::vector<Point> p;
  for (const auto& x : s) p.emplace_back(x.r, x.z);
  return p;
}

// polyline in the q-plane with a scalar attribute, resampled by length fraction
struct Side {
  std::vector<cplx> q;
  std::vector<double> attr;
  std::vector<double> cum;

  void finish() {
    cum.assign(q.size(), 0.0);
    for (std::size_t i = 1; i < q.size(); ++i) cum[i] = cum[i - 1] + std::abs(q[i] - q[i - 1]);
  }
  double length() const { return cum.back(); }
  std::pair<cplx, double> at(double frac) const {
    const double s = std::clamp(frac, 0.0, 1.0) * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), s);
    std::size_t j = std::clamp<std::size_t>(it - cum.begin(), 1, cum.size() - 1);
    const double h = cum[j] - cum[j - 1];
    const double w = h > 0 ? (s - cum[j - 1]) / h : 0.0;
    return {q[j - 1] + w * (q[j] - q[j - 1]), attr[j - 1] + w * (attr[j] - attr[j - 1])};
  }
};

double solve_shape(double B, bool hyperbolic) {
  auto f = [&](double x) { return (hyperbolic ? std::sinh(x) : std::sin(x)) / x - B; };
  double lo = 1e-9, hi = hyperbolic ? 50.0 : M_PI - 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    if ((f(m) > 0) == (f(hi) > 0))
      hi = m;
    else
      lo = m;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------- cross-section

bool CrossSection::contains(const Point& p) const {
  if (!(p.x() >= 0)) return false;
  const double v = field(p);
  return v > A && v < B;
}

CrossSection build_cross_section(const PotentialField& field, double A, double B, double r_min,
                                 int dense_points) {
  const double v00 = field.v00();
  if (!(A > 0 && A < v00 && v00 < B)) {
    std::ostringstream s;
    s << "levels must satisfy 0 < A < V(0,0) = " << v00 << " < B (got A=" << A << ", B=" << B
      << ")";
    throw InputError(s.str(), !(A > 0 && A < v00) ? "A" : "B");
  }
  if (!(r_min > 0)) throw InputError("r_min must be > 0", "r_min");
  if (dense_points < 200) throw InputError("dense_points must be >= 200", "dense_points");

  CrossSection cs{field};
  cs.A = A;
  cs.B = B;
  cs.r_min = r_min;
  cs.outer = trace_contour(field, A, 64, Grading::geometric);
  cs.inner = trace_contour(field, B, 64, Grading::geometric);
  const double z1A = cs.outer.z1, z2A = cs.outer.z2, z2B = cs.inner.z2;
  cs.lower_axis[0] = z1A;
  cs.lower_axis[1] = 0.0;
  cs.upper_axis[0] = z2B;
  cs.upper_axis[1] = z2A;

  SearchOptions deep;
  deep.min_log_radius = -1e300;
  const double lr_min = std::log(r_min);
  auto g = [&](double z) { return log_radius_at(field, B, z, deep) - lr_min; };
  const double hi = 0.5 * z2B;
  if (g(hi) <= 0) throw InputError("r_min exceeds the inner contour radius", "r_min");
  double lo = 0.25 * z2B;
  for (int i = 0; i < 200 && g(lo) >= 0; ++i) lo *= 0.5;
  cs.z_cut = bisect_root(g, lo, hi);

  // outer: Chebyshev stations resolve both vertical tangents
  const int n = dense_points;
  std::vector<double> zs;
  for (int i = 1; i <= n; ++i) {
    const double th = M_PI * i / (n + 1);
    zs.push_back(0.5 * (z1A + z2A) - 0.5 * (z2A - z1A) * std::cos(th));
  }
  std::vector<Point> op{Point(0, z1A)};
  for (const auto& p : to_points(sample_contour(field, A, zs))) op.push_back(p);
  op.emplace_back(0, z2A);
  cs.outer_dense = make_curve(A, std::move(op));

  // inner: geometric through the cusp, then quarter-cosine up to z2(B)
  const double floor_lr = SearchOptions{}.min_log_radius + 20.0;
  double z_floor = cs.z_cut;
  for (int i = 0; i < 200 && log_radius_at(field, B, z_floor, deep) > floor_lr; ++i) z_floor *= 0.8;
  zs.clear();
  const int ng = n / 4;
  for (int i = 0; i < ng; ++i)
    zs.push_back(z_floor * std::pow(cs.z_cut / z_floor, static_cast<double>(i) / ng));
  for (int i = 0; i < ng; ++i)
    zs.push_back(cs.z_cut + 0.5 * (z2B - cs.z_cut) * std::pow(1e-6, 1.0 - static_cast<double>(i) / ng));
  const int nc = n - 2 * ng;
  for (int i = 0; i < nc; ++i) {
    const double th = 0.5 * M_PI * i / nc;
    zs.push_back(z2B - (z2B - cs.z_cut) * std::cos(th));
  }
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  zs.erase(std::remove_if(zs.begin(), zs.end(), [&](double z) { return !(z > 0 && z < z2B); }),
           zs.end());
  std::vector<Point> ip{Point(0, 0)};
  for (const auto& p : to_points(sample_contour(field, B, zs, deep))) ip.push_back(p);
  ip.emplace_back(0, z2B);
  cs.inner_dense = make_curve(B, std::move(ip));
  return cs;
}

// ---------------------------------------------------------------- tags

const char* to_string(BoundaryTag t) {
  switch (t) {
    case BoundaryTag::outer_level: return "outer-level";
    case BoundaryTag::inner_level: return "inner-level";
    case BoundaryTag::cusp_cap: return "cusp-cap";
    case BoundaryTag::axis: return "axis";
    default: return "interior";
  }
}

BoundaryTag tag_from_string(const std::string& s) {
  for (auto t : {BoundaryTag::interior, BoundaryTag::outer_level, BoundaryTag::inner_level,
                 BoundaryTag::cusp_cap, BoundaryTag::axis})
    if (s == to_string(t)) return t;
  throw InputError("unknown boundary tag '" + s + "'");
}

double Mesh::signed_area(int t) const {
  return 0.5 * cross2(node(triangles(t, 0)), node(triangles(t, 1)), node(triangles(t, 2)));
}

// ---------------------------------------------------------------- stretching

Eigen::VectorXd vinokur_stretching(int n, double d0, double d1) {
  if (n < 2) throw InputError("stretching needs n >= 2");
  if (!(d0 > 0 && d1 > 0)) throw InputError("stretching spacings must be > 0");
  const int N = n - 1;
  const double A = std::sqrt(d1 / d0);
  const double B = 1.0 / (N * std::sqrt(d0 * d1));
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) {
    const double xi = static_cast<double>(i) / N;
    double v;
    if (std::abs(B - 1.0) < 1e-6) {
      v = xi;
    } else if (B > 1.0) {
      const double x = solve_shape(B, true);
      v = 0.5 * (1.0 + std::tanh(x * (xi - 0.5)) / std::tanh(0.5 * x));
    } else {
      const double x = solve_shape(B, false);
      v = 0.5 * (1.0 + std::tan(x * (xi - 0.5)) / std::tan(0.5 * x));
    }
    u(i) = v / (A + (1.0 - A) * v);
  }
  u(0) = 0.0;
  u(N) = 1.0;
  return u;
}

// ---------------------------------------------------------------- triangulation

namespace {

void split_quads(Mesh& m, int nl, int ns) {
  std::vector<Eigen::Vector3i> tris;
  auto idx = [ns](int i, int k) { return i * ns + k; };
  for (int i = 0; i + 1 < nl; ++i)
    for (int k = 0; k + 1 < ns; ++k) {
      const int a = idx(i, k), b = idx(i, k + 1), c = idx(i + 1, k + 1), d = idx(i + 1, k);
      const Point pa = m.node(a), pb = m.node(b), pc = m.node(c), pd = m.node(d);
      const double s1 = std::min(tri_min_angle(pa, pb, pc), tri_min_angle(pa, pc, pd));
      const double s2 = std::min(tri_min_angle(pa, pb, pd), tri_min_angle(pb, pc, pd));
      if (s1 >= s2) {
        tris.emplace_back(a, b, c);
        tris.emplace_back(a, c, d);
      } else {
        tris.emplace_back(a, b, d);
        tris.emplace_back(b, c, d);
      }
    }
  // orient counterclockwise in (r, z); the grid orientation is global
  double total = 0.0;
  for (const auto& t : tris) total += cross2(m.node(t[0]), m.node(t[1]), m.node(t[2]));
  m.triangles.resize(static_cast<int>(tris.size()), 3);
  for (std::size_t j = 0; j < tris.size(); ++j) {
    Eigen::Vector3i t = tris[j];
    if (total < 0) std::swap(t[1], t[2]);
    m.triangles.row(static_cast<int>(j)) = t.transpose();
    const double ar = cross2(m.node(t[0]), m.node(t[1]), m.node(t[2]));
    if (!(ar > 0)) {
      std::ostringstream s;
      s << "degenerate or inverted cell at level row " << (t[0] / ns) << ", station "
        << (t[0] % ns) << " (signed area " << 0.5 * ar << ")";
      throw MeshError(s.str());
    }
  }
}

void tag_grid(Mesh& m, int nl, int ns, BoundaryTag inner, BoundaryTag outer, BoundaryTag sides,
              BoundaryTag corner) {
  auto idx = [ns](int i, int k) { return i * ns + k; };
  m.tags.assign(nl * ns, BoundaryTag::interior);
  for (int i = 0; i < nl; ++i) {
    m.tags[idx(i, 0)] = sides;
    m.tags[idx(i, ns - 1)] = sides;
  }
  for (int k = 0; k < ns; ++k) {
    m.tags[idx(0, k)] = inner;
    m.tags[idx(nl - 1, k)] = outer;
  }
  m.tags[idx(0, 0)] = corner;
  m.boundary_edges.clear();
  for (int k = 0; k + 1 < ns; ++k) {
    m.boundary_edges.push_back({idx(0, k), idx(0, k + 1), k == 0 ? corner : inner});
    m.boundary_edges.push_back({idx(nl - 1, k), idx(nl - 1, k + 1), outer});
  }
  for (int i = 0; i + 1 < nl; ++i) {
    m.boundary_edges.push_back({idx(i, 0), idx(i + 1, 0), sides});
    m.boundary_edges.push_back({idx(i, ns - 1), idx(i + 1, ns - 1), sides});
  }
}

}  // namespace

Mesh triangulate(const CrossSection& cs, int n_levels, int n_stations) {
  if (n_levels < 4) throw InputError("n_levels must be >= 4", "n_levels");
  if (n_stations < 8) throw InputError("n_stations must be >= 8", "n_stations");
  const int nl = n_levels, ns = n_stations;
  const double zc = cs.z_cut;
  auto toq = [zc](const Point& p) { return std::sqrt(cplx(p.y() - zc, p.x())); };

  // sides in the q = sqrt((z - z_cut) + i r) plane, where the straight cap
  // corner at (0, z_cut) opens to a right angle
  Side O, I;
  for (std::size_t j = 0; j < cs.outer_dense.points.size(); ++j) {
    O.q.push_back(toq(cs.outer_dense.points[j]));
    O.attr.push_back(cs.outer_dense.arc[j]);
  }
  const auto& ip = cs.inner_dense.points;
  std::size_t first = 0;
  while (first < ip.size() && ip[first].y() <= zc) ++first;
  if (first >= ip.size()) throw MeshError("inner curve has no samples above z_cut");
  I.q.push_back(0.0);
  I.attr.push_back(cs.inner_dense.arc[first] + (ip[first] - Point(0, zc)).norm());
  for (std::size_t j = first; j < ip.size(); ++j) {
    I.q.push_back(toq(ip[j]));
    I.attr.push_back(cs.inner_dense.arc[j]);
  }
  O.finish();
  I.finish();
  const double LO = O.length(), LI = I.length();
  const double Wb = std::abs(O.q.front() - I.q.front());
  const double Wt = std::abs(O.q.back() - I.q.back());

  const double d_in = 0.48 / nl;
  const Eigen::VectorXd t = vinokur_stretching(nl, d_in, 2.0 / (nl - 1) - d_in);
  const double dtf = t(1) - t(0), dtl = t(nl - 1) - t(nl - 2);
  const Eigen::VectorXd frI = vinokur_stretching(ns, dtf * Wb / LI, dtf * Wt / LI);
  const Eigen::VectorXd frO = vinokur_stretching(ns, dtl * Wb / LO, dtl * Wt / LO);

  std::vector<cplx> Iq(ns), Oq(ns);
  std::vector<double> Ia(ns), Oa(ns);
  for (int k = 0; k < ns; ++k) {
    auto [qi, ai] = I.at(frI(k));
    auto [qo, ao] = O.at(frO(k));
    if (k > 0 && k < ns - 1) {
      // snap resampled stations onto the exact level sets
      auto back = [zc](cplx q) {
        const cplx w = q * q;
        return Point(std::max(w.imag(), 0.0), w.real() + zc);
      };
      const Point pi = project_to_level(cs.field, cs.B, back(qi));
      const Point po = project_to_level(cs.field, cs.A, back(qo));
      qi = toq(pi);
      qo = toq(po);
    }
    Iq[k] = qi;
    Oq[k] = qo;
    Ia[k] = ai;
    Oa[k] = ao;
  }
  Iq[0] = I.q.front();
  Iq[ns - 1] = I.q.back();
  Oq[0] = O.q.front();
  Oq[ns - 1] = O.q.back();

  Mesh m;
  m.n_levels = nl;
  m.n_stations = ns;
  m.z_cut = zc;
  m.nodes.resize(nl * ns, 2);
  m.arc.assign(nl * ns, kNaN);
  for (int i = 0; i < nl; ++i) {
    const double ti = t(i);
    const cplx bot = Iq[0] + (Oq[0] - Iq[0]) * ti;
    const cplx top = Iq[ns - 1] + (Oq[ns - 1] - Iq[ns - 1]) * ti;
    for (int k = 0; k < ns; ++k) {
      const double s = (1 - ti) * frI(k) + ti * frO(k);
      const cplx q = (1 - ti) * Iq[k] + ti * Oq[k] + (1 - s) * bot + s * top -
                     ((1 - s) * (1 - ti) * Iq[0] + (1 - s) * ti * Oq[0] +
                      s * (1 - ti) * Iq[ns - 1] + s * ti * Oq[ns - 1]);
      const cplx w = q * q;
      double r = std::max(w.imag(), 0.0);
      if (k == 0 || k == ns - 1) r = 0.0;
      m.nodes(i * ns + k, 0) = r;
      m.nodes(i * ns + k, 1) = w.real() + zc;
    }
  }
  for (int k = 0; k < ns; ++k) {
    m.arc[k] = Ia[k];
    m.arc[(nl - 1) * ns + k] = Oa[k];
  }
  split_quads(m, nl, ns);
  tag_grid(m, nl, ns, BoundaryTag::inner_level, BoundaryTag::outer_level, BoundaryTag::axis,
           BoundaryTag::cusp_cap);
  // the axis corners belong to the level curves
  m.tags[ns - 1] = BoundaryTag::inner_level;
  m.tags[(nl - 1) * ns] = BoundaryTag::outer_level;
  m.tags[nl * ns - 1] = BoundaryTag::outer_level;
  return m;
}

Mesh rectangle_mesh(double r0, double r1, double z0, double z1, int nr, int nz) {
  if (nr < 1 || nz < 1) throw InputError("rectangle mesh needs at least one cell per side");
  const int nl = nz + 1, ns = nr + 1;
  Mesh m;
  m.n_levels = nl;
  m.n_stations = ns;
  m.nodes.resize(nl * ns, 2);
  m.arc.assign(nl * ns, kNaN);
  for (int i = 0; i < nl; ++i)
    for (int k = 0; k < ns; ++k) {
      m.nodes(i * ns + k, 0) = r0 + (r1 - r0) * k / nr;
      m.nodes(i * ns + k, 1) = z0 + (z1 - z0) * i / nz;
    }
  split_quads(m, nl, ns);
  tag_grid(m, nl, ns, BoundaryTag::outer_level, BoundaryTag::outer_level,
           BoundaryTag::outer_level, BoundaryTag::outer_level);
  return m;
}

// ---------------------------------------------------------------- quality

MeshQuality mesh_quality(const Mesh& m, double floor_deg) {
  MeshQuality q;
  const int nt = m.num_triangles();
  q.min_angle_deg = 180.0;
  q.max_angle_deg = 0.0;
  q.min_area = std::numeric_limits<double>::infinity();
  q.max_area = -std::numeric_limits<double>::infinity();
  std::map<std::pair<int, int>, int> edge_use;
  for (int t = 0; t < nt; ++t) {
    const Point a = m.node(m.triangles(t, 0)), b = m.node(m.triangles(t, 1)),
                c = m.node(m.triangles(t, 2));
    const Point pts[3] = {a, b, c};
    for (int j = 0; j < 3; ++j) {
      const Point u = pts[(j + 1) % 3] - pts[j], v = pts[(j + 2) % 3] - pts[j];
      const double ang = std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v)) * 180.0 / M_PI;
      q.min_angle_deg = std::min(q.min_angle_deg, ang);
      q.max_angle_deg = std::max(q.max_angle_deg, ang);
    }
    const double ar = m.signed_area(t);
    q.min_area = std::min(q.min_area, ar);
    q.max_area = std::max(q.max_area, ar);
    if (ar <= 0) ++q.negative_area_count;
    for (int j = 0; j < 3; ++j) {
      int u = m.triangles(t, j), v = m.triangles(t, (j + 1) % 3);
      if (u > v) std::swap(u, v);
      ++edge_use[{u, v}];
    }
  }
  for (auto tg : m.tags) ++q.node_census[to_string(tg)];

  std::map<std::pair<int, int>, int> tagged;
  for (const auto& e : m.boundary_edges) {
    ++tagged[{std::min(e.a, e.b), std::max(e.a, e.b)}];
    ++q.edge_census[to_string(e.tag)];
  }
  std::vector<int> parent(m.num_nodes());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::set<int> bnodes;
  for (const auto& [e, cnt] : edge_use) {
    if (cnt != 1) continue;
    auto it = tagged.find(e);
    if (it == tagged.end())
      ++q.untagged_boundary_edges;
    else if (it->second > 1)
      ++q.multiply_tagged_boundary_edges;
    parent[find(e.first)] = find(e.second);
    bnodes.insert(e.first);
    bnodes.insert(e.second);
  }
  std::set<int> roots;
  for (int v : bnodes) roots.insert(find(v));
  q.boundary_loops = static_cast<int>(roots.size());
  q.euler = m.num_nodes() - static_cast<int>(edge_use.size()) + nt;
  q.euler_ok = q.euler == 1 && q.boundary_loops == 1;
  q.min_node_r = m.nodes.rows() ? m.nodes.col(0).minCoeff() : 0.0;
  q.pass = q.euler_ok && q.negative_area_count == 0 && q.untagged_boundary_edges == 0 &&
           q.multiply_tagged_boundary_edges == 0 && q.min_angle_deg >= floor_deg &&
           q.min_node_r >= 0;
  return q;
}

}  // namespace cusplab
