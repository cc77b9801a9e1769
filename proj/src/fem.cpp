#include "cusplab/fem.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <cmath>
#include <limits>
#include <sstream>

namespace cusplab {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_dirichlet(BoundaryTag t) {
  return t == BoundaryTag::outer_level || t == BoundaryTag::inner_level ||
         t == BoundaryTag::cusp_cap;
}

}  // namespace

double bump_profile(const BumpDatum& b, double s) {
  const double x = (s - b.s0) / b.w;
  if (!(std::abs(x) < 1.0)) return 0.0;
  return b.eps * std::exp(1.0 - 1.0 / (1.0 - x * x));
}

BoundaryData BoundaryData::constants(double outer, double inner) {
  BoundaryData d;
  d.set(BoundaryTag::outer_level, outer);
  d.set(BoundaryTag::inner_level, inner);
  return d;
}

BoundaryData& BoundaryData::set(BoundaryTag tag, Datum d) {
  if (!is_dirichlet(tag)) throw InputError(std::string("no datum allowed on tag ") + to_string(tag));
  if (auto* c = std::get_if<double>(&d); c && !std::isfinite(*c))
    throw InputError("constant datum must be finite");
  if (auto* b = std::get_if<BumpDatum>(&d)) {
    if (!std::isfinite(b->eps)) throw InputError("bump amplitude must be finite", "eps");
    if (!(b->w > 0)) throw InputError("bump radius must be > 0", "w");
  }
  data_[tag] = std::move(d);
  return *this;
}

const Datum& BoundaryData::get(BoundaryTag tag) const {
  auto it = data_.find(tag);
  if (it == data_.end())
    throw InputError(std::string("missing boundary datum for ") + to_string(tag), to_string(tag));
  return it->second;
}

Datum BoundaryData::cap_datum() const {
  if (has(BoundaryTag::cusp_cap)) return get(BoundaryTag::cusp_cap);
  const Datum& in = get(BoundaryTag::inner_level);
  if (std::holds_alternative<double>(in)) return in;
  if (std::holds_alternative<BumpDatum>(in)) return 0.0;
  throw InputError("tabulated inner data needs an explicit cusp-cap datum", "cusp-cap");
}

double BoundaryData::at_arc(BoundaryTag tag, double s) const {
  const Datum& d = tag == BoundaryTag::cusp_cap ? data_.at(tag) : get(tag);
  if (auto* c = std::get_if<double>(&d)) return *c;
  if (auto* b = std::get_if<BumpDatum>(&d)) return bump_profile(*b, s);
  throw InputError("tabulated data cannot be evaluated by arc length");
}

BoundaryData BoundaryData::scaled(double k) const {
  BoundaryData out;
  for (const auto& [tag, d] : data_) {
    Datum e = d;
    if (auto* c = std::get_if<double>(&e)) *c *= k;
    if (auto* b = std::get_if<BumpDatum>(&e)) b->eps *= k;
    if (auto* t = std::get_if<TabulatedDatum>(&e))
      for (double& v : t->values) v *= k;
    out.data_[tag] = e;
  }
  return out;
}

Eigen::VectorXd dirichlet_values(const Mesh& mesh, const BoundaryData& data) {
  const int n = mesh.num_nodes();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(n, kNaN);
  for (BoundaryTag tag : {BoundaryTag::outer_level, BoundaryTag::inner_level, BoundaryTag::cusp_cap}) {
    std::vector<int> ids;
    for (int i = 0; i < n; ++i)
      if (mesh.tags[i] == tag) ids.push_back(i);
    if (ids.empty()) continue;
    const Datum d = tag == BoundaryTag::cusp_cap ? data.cap_datum() : data.get(tag);
    if (auto* c = std::get_if<double>(&d)) {
      for (int i : ids) v(i) = *c;
    } else if (auto* b = std::get_if<BumpDatum>(&d)) {
      for (int i : ids) v(i) = std::isnan(mesh.arc[i]) ? 0.0 : bump_profile(*b, mesh.arc[i]);
    } else {
      const auto& t = std::get<TabulatedDatum>(d);
      if (t.values.size() != ids.size()) {
        std::ostringstream s;
        s << "tabulated data for " << to_string(tag) << " has " << t.values.size()
          << " values but " << ids.size() << " nodes carry the tag";
        throw InputError(s.str(), to_string(tag));
      }
      for (std::size_t j = 0; j < ids.size(); ++j) v(ids[j]) = t.values[j];
    }
  }
  return v;
}

Eigen::Matrix3d element_stiffness(const Point& a, const Point& b, const Point& c) {
  const double area = 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
  if (!(std::abs(area) > 0)) throw MeshError("degenerate element in assembly");
  const Point p[3] = {a, b, c};
  Eigen::Vector3d bb, cc;
  for (int i = 0; i < 3; ++i) {
    const Point& pj = p[(i + 1) % 3];
    const Point& pk = p[(i + 2) % 3];
    bb(i) = pj.y() - pk.y();
    cc(i) = pk.x() - pj.x();
  }
  const double rbar = (a.x() + b.x() + c.x()) / 3.0;
  return rbar * (bb * bb.transpose() + cc * cc.transpose()) / (4.0 * std::abs(area));
}

Eigen::SparseMatrix<double> assemble(const Mesh& mesh) {
  const int n = mesh.num_nodes();
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(9 * mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    if (!(mesh.signed_area(t) > 0)) {
      std::ostringstream s;
      s << "degenerate element " << t << " in assembly";
      throw MeshError(s.str());
    }
    const Eigen::Matrix3d ke = element_stiffness(mesh.node(mesh.triangles(t, 0)),
                                                 mesh.node(mesh.triangles(t, 1)),
                                                 mesh.node(mesh.triangles(t, 2)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) trip.emplace_back(mesh.triangles(t, i), mesh.triangles(t, j), ke(i, j));
  }
  Eigen::SparseMatrix<double> K(n, n);
  K.setFromTriplets(trip.begin(), trip.end());
  return K;
}

double discrete_energy(const Mesh& mesh, const Eigen::VectorXd& u) {
  double e = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const int i0 = mesh.triangles(t, 0), i1 = mesh.triangles(t, 1), i2 = mesh.triangles(t, 2);
    const Point a = mesh.node(i0), b = mesh.node(i1), c = mesh.node(i2);
    const double area2 = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    const double d1 = u(i1) - u(i0), d2 = u(i2) - u(i0);
    // gradient from the two edge differences
    const double gr = (d1 * (c.y() - a.y()) - d2 * (b.y() - a.y())) / area2;
    const double gz = (d2 * (b.x() - a.x()) - d1 * (c.x() - a.x())) / area2;
    const double rbar = (a.x() + b.x() + c.x()) / 3.0;
    e += rbar * (gr * gr + gz * gz) * 0.5 * std::abs(area2);
  }
  return 2.0 * M_PI * e;
}

SolutionField solve_dirichlet(std::shared_ptr<const Mesh> mesh_ptr, const BoundaryData& data,
                              double tol) {
  if (!mesh_ptr) throw InputError("solve needs a mesh");
  if (!(tol > 0)) throw InputError("solver tolerance must be > 0", "tol");
  const Mesh& mesh = *mesh_ptr;
  const int n = mesh.num_nodes();
  const Eigen::VectorXd g = dirichlet_values(mesh, data);

  std::vector<int> map(n, -1);
  int nf = 0;
  double gmin = std::numeric_limits<double>::infinity(), gmax = -gmin, gsum = 0.0;
  int nd = 0;
  for (int i = 0; i < n; ++i) {
    if (std::isnan(g(i))) {
      map[i] = nf++;
    } else {
      gmin = std::min(gmin, g(i));
      gmax = std::max(gmax, g(i));
      gsum += g(i);
      ++nd;
    }
  }
  if (nd == 0) throw InputError("no Dirichlet nodes in mesh");

  const Eigen::SparseMatrix<double> K = assemble(mesh);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
  for (int col = 0; col < K.outerSize(); ++col)
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, col); it; ++it) {
      const int i = static_cast<int>(it.row()), j = static_cast<int>(it.col());
      if (map[i] < 0) continue;
      if (map[j] >= 0)
        trip.emplace_back(map[i], map[j], it.value());
      else
        rhs(map[i]) -= it.value() * g(j);
    }

  SolutionField sol;
  sol.mesh = mesh_ptr;
  sol.min_datum = gmin;
  sol.max_datum = gmax;
  sol.values = g;
  sol.stats.unknowns = nf;
  if (nf > 0 && gmin == gmax) {
    // constant data: the maximum principle pins the solution
    sol.values.setConstant(gmin);
  } else if (nf > 0) {
    Eigen::SparseMatrix<double> Kff(nf, nf);
    Kff.setFromTriplets(trip.begin(), trip.end());
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(tol);
    const int cap = static_cast<int>(20.0 * std::sqrt(static_cast<double>(nf))) + 1000;
    cg.setMaxIterations(cap);
    cg.compute(Kff);
    const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(nf, gsum / nd);
    const Eigen::VectorXd x = cg.solveWithGuess(rhs, x0);
    sol.stats.iterations = static_cast<int>(cg.iterations());
    sol.stats.residual = cg.error();
    if (cg.info() != Eigen::Success || !(cg.error() <= tol)) {
      std::ostringstream s;
      s << "conjugate gradient stopped after " << cg.iterations() << " iterations (cap " << cap
        << ") with relative residual " << cg.error();
      throw ConvergenceError(s.str(), sol.stats);
    }
    for (int i = 0; i < n; ++i)
      if (map[i] >= 0) sol.values(i) = x(map[i]);
  }
  sol.dirichlet_energy = discrete_energy(mesh, sol.values);
  return sol;
}

double energy(const SolutionField& field) { return field.dirichlet_energy; }

double SolutionField::interpolate(const Point& p) const {
  const Mesh& m = *mesh;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Point a = m.node(m.triangles(t, 0)), b = m.node(m.triangles(t, 1)),
                c = m.node(m.triangles(t, 2));
    const double det = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
    const double l1 = ((p.x() - a.x()) * (c.y() - a.y()) - (p.y() - a.y()) * (c.x() - a.x())) / det;
    const double l2 = ((b.x() - a.x()) * (p.y() - a.y()) - (b.y() - a.y()) * (p.x() - a.x())) / det;
    const double l0 = 1.0 - l1 - l2;
    const double eps = -1e-12;
    if (l0 >= eps && l1 >= eps && l2 >= eps)
      return l0 * values(m.triangles(t, 0)) + l1 * values(m.triangles(t, 1)) +
             l2 * values(m.triangles(t, 2));
  }
  std::ostringstream s;
  s << "point (r=" << p.x() << ", z=" << p.y() << ") lies outside the mesh";
  throw DomainError(s.str());
}

double two_constant_oracle_log(const PotentialField& field, double A, double B, double alpha,
                               double beta, double log_r, double z) {
  if (!(A < B)) throw InputError("oracle needs A < B");
  const double v = field.at_log_radius(log_r, z);
  if (!(v > A && v < B)) {
    std::ostringstream s;
    s << "point (log r=" << log_r << ", z=" << z << ") outside the domain: V=" << v;
    throw DomainError(s.str());
  }
  if (alpha == beta) return alpha;
  if (alpha == A && beta == B) return v;
  return alpha + (beta - alpha) * (v - A) / (B - A);
}

std::vector<double> two_constant_oracle(const PotentialField& field, double A, double B,
                                        double alpha, double beta,
                                        const std::vector<Point>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Point& p : points) {
    if (!(p.x() >= 0)) throw DomainError("negative radius in oracle point");
    out.push_back(two_constant_oracle_log(field, A, B, alpha, beta, std::log(p.x()), p.y()));
  }
  return out;
}

}  // namespace cusplab
