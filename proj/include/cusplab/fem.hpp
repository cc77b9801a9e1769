#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <map>
#include <memory>
#include <variant>
#include <vector>

#include "cusplab/errors.hpp"
#include "cusplab/mesh.hpp"

namespace cusplab {

// exp(1 - 1/(1 - ((s - s0)/w)^2)) * eps inside |s - s0| < w
struct BumpDatum {
  double s0 = 0.0;
  double w = 1.0;
  double eps = 1.0;
};

struct TabulatedDatum {
  std::vector<double> values;  // one per node carrying the tag, in node order
};

using Datum = std::variant<double, BumpDatum, TabulatedDatum>;

double bump_profile(const BumpDatum& b, double s);

class BoundaryData {
 public:
  BoundaryData() = default;
  // constant per component; the cap inherits the inner value
  static BoundaryData constants(double outer, double inner);

  BoundaryData& set(BoundaryTag tag, Datum d);
  bool has(BoundaryTag tag) const { return data_.count(tag) > 0; }
  const Datum& get(BoundaryTag tag) const;
  // cap datum with the documented default when unset
  Datum cap_datum() const;

  // datum on a boundary component at arc coordinate s (tabulated data refused)
  double at_arc(BoundaryTag tag, double s) const;

  BoundaryData scaled(double k) const;

 private:
  std::map<BoundaryTag, Datum> data_;
};

// prescribed values at Dirichlet nodes (outer, inner, cap); NaN at free nodes
Eigen::VectorXd dirichlet_values(const Mesh& mesh, const BoundaryData& data);

// K with K_ij = sum_T rbar_T area_T grad(phi_i).grad(phi_j); energy = 2 pi u^T K u
Eigen::SparseMatrix<double> assemble(const Mesh& mesh);

// element matrix for one triangle (rows/cols follow the vertex order)
Eigen::Matrix3d element_stiffness(const Point& a, const Point& b, const Point& c);

struct SolutionField {
  std::shared_ptr<const Mesh> mesh;
  Eigen::VectorXd values;
  double dirichlet_energy = 0.0;
  SolverStats stats;
  double min_datum = 0.0, max_datum = 0.0;

  // P1 interpolation; DomainError outside the mesh
  double interpolate(const Point& p) const;
};

double discrete_energy(const Mesh& mesh, const Eigen::VectorXd& u);

SolutionField solve_dirichlet(std::shared_ptr<const Mesh> mesh, const BoundaryData& data,
                              double tol = 1e-10);

double energy(const SolutionField& field);

std::vector<double> two_constant_oracle(const PotentialField& field, double A, double B,
                                        double alpha, double beta,
                                        const std::vector<Point>& points);
// same at a point given by (log r, z)
double two_constant_oracle_log(const PotentialField& field, double A, double B, double alpha,
                               double beta, double log_r, double z);

}  // namespace cusplab
