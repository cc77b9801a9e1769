#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "cusplab/contour.hpp"
#include "cusplab/potential.hpp"

namespace cusplab {

// Dense exact samples of one boundary component with arc length measured
// from the upper axis crossing (0, z2).
struct BoundaryCurve {
  double level = 0.0;
  std::vector<Point> points;     // ordered by increasing z
  std::vector<double> arc;       // arc length from the upper end
  double length() const { return arc.empty() ? 0.0 : arc.front(); }
};

struct CrossSection {
  PotentialField field;
  double A = 0.0, B = 0.0;
  double r_min = 0.0;
  double z_cut = 0.0;
  ContourCurve outer;  // level A
  ContourCurve inner;  // level B
  BoundaryCurve outer_dense;  // (0, z1(A)) .. (0, z2(A))
  BoundaryCurve inner_dense;  // origin .. (0, z2(B)), through the cusp
  double lower_axis[2] = {0.0, 0.0};  // (z1(A), 0)
  double upper_axis[2] = {0.0, 0.0};  // (z2(B), z2(A))

  // A < V < B
  bool contains(const Point& p) const;
};

CrossSection build_cross_section(const PotentialField& field, double A, double B,
                                 double r_min = 1e-4, int dense_points = 2000);

enum class BoundaryTag { interior, outer_level, inner_level, cusp_cap, axis };
const char* to_string(BoundaryTag t);
BoundaryTag tag_from_string(const std::string& s);

struct BoundaryEdge {
  int a = 0, b = 0;
  BoundaryTag tag = BoundaryTag::interior;
};

struct Mesh {
  Eigen::Matrix<double, Eigen::Dynamic, 2> nodes;  // (r, z)
  Eigen::Matrix<int, Eigen::Dynamic, 3> triangles;  // counterclockwise in (r, z)
  std::vector<BoundaryTag> tags;
  std::vector<BoundaryEdge> boundary_edges;
  std::vector<double> arc;  // boundary arc coordinate on level nodes, NaN elsewhere
  int n_levels = 0, n_stations = 0;
  double z_cut = 0.0;

  int num_nodes() const { return static_cast<int>(nodes.rows()); }
  int num_triangles() const { return static_cast<int>(triangles.rows()); }
  Point node(int i) const { return nodes.row(i).transpose(); }
  double signed_area(int t) const;
};

// Vinokur two-sided stretching: n points on [0,1] with end spacings ~d0, ~d1
Eigen::VectorXd vinokur_stretching(int n, double d0, double d1);

Mesh triangulate(const CrossSection& cs, int n_levels, int n_stations);

// uniform structured mesh of [r0,r1] x [z0,z1]; every boundary node tagged outer-level
Mesh rectangle_mesh(double r0, double r1, double z0, double z1, int nr, int nz);

struct MeshQuality {
  double min_angle_deg = 0.0;
  double max_angle_deg = 0.0;
  double min_area = 0.0;
  double max_area = 0.0;
  int negative_area_count = 0;
  std::map<std::string, int> node_census;
  std::map<std::string, int> edge_census;
  int untagged_boundary_edges = 0;
  int multiply_tagged_boundary_edges = 0;
  int euler = 0;  // V - E + F
  int boundary_loops = 0;
  double min_node_r = 0.0;
  bool euler_ok = false;
  bool pass = false;
};

MeshQuality mesh_quality(const Mesh& mesh, double quality_floor_deg = 15.0);

}  // namespace cusplab
