#include "cusplab/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <variant>

#include "cusplab/contour.hpp"
#include "cusplab/errors.hpp"
#include "cusplab/fem.hpp"
#include "cusplab/io.hpp"
#include "cusplab/mesh.hpp"
#include "cusplab/probe.hpp"
#include "cusplab/report.hpp"
#include "cusplab/wiener.hpp"
#include "cusplab/wos.hpp"

namespace cusplab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Ctx {
  const RunConfig& cfg;
  fs::path out;
  PotentialField field;
};

std::vector<double> linspace(const GridSpec& g) {
  std::vector<double> v;
  for (int i = 0; i < g.count; ++i) v.push_back(g.lo + (g.hi - g.lo) * i / (g.count - 1));
  return v;
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw InputError("cannot write " + p.string(), "output_dir");
  out << j.dump(2) << '\n';
}

bool two_constant(const RunConfig& c, double& alpha, double& beta) {
  const json o = c.data_outer.is_null() ? json(c.A) : c.data_outer;
  const json i = c.data_inner.is_null() ? json(c.B) : c.data_inner;
  if (!o.is_number() || !i.is_number()) return false;
  if (!c.data_cap.is_null() && !(c.data_cap.is_number() && c.data_cap.get<double>() == i.get<double>()))
    return false;
  alpha = o.get<double>();
  beta = i.get<double>();
  return true;
}

// ------------------------------------------------------------ potential-grid

ModuleReport potential_grid(Ctx& x, const fs::path& file) {
  CsvWriter csv(file, {"r", "z", "V"});
  const auto rs = linspace(x.cfg.grid_r), zs = linspace(x.cfg.grid_z);
  bool monotone = true;
  for (double z : zs) {
    double prev = INFINITY;
    for (double r : rs) {
      const double v = x.field(r, z);
      csv.cell(r).cell(z).cell(v).end_row();
      if (r > 0 && !(v < prev)) monotone = false;
      prev = v;
    }
  }
  ModuleReport m{"potential", {{"file", file.filename().string()}, {"points", rs.size() * zs.size()},
                               {"v00", x.field.v00()}}};
  m.checks.push_back({"strictly decreasing in r", monotone});
  return m;
}

// ------------------------------------------------------------ contour

struct Traced {
  std::vector<ContourCurve> curves;
};

void contour_svg(const std::vector<ContourCurve>& curves, double A, double B, const fs::path& file) {
  double rmax = 0.1, zlo = 0, zhi = 1;
  for (const auto& c : curves)
    for (const auto& s : c.samples) {
      rmax = std::max(rmax, s.r);
      zlo = std::min(zlo, s.z);
      zhi = std::max(zhi, s.z);
    }
  const double pad = 0.05 * (zhi - zlo);
  SvgPlot svg(640, 640, -rmax * 1.05, rmax * 1.05, zlo - pad, zhi + pad);
  svg.axes("r (mirrored)", "z");
  svg.segment({0, 0}, {0, 1}, "#1f4fd8", 3.0);
  for (const auto& c : curves) {
    const bool hi = c.level == A || c.level == B;
    std::vector<Point> right = c.points(), left;
    for (const auto& p : right) left.emplace_back(-p.x(), p.y());
    const std::string colour = hi ? "#c0392b" : "#7f8c8d";
    char cls[48];
    std::snprintf(cls, sizeof cls, "%slevel-%s", hi ? "highlight " : "", fmt_num(c.level).c_str());
    svg.polyline(right, colour, hi ? 2.5 : 1.0, cls);
    svg.polyline(left, colour, hi ? 2.5 : 1.0, cls);
    if (hi) svg.text({right[right.size() / 2].x(), right[right.size() / 2].y()}, "c=" + fmt_num(c.level));
  }
  svg.save(file);
}

ModuleReport contour(Ctx& x, const fs::path& csv_file, const fs::path& svg_file,
                     std::vector<ContourCurve>* keep = nullptr) {
  std::vector<ContourCurve> curves;
  for (double c : x.cfg.contour_levels)
    curves.push_back(trace_contour(x.field, c, x.cfg.contour_n,
                                   x.cfg.grading == "uniform" ? Grading::uniform : Grading::geometric));
  CsvWriter csv(csv_file, {"level", "z", "r", "residual"});
  double max_res = 0.0;
  json levels = json::array();
  for (const auto& cc : curves) {
    for (const auto& s : cc.samples) csv.cell(cc.level).cell(s.z).cell(s.r).cell(s.residual).end_row();
    max_res = std::max(max_res, cc.max_residual());
    levels.push_back({{"level", cc.level}, {"z1", cc.z1}, {"z2", cc.z2}, {"samples", cc.samples.size()},
                      {"max_residual", cc.max_residual()}});
  }
  contour_svg(curves, x.cfg.A, x.cfg.B, svg_file);
  ModuleReport m{"contour", {{"levels", levels}, {"file", csv_file.filename().string()},
                             {"svg", svg_file.filename().string()}}};
  m.checks.push_back({"residuals <= 1e-10", max_res <= 1e-10, {{"max_residual", max_res}}});
  if (keep) *keep = std::move(curves);
  return m;
}

// ------------------------------------------------------------ mesh

ModuleReport mesh_report(const CrossSection& cs, const Mesh& mesh, const MeshQuality& q) {
  json census = q.node_census;
  ModuleReport m{"mesh",
                 {{"n_levels", mesh.n_levels},
                  {"n_stations", mesh.n_stations},
                  {"nodes", mesh.num_nodes()},
                  {"triangles", mesh.num_triangles()},
                  {"z_cut", cs.z_cut},
                  {"r_min", cs.r_min},
                  {"lower_axis", {cs.lower_axis[0], cs.lower_axis[1]}},
                  {"upper_axis", {cs.upper_axis[0], cs.upper_axis[1]}},
                  {"min_angle_deg", q.min_angle_deg},
                  {"max_angle_deg", q.max_angle_deg},
                  {"min_area", q.min_area},
                  {"max_area", q.max_area},
                  {"euler", q.euler},
                  {"node_census", census},
                  {"edge_census", json(q.edge_census)}}};
  m.checks.push_back({"mesh quality", q.pass});
  return m;
}

void mesh_svg(const Mesh& mesh, const fs::path& file) {
  const double rmax = mesh.nodes.col(0).maxCoeff();
  const double zlo = mesh.nodes.col(1).minCoeff(), zhi = mesh.nodes.col(1).maxCoeff();
  SvgPlot svg(640, 800, 0, rmax * 1.05, zlo - 0.05, zhi + 0.05);
  svg.axes("r", "z");
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    std::vector<Point> p{mesh.node(mesh.triangles(t, 0)), mesh.node(mesh.triangles(t, 1)),
                         mesh.node(mesh.triangles(t, 2)), mesh.node(mesh.triangles(t, 0))};
    svg.polyline(p, "#555", 0.4);
  }
  for (const auto& e : mesh.boundary_edges) {
    const char* col = e.tag == BoundaryTag::outer_level  ? "#c0392b"
                      : e.tag == BoundaryTag::inner_level ? "#1f4fd8"
                      : e.tag == BoundaryTag::cusp_cap    ? "#27ae60"
                                                          : "#f39c12";
    svg.segment(mesh.node(e.a), mesh.node(e.b), col, 1.6);
  }
  svg.save(file);
}

void write_mesh(const Mesh& mesh, const fs::path& dir) {
  CsvWriter nodes(dir / "nodes.csv", {"id", "r", "z", "tag"});
  for (int i = 0; i < mesh.num_nodes(); ++i)
    nodes.cell(i).cell(mesh.nodes(i, 0)).cell(mesh.nodes(i, 1)).cell(std::string(to_string(mesh.tags[i]))).end_row();
  CsvWriter tris(dir / "tris.csv", {"id", "n0", "n1", "n2"});
  for (int t = 0; t < mesh.num_triangles(); ++t)
    tris.cell(t).cell(mesh.triangles(t, 0)).cell(mesh.triangles(t, 1)).cell(mesh.triangles(t, 2)).end_row();
  mesh_svg(mesh, dir / "mesh.svg");
}

// ------------------------------------------------------------ solve

ModuleReport solve_report(Ctx& x, const CrossSection& cs, const SolutionField& sol) {
  const Mesh& mesh = *sol.mesh;
  const double vmin = sol.values.minCoeff(), vmax = sol.values.maxCoeff();
  ModuleReport m{"fem",
                 {{"energy", sol.dirichlet_energy},
                  {"iterations", sol.stats.iterations},
                  {"residual", sol.stats.residual},
                  {"unknowns", sol.stats.unknowns},
                  {"max_principle", {{"lower_margin", vmin - sol.min_datum}, {"upper_margin", sol.max_datum - vmax}}}}};
  const double tol = 1e-8;
  m.checks.push_back({"discrete maximum principle", vmin >= sol.min_datum - tol && vmax <= sol.max_datum + tol});
  double alpha, beta;
  if (two_constant(x.cfg, alpha, beta)) {
    double err = 0.0;
    for (int i = 0; i < mesh.num_nodes(); ++i) {
      const Point p = mesh.node(i);
      if (mesh.tags[i] != BoundaryTag::interior || p.y() < 2 * cs.z_cut) continue;
      const double o = two_constant_oracle_log(x.field, cs.A, cs.B, alpha, beta, std::log(p.x()), p.y());
      err = std::max(err, std::abs(sol.values(i) - o) / std::max(std::abs(o), 1e-300));
    }
    const double k = (beta - alpha) / (cs.B - cs.A);
    // divergence theorem: the flux of grad V through each component is 4 pi M
    const auto& rho = x.field.density();
    const double mass = integrate([&](double z) { return rho(z); }, 0.0, rho.length()).value;
    const double expect = k * k * 4 * M_PI * mass * (cs.B - cs.A);
    m.data["oracle_max_rel_error"] = err;
    m.data["energy_oracle"] = expect;
    m.data["energy_rel_error"] = expect > 0 ? std::abs(sol.dirichlet_energy - expect) / expect
                                            : std::abs(sol.dirichlet_energy);
  }
  return m;
}

// ------------------------------------------------------------ probe

double datum_at_origin(const BoundaryData& d) {
  const Datum& in = d.get(BoundaryTag::inner_level);
  if (auto* c = std::get_if<double>(&in)) return *c;
  return 0.0;
}

std::vector<ModuleReport> probe(Ctx& x) {
  const RunConfig& c = x.cfg;
  const BoundaryData data = c.boundary_data();
  std::vector<ModuleReport> out;
  std::vector<ProbePath> paths;
  std::optional<CrossSection> cs;
  std::optional<WosDomain> domain;
  json fem_trim;
  auto need_cs = [&] {
    if (!cs) cs.emplace(build_cross_section(x.field, c.A, c.B, c.r_min));
    return &*cs;
  };

  if (c.probe_source == "oracle") {
    double alpha, beta;
    if (!two_constant(c, alpha, beta))
      throw InputError("oracle source needs constant data per component", "/data");
    OracleSource src{&x.field, c.A, c.B, alpha, beta};
    for (const auto& p : c.paths) paths.push_back(sample_path(src, x.field, p));
  } else if (c.probe_source == "fem") {
    auto mesh = std::make_shared<const Mesh>(triangulate(*need_cs(), c.n_levels, c.n_stations));
    const SolutionField sol = solve_dirichlet(mesh, data, c.cg_tol);
    FemSource src{&sol};
    // keep only the stations the truncated mesh resolves
    json trimmed = json::array();
    for (PathSpec p : c.paths) {
      const auto st = path_stations(x.field, p);
      int keep = 0;
      while (keep < p.stations && st[keep].z >= 2 * mesh->z_cut) ++keep;
      if (keep < p.stations) trimmed.push_back({{"id", p.id}, {"kept", keep}, {"requested", p.stations}});
      if (keep == 0) continue;
      p.stations = keep;
      paths.push_back(sample_path(src, x.field, p));
    }
    fem_trim = trimmed;
  } else {
    domain.emplace(*need_cs());
    WosSource src{&*domain, score_boundary_data(data), {c.walks, c.eps, c.seed, c.step_cap}};
    for (std::size_t i = 0; i < c.paths.size(); ++i) {
      src.options.seed = walk_seed(c.seed, 1000 + i);
      paths.push_back(sample_path(src, x.field, c.paths[i]));
    }
  }

  CsvWriter csv(x.out / "probe.csv", {"path", "station", "r", "z", "value", "stderr"});
  json pj = json::array();
  for (const auto& p : paths) {
    for (std::size_t k = 0; k < p.stations.size(); ++k) {
      const auto& s = p.stations[k];
      csv.cell(p.spec.id).cell(static_cast<int>(k)).cell(s.r).cell(s.z).cell(s.value).cell(s.std_error).end_row();
    }
    pj.push_back({{"id", p.spec.id}, {"kind", to_string(p.spec.kind)}, {"limit", p.limit}, {"spread", p.spread}});
  }
  json verdict = {{"source", c.probe_source}, {"paths", pj}};
  if (!fem_trim.is_null()) verdict["truncated_paths"] = fem_trim;
  ModuleReport m{"probe"};
  if (paths.size() >= 3) {
    const LimitSet ls = limit_set_estimate(paths, datum_at_origin(data));
    verdict["limit_set"] = {{"lo", ls.lo}, {"hi", ls.hi}, {"classification", to_string(ls.classification)}};
  }

  if (c.nonlocality) {
    const CrossSection& s = *need_cs();
    BumpDatum bump = c.nonlocality_bump;
    const double Lo = s.outer_dense.length();
    if (bump.s0 < 0) bump.s0 = 0.5 * Lo;
    if (bump.w < 0) bump.w = 0.25 * Lo;
    const NonlocalityReport nl =
        nonlocality_experiment(s, bump, c.nonlocality_levels, c.nonlocality_z,
                               {c.walks, c.eps, walk_seed(c.seed, 77), c.step_cap});
    json st = json::array();
    for (const auto& p : nl.paths)
      for (std::size_t k = 0; k < p.stations.size(); ++k) {
        const auto& q = p.stations[k];
        csv.cell("nonlocality-" + p.spec.id).cell(static_cast<int>(k)).cell(q.r).cell(q.z).cell(q.value)
            .cell(q.std_error).end_row();
        st.push_back({{"path", p.spec.id}, {"z", q.z}, {"value", q.value}, {"stderr", q.std_error}});
      }
    verdict["nonlocality"] = {{"floor", nl.floor}, {"verdict", nl.verdict}, {"stations", st},
                              {"bump", {{"s0", bump.s0}, {"w", bump.w}, {"eps", bump.eps}}}};
    m.checks.push_back({"nonlocality floor > 0", nl.floor > 0, {{"floor", nl.floor}}});
  }
  write_json(x.out / "verdict.json", verdict);
  m.data = verdict;
  out.push_back(m);
  return out;
}

// ------------------------------------------------------------ wiener

WienerProfile named_profile(const std::string& name, const PotentialField& field, double B) {
  if (name == "exp-log-squared") return profile_exp_log_squared();
  if (name == "log-power") return profile_log_power();
  if (name == "cubic") return profile_power(3.0);
  return profile_from_field(field, B, "lebesgue-r2");
}

ModuleReport wiener(Ctx& x) {
  const RunConfig& c = x.cfg;
  std::vector<WienerProfile> profiles;
  if (!c.wiener_input.empty()) {
    const CsvTable t = read_csv(c.wiener_input);
    const int iz = t.column("z"), ir = t.column("r");
    if (iz < 0 || ir < 0) throw InputError("contour input needs z and r columns", "/wiener/input");
    ContourCurve cc;
    for (const auto& row : t.rows) {
      ContourSample s;
      s.z = std::stod(row.at(iz));
      s.r = std::stod(row.at(ir));
      s.log_r = s.r > 0 ? std::log(s.r) : -INFINITY;
      cc.samples.push_back(s);
    }
    profiles.push_back(profile_from_curve(cc, fs::path(c.wiener_input).filename().string()));
  } else {
    for (const auto& n : c.wiener_profiles) profiles.push_back(named_profile(n, x.field, c.B));
  }
  json reps = json::array();
  ModuleReport m{"wiener"};
  for (const auto& p : profiles) {
    std::set<std::string> classes;
    for (double q : c.wiener_q) {
      WienerReport r = log_series(p, q);
      classify(r);
      classes.insert(to_string(r.classification));
      reps.push_back({{"profile", r.profile},
                      {"q", q},
                      {"j0", r.j0},
                      {"j_max", r.j_max},
                      {"terms", r.terms},
                      {"partial_sums", r.partial_sums},
                      {"classification", to_string(r.classification)},
                      {"diagnostics",
                       {{"tail_ratio", r.diagnostics.tail_ratio},
                        {"power_exponent", r.diagnostics.power_exponent},
                        {"log_slope", r.diagnostics.log_slope},
                        {"tail_start", r.diagnostics.tail_start},
                        {"note", r.diagnostics.note}}}});
    }
    m.checks.push_back({"q-robust classification: " + p.name, classes.size() == 1,
                        {{"classes", std::vector<std::string>(classes.begin(), classes.end())}}});
  }
  m.data = {{"reports", reps}};
  write_json(x.out / "wiener.json", m.data);
  return m;
}

// ------------------------------------------------------------ wos

ModuleReport wos(Ctx& x) {
  const RunConfig& c = x.cfg;
  const CrossSection cs = build_cross_section(x.field, c.A, c.B, c.r_min);
  const WosDomain domain(cs);
  const BoundaryData data = c.boundary_data();
  const WosScore score = score_boundary_data(data);
  double alpha = 0, beta = 0;
  const bool oracle = two_constant(c, alpha, beta);
  CsvWriter csv(x.out / "wos.csv", {"point", "mean", "stderr", "walks"});
  json pts = json::array();
  ModuleReport m{"wos"};
  bool agree = true;
  for (std::size_t i = 0; i < c.wos_points.size(); ++i) {
    const Point& p = c.wos_points[i];
    WosOptions o{c.walks, c.eps, walk_seed(c.seed, i), c.step_cap};
    const WosEstimate e = estimate(domain, score, Eigen::Vector3d(p.x(), 0.0, p.y()), o);
    csv.cell(static_cast<int>(i)).cell(e.mean).cell(e.std_error).cell(e.walks).end_row();
    json row = {{"point", static_cast<int>(i)}, {"r", p.x()}, {"z", p.y()}, {"mean", e.mean},
                {"stderr", e.std_error}, {"walks", e.walks}, {"discarded", e.discarded}, {"eps", e.eps},
                {"mean_steps", e.mean_steps}};
    if (oracle) {
      const double v = two_constant_oracle_log(x.field, c.A, c.B, alpha, beta, std::log(p.x()), p.y());
      row["oracle"] = v;
      row["z_score"] = (e.mean - v) / e.std_error;
      agree = agree && std::abs(e.mean - v) <= 3 * e.std_error;
    }
    pts.push_back(row);
  }
  m.data = {{"points", pts}};
  if (oracle) m.checks.push_back({"agreement with the two-constant oracle within 3 stderr", agree});
  return m;
}

// ------------------------------------------------------------ figures

std::vector<ModuleReport> reproduce_figures(Ctx& x) {
  std::vector<ModuleReport> out;
  out.push_back(potential_grid(x, x.out / "potential_surface.csv"));

  RunConfig fc = x.cfg;
  std::vector<double> lv{0.5, 0.75, 1.25, 1.5, 2.0, 3.0};
  for (double c : x.cfg.contour_levels)
    if (std::find(lv.begin(), lv.end(), c) == lv.end()) lv.push_back(c);
  std::sort(lv.begin(), lv.end());
  fc.contour_levels = lv;
  Ctx fx{fc, x.out, x.field};
  std::vector<ContourCurve> curves;
  ModuleReport cm = contour(fx, x.out / "contour_map.csv", x.out / "contour_map.svg", &curves);
  bool has_half = false, has_two = false;
  for (const auto& cc : curves) {
    has_half = has_half || (cc.level == 0.5 && cc.max_residual() <= 1e-10);
    has_two = has_two || (cc.level == 2.0 && cc.max_residual() <= 1e-10);
  }
  cm.checks.push_back({"levels 1/2 and 2 present with residuals <= 1e-10", has_half && has_two});
  out.push_back(cm);

  CsvWriter cloud(x.out / "surface_cloud.csv", {"x", "y", "z", "level"});
  const int nphi = 48;
  json tang = json::array();
  bool tangent = false;
  for (const auto& cc : curves) {
    if (cc.level != 0.5 && cc.level != 2.0) continue;
    for (const auto& s : cc.samples)
      for (int k = 0; k <= nphi; ++k) {
        const double phi = 1.5 * M_PI * k / nphi;  // cut open over a quarter turn
        cloud.cell(s.r * std::cos(phi)).cell(s.r * std::sin(phi)).cell(s.z).cell(cc.level).end_row();
      }
    if (cc.level == 2.0) {
      // r/z over the stations in the last decade of z toward the origin
      std::vector<std::pair<double, double>> rz;
      for (const auto& s : cc.samples)
        if (s.z > 0 && s.r > 0) rz.emplace_back(s.z, s.r / s.z);
      std::sort(rz.begin(), rz.end());
      const double zmin = rz.front().first;
      bool mono = true;
      for (std::size_t i = 1; i < rz.size() && rz[i].first <= 10 * zmin; ++i)
        mono = mono && rz[i - 1].second < rz[i].second;
      for (const auto& [z, q] : rz)
        if (z <= 10 * zmin) tang.push_back({{"z", z}, {"r_over_z", q}});
      tangent = mono && rz.front().second < 1e-6;
    }
  }
  ModuleReport fm{"figures", {{"cloud", "surface_cloud.csv"}, {"tangency", tang}}};
  fm.checks.push_back({"cusp tangency r/z -> 0 on level 2", tangent});
  out.push_back(fm);
  return out;
}

}  // namespace

nlohmann::json run_subcommand(const RunConfig& cfg) {
  Ctx x{cfg, fs::path(cfg.output_dir),
        PotentialField(cfg.density.build(), QuadratureOptions{cfg.quad_tol, 0.0, 2000})};
  ensure_dir(x.out);
  write_json(x.out / "config.json", cfg.to_json());
  std::vector<ModuleReport> bundle;
  const std::string& s = cfg.subcommand;
  if (s == "potential-grid") {
    bundle.push_back(potential_grid(x, x.out / "potential_grid.csv"));
  } else if (s == "contour") {
    bundle.push_back(contour(x, x.out / "contour.csv", x.out / "contour_map.svg"));
  } else if (s == "mesh" || s == "solve") {
    const CrossSection cs = build_cross_section(x.field, cfg.A, cfg.B, cfg.r_min);
    auto mesh = std::make_shared<const Mesh>(triangulate(cs, cfg.n_levels, cfg.n_stations));
    const MeshQuality q = mesh_quality(*mesh);
    bundle.push_back(mesh_report(cs, *mesh, q));
    if (s == "mesh") {
      write_mesh(*mesh, x.out);
    } else {
      const SolutionField sol = solve_dirichlet(mesh, cfg.boundary_data(), cfg.cg_tol);
      CsvWriter csv(x.out / "solution.csv", {"id", "r", "z", "value"});
      for (int i = 0; i < mesh->num_nodes(); ++i)
        csv.cell(i).cell(mesh->nodes(i, 0)).cell(mesh->nodes(i, 1)).cell(sol.values(i)).end_row();
      ModuleReport fr = solve_report(x, cs, sol);
      write_json(x.out / "solve_report.json", fr.data);
      bundle.push_back(fr);
    }
  } else if (s == "probe") {
    for (auto& m : probe(x)) bundle.push_back(m);
  } else if (s == "wiener") {
    bundle.push_back(wiener(x));
  } else if (s == "wos") {
    bundle.push_back(wos(x));
  } else if (s == "reproduce-figures") {
    for (auto& m : reproduce_figures(x)) bundle.push_back(m);
  } else {
    throw InputError("unknown subcommand '" + s + "'", "/subcommand");
  }
  json prov = {{"subcommand", s},
               {"seed", cfg.seed},
               {"tolerances", {{"quadrature", cfg.quad_tol}, {"cg", cfg.cg_tol}, {"contour", 1e-10}}},
               {"density", x.field.density().name()}};
  json rep = report(bundle, prov);
  write_json(x.out / "report.json", rep);
  return rep;
}

int error_exit(const std::exception& e, std::ostream& err) {
  json j;
  int code = 2;
  if (const auto* ce = dynamic_cast<const Error*>(&e)) {
    j["error"] = ce->kind();
    code = ce->is_validation() ? 1 : 2;
    if (const auto* ie = dynamic_cast<const InputError*>(&e); ie && !ie->key().empty()) j["key"] = ie->key();
    if (const auto* ae = dynamic_cast<const AccuracyError*>(&e)) j["best_estimate"] = ae->best_estimate();
  } else if (dynamic_cast<const json::exception*>(&e)) {
    j["error"] = "input";
    code = 1;
  } else {
    j["error"] = "internal";
  }
  j["message"] = e.what();
  j["exit_code"] = code;
  err << j.dump() << std::endl;
  return code;
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    const json rep = run_subcommand(config);
    return 0;
  } catch (const std::exception& e) {
    return error_exit(e, err);
  }
}

}  // namespace cusplab
