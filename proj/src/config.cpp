#include "cusplab/config.hpp"

#include <cmath>
#include <cstdlib>
#include <set>

#include "cusplab/errors.hpp"

namespace cusplab {

using nlohmann::json;

namespace {

// reads one JSON object, tracking the pointer and rejecting unknown keys
class Obj {
 public:
  Obj(const json& j, std::string ptr) : j_(j), ptr_(std::move(ptr)) {
    if (!j_.is_object()) throw InputError("expected an object at " + where(), where());
  }
  std::string where() const { return ptr_.empty() ? "/" : ptr_; }
  std::string at(const std::string& k) const { return ptr_ + "/" + k; }
  bool has(const std::string& k) {
    seen_.insert(k);
    return j_.contains(k);
  }
  const json& raw(const std::string& k) {
    seen_.insert(k);
    return j_.at(k);
  }
  void num(const std::string& k, double& out) {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if (!v.is_number()) throw InputError("expected a number at " + at(k), at(k));
    out = v.get<double>();
    if (!std::isfinite(out)) throw InputError("non-finite number at " + at(k), at(k));
  }
  void integer(const std::string& k, int& out) {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if (!v.is_number_integer()) throw InputError("expected an integer at " + at(k), at(k));
    out = v.get<int>();
  }
  void str(const std::string& k, std::string& out) {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if (!v.is_string()) throw InputError("expected a string at " + at(k), at(k));
    out = v.get<std::string>();
  }
  void boolean(const std::string& k, bool& out) {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if (!v.is_boolean()) throw InputError("expected a boolean at " + at(k), at(k));
    out = v.get<bool>();
  }
  void nums(const std::string& k, std::vector<double>& out) {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if (!v.is_array()) throw InputError("expected an array at " + at(k), at(k));
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number())
        throw InputError("expected a number at " + at(k) + "/" + std::to_string(i),
                         at(k) + "/" + std::to_string(i));
      out.push_back(v[i].get<double>());
    }
  }
  void strs(const std::string& k, std::vector<std::string>& out) {
    if (!has(k)) return;
    const json& v = j_.at(k);
    if (!v.is_array()) throw InputError("expected an array at " + at(k), at(k));
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string())
        throw InputError("expected a string at " + at(k) + "/" + std::to_string(i),
                         at(k) + "/" + std::to_string(i));
      out.push_back(v[i].get<std::string>());
    }
  }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw InputError("unknown key " + at(it.key()), at(it.key()));
  }

 private:
  const json& j_;
  std::string ptr_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& msg, const std::string& key) {
  if (!ok) throw InputError(msg + " (at " + key + ")", key);
}

void check_datum(const json& d, const std::string& ptr) {
  if (d.is_number()) return;
  Obj o(d, ptr);
  if (o.has("bump")) {
    Obj b(o.raw("bump"), ptr + "/bump");
    double s0 = 0, w = 1, eps = 1;
    b.num("s0", s0);
    b.num("w", w);
    b.num("eps", eps);
    b.finish();
    require(w > 0, "bump radius must be > 0", ptr + "/bump/w");
  } else if (o.has("tabulated")) {
    const json& t = o.raw("tabulated");
    require(t.is_array(), "tabulated data must be an array", ptr + "/tabulated");
    for (std::size_t i = 0; i < t.size(); ++i)
      require(t[i].is_number(), "tabulated values must be numbers", ptr + "/tabulated/" + std::to_string(i));
  } else {
    throw InputError("datum must be a number, {\"bump\": ...} or {\"tabulated\": ...} at " + ptr, ptr);
  }
  o.finish();
}

Datum to_datum(const json& d) {
  if (d.is_number()) return d.get<double>();
  if (d.contains("bump")) {
    const json& b = d.at("bump");
    return BumpDatum{b.value("s0", 0.0), b.value("w", 1.0), b.value("eps", 1.0)};
  }
  return TabulatedDatum{d.at("tabulated").get<std::vector<double>>()};
}

PathKind path_kind(const std::string& s, const std::string& ptr) {
  if (s == "level-curve") return PathKind::level_curve;
  if (s == "axis-below") return PathKind::axis_below;
  if (s == "ray") return PathKind::ray;
  throw InputError("unknown path kind '" + s + "' at " + ptr, ptr);
}

std::vector<PathSpec> default_paths() {
  std::vector<PathSpec> p;
  PathSpec ax;
  ax.kind = PathKind::axis_below;
  ax.id = "axis-below";
  p.push_back(ax);
  for (double c : {1.05, 1.25, 1.5, 1.75, 1.95}) {
    PathSpec s;
    s.kind = PathKind::level_curve;
    s.level = c;
    char buf[32];
    std::snprintf(buf, sizeof buf, "L%g", c);
    s.id = buf;
    p.push_back(s);
  }
  return p;
}

std::vector<Point> default_wos_points() {
  return {Point(0.5, 0.5), Point(0.6, 0.3), Point(0.4, 1.3), Point(0.3, 0.8), Point(0.4, -0.1)};
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> s{"potential-grid", "contour", "mesh", "solve", "probe",
                                          "wiener", "wos", "reproduce-figures"};
  return s;
}

DensityProfile DensitySpec::build() const {
  if (kind == "lebesgue") return DensityProfile::lebesgue();
  if (kind == "power") return DensityProfile::power(p, L);
  if (kind == "tabulated") return DensityProfile::tabulated(samples);
  throw InputError("unknown density kind '" + kind + "'", "/density/kind");
}

BoundaryData RunConfig::boundary_data() const {
  BoundaryData d;
  d.set(BoundaryTag::outer_level, data_outer.is_null() ? Datum(A) : to_datum(data_outer));
  d.set(BoundaryTag::inner_level, data_inner.is_null() ? Datum(B) : to_datum(data_inner));
  if (!data_cap.is_null()) d.set(BoundaryTag::cusp_cap, to_datum(data_cap));
  return d;
}

json RunConfig::to_json() const {
  json j;
  j["subcommand"] = subcommand;
  j["seed"] = seed;
  j["output_dir"] = output_dir;
  json dens = {{"kind", density.kind}};
  if (density.kind == "power") {
    dens["p"] = density.p;
    dens["L"] = density.L;
  }
  if (density.kind == "tabulated") {
    json s = json::array();
    for (const auto& [z, r] : density.samples) s.push_back({z, r});
    dens["samples"] = s;
  }
  j["density"] = dens;
  j["levels"] = {{"A", A}, {"B", B}};
  j["mesh"] = {{"n_levels", n_levels}, {"n_stations", n_stations}, {"r_min", r_min}};
  j["data"] = {{"outer", data_outer.is_null() ? json(A) : data_outer},
               {"inner", data_inner.is_null() ? json(B) : data_inner},
               {"cap", data_cap}};
  j["contour"] = {{"levels", contour_levels}, {"n", contour_n}, {"grading", grading}};
  j["grid"] = {{"r", {grid_r.lo, grid_r.hi, grid_r.count}}, {"z", {grid_z.lo, grid_z.hi, grid_z.count}}};
  json paths_j = json::array();
  for (const auto& p : paths)
    paths_j.push_back({{"kind", to_string(p.kind)}, {"level", p.level}, {"angle", p.angle},
                       {"start", p.start}, {"factor", p.factor}, {"stations", p.stations},
                       {"id", p.id}});
  j["probe"] = {{"source", probe_source},
                {"paths", paths_j},
                {"nonlocality",
                 {{"enabled", nonlocality},
                  {"levels", nonlocality_levels},
                  {"stations_z", nonlocality_z},
                  {"bump", {{"s0", nonlocality_bump.s0}, {"w", nonlocality_bump.w}, {"eps", nonlocality_bump.eps}}}}}};
  json pts = json::array();
  for (const auto& p : wos_points) pts.push_back({p.x(), p.y()});
  j["wos"] = {{"points", pts}, {"walks", walks}, {"eps", eps}, {"step_cap", step_cap}};
  j["wiener"] = {{"profiles", wiener_profiles}, {"input", wiener_input}, {"q", wiener_q}};
  j["tolerances"] = {{"quadrature", quad_tol}, {"cg", cg_tol}};
  return j;
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  c.paths = default_paths();
  c.wos_points = default_wos_points();
  Obj root(j, "");
  root.str("subcommand", c.subcommand);
  bool known = false;
  for (const auto& s : subcommands()) known = known || s == c.subcommand;
  require(known, "unknown or missing subcommand '" + c.subcommand + "'", "/subcommand");

  if (root.has("seed")) {
    const json& s = root.raw("seed");
    require(s.is_number_unsigned() || (s.is_number_integer() && s.get<long long>() >= 0),
            "seed must be a non-negative integer", "/seed");
    c.seed = s.get<std::uint64_t>();
  }
  root.str("output_dir", c.output_dir);
  if (c.output_dir.empty()) {
    const char* env = std::getenv("CUSPLAB_OUTPUT_DIR");
    c.output_dir = env && *env ? env : "cusplab_out";
  }

  if (root.has("density")) {
    Obj d(root.raw("density"), "/density");
    d.str("kind", c.density.kind);
    d.num("p", c.density.p);
    d.num("L", c.density.L);
    if (d.has("samples")) {
      const json& s = d.raw("samples");
      require(s.is_array(), "samples must be an array of [z, rho]", "/density/samples");
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string ptr = "/density/samples/" + std::to_string(i);
        require(s[i].is_array() && s[i].size() == 2 && s[i][0].is_number() && s[i][1].is_number(),
                "sample must be [z, rho]", ptr);
        c.density.samples.emplace_back(s[i][0].get<double>(), s[i][1].get<double>());
      }
    }
    d.finish();
    require(c.density.kind == "lebesgue" || c.density.kind == "power" || c.density.kind == "tabulated",
            "density kind must be lebesgue, power or tabulated", "/density/kind");
    require(c.density.p > 0, "power exponent must be > 0", "/density/p");
    require(c.density.L > 0, "rod length must be > 0", "/density/L");
    if (c.density.kind == "tabulated") {
      try {
        DensityProfile::tabulated(c.density.samples);
      } catch (const InputError& e) {
        throw InputError(e.what(), "/density/samples");
      }
    }
  }
  if (root.has("levels")) {
    Obj l(root.raw("levels"), "/levels");
    l.num("A", c.A);
    l.num("B", c.B);
    l.finish();
  }
  require(c.A > 0 && c.A < c.B, "levels must satisfy 0 < A < B", "/levels/A");
  if (root.has("mesh")) {
    Obj m(root.raw("mesh"), "/mesh");
    m.integer("n_levels", c.n_levels);
    m.integer("n_stations", c.n_stations);
    m.num("r_min", c.r_min);
    m.finish();
  }
  require(c.n_levels >= 4, "n_levels must be >= 4", "/mesh/n_levels");
  require(c.n_stations >= 8, "n_stations must be >= 8", "/mesh/n_stations");
  require(c.r_min > 0, "r_min must be > 0", "/mesh/r_min");
  if (root.has("data")) {
    Obj d(root.raw("data"), "/data");
    for (auto [key, slot] : {std::pair{"outer", &c.data_outer}, std::pair{"inner", &c.data_inner},
                             std::pair{"cap", &c.data_cap}}) {
      if (!d.has(key)) continue;
      const json& v = d.raw(key);
      if (v.is_null()) continue;
      check_datum(v, std::string("/data/") + key);
      *slot = v;
    }
    d.finish();
  }
  if (root.has("contour")) {
    Obj o(root.raw("contour"), "/contour");
    o.nums("levels", c.contour_levels);
    o.integer("n", c.contour_n);
    o.str("grading", c.grading);
    o.finish();
  }
  require(!c.contour_levels.empty(), "contour levels must not be empty", "/contour/levels");
  for (std::size_t i = 0; i < c.contour_levels.size(); ++i)
    require(c.contour_levels[i] > 0, "contour levels must be > 0", "/contour/levels/" + std::to_string(i));
  require(c.contour_n >= 16, "contour n must be >= 16", "/contour/n");
  require(c.grading == "geometric" || c.grading == "uniform", "grading must be geometric or uniform",
          "/contour/grading");
  if (root.has("grid")) {
    Obj g(root.raw("grid"), "/grid");
    for (auto [key, slot] : {std::pair{"r", &c.grid_r}, std::pair{"z", &c.grid_z}}) {
      if (!g.has(key)) continue;
      const json& v = g.raw(key);
      const std::string ptr = std::string("/grid/") + key;
      require(v.is_array() && v.size() == 3 && v[0].is_number() && v[1].is_number() &&
                  v[2].is_number_integer(),
              "grid axis must be [lo, hi, count]", ptr);
      *slot = {v[0].get<double>(), v[1].get<double>(), v[2].get<int>()};
      require(slot->hi > slot->lo && slot->count >= 2, "grid axis needs hi > lo and count >= 2", ptr);
    }
    g.finish();
  }
  require(c.grid_r.lo >= 0, "grid radii must be >= 0", "/grid/r");
  if (root.has("probe")) {
    Obj p(root.raw("probe"), "/probe");
    p.str("source", c.probe_source);
    if (p.has("paths")) {
      const json& arr = p.raw("paths");
      require(arr.is_array(), "paths must be an array", "/probe/paths");
      c.paths.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ptr = "/probe/paths/" + std::to_string(i);
        Obj o(arr[i], ptr);
        PathSpec s;
        std::string kind = "level-curve";
        o.str("kind", kind);
        s.kind = path_kind(kind, ptr + "/kind");
        o.num("level", s.level);
        o.num("angle", s.angle);
        o.num("start", s.start);
        o.num("factor", s.factor);
        o.integer("stations", s.stations);
        o.str("id", s.id);
        o.finish();
        if (s.id.empty()) s.id = "path" + std::to_string(i);
        require(s.factor > 0 && s.factor < 1, "factor must lie in (0,1)", ptr + "/factor");
        require(s.stations >= 1, "stations must be >= 1", ptr + "/stations");
        require(s.start > 0, "start must be > 0", ptr + "/start");
        c.paths.push_back(s);
      }
    }
    if (p.has("nonlocality")) {
      Obj n(p.raw("nonlocality"), "/probe/nonlocality");
      n.boolean("enabled", c.nonlocality);
      n.nums("levels", c.nonlocality_levels);
      n.nums("stations_z", c.nonlocality_z);
      if (n.has("bump")) {
        Obj b(n.raw("bump"), "/probe/nonlocality/bump");
        b.num("s0", c.nonlocality_bump.s0);
        b.num("w", c.nonlocality_bump.w);
        b.num("eps", c.nonlocality_bump.eps);
        b.finish();
      }
      n.finish();
    }
    p.finish();
  }
  require(c.probe_source == "oracle" || c.probe_source == "fem" || c.probe_source == "wos",
          "probe source must be oracle, fem or wos", "/probe/source");
  if (root.has("wos")) {
    Obj w(root.raw("wos"), "/wos");
    if (w.has("points")) {
      const json& arr = w.raw("points");
      require(arr.is_array(), "points must be an array of [r, z]", "/wos/points");
      c.wos_points.clear();
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ptr = "/wos/points/" + std::to_string(i);
        require(arr[i].is_array() && arr[i].size() == 2 && arr[i][0].is_number() && arr[i][1].is_number(),
                "point must be [r, z]", ptr);
        c.wos_points.emplace_back(arr[i][0].get<double>(), arr[i][1].get<double>());
      }
    }
    w.integer("walks", c.walks);
    w.num("eps", c.eps);
    w.integer("step_cap", c.step_cap);
    w.finish();
  }
  require(c.walks >= 2, "walks must be >= 2", "/wos/walks");
  require(c.eps > 0, "eps must be > 0", "/wos/eps");
  require(c.step_cap >= 1, "step_cap must be >= 1", "/wos/step_cap");
  if (root.has("wiener")) {
    Obj w(root.raw("wiener"), "/wiener");
    w.strs("profiles", c.wiener_profiles);
    w.str("input", c.wiener_input);
    w.nums("q", c.wiener_q);
    w.finish();
  }
  for (std::size_t i = 0; i < c.wiener_q.size(); ++i)
    require(c.wiener_q[i] > 0 && c.wiener_q[i] < 1, "q must lie in (0,1)", "/wiener/q/" + std::to_string(i));
  for (std::size_t i = 0; i < c.wiener_profiles.size(); ++i) {
    const auto& s = c.wiener_profiles[i];
    require(s == "exp-log-squared" || s == "log-power" || s == "cubic" || s == "lebesgue-r2",
            "unknown wiener profile '" + s + "'", "/wiener/profiles/" + std::to_string(i));
  }
  if (root.has("tolerances")) {
    Obj t(root.raw("tolerances"), "/tolerances");
    t.num("quadrature", c.quad_tol);
    t.num("cg", c.cg_tol);
    t.finish();
  }
  require(c.quad_tol > 0, "quadrature tolerance must be > 0", "/tolerances/quadrature");
  require(c.cg_tol > 0, "cg tolerance must be > 0", "/tolerances/cg");
  root.finish();
  return c;
}

}  // namespace cusplab
