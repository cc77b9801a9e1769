// Command-line front end. Flags are folded into a JSON config, which is then
// validated by RunConfig::from_json; the config file (if any) is the base.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "cusplab/cli.hpp"
#include "cusplab/errors.hpp"

using nlohmann::json;

namespace {

struct Flags {
  std::string config, out, density, input, source;
  std::vector<std::string> points, profiles;
  std::vector<double> contour_levels, q;
  double level_a = NAN, level_b = NAN, outer = NAN, inner = NAN, r_min = NAN, eps = NAN, p = NAN,
         rod = NAN;
  long long seed = -1;
  int n_levels = -1, n_stations = -1, n = -1, walks = -1;
  bool nonlocality = false;
};

json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cusplab::InputError("cannot open config file " + path, "--config");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw cusplab::InputError(std::string("malformed config: ") + e.what(), "/");
  }
}

json assemble(const std::string& sub, const Flags& f) {
  json j = f.config.empty() ? json::object() : load(f.config);
  if (!j.is_object()) throw cusplab::InputError("config must be a JSON object", "/");
  if (sub != "run") j["subcommand"] = sub;
  if (!f.out.empty()) j["output_dir"] = f.out;
  if (f.seed >= 0) j["seed"] = f.seed;
  if (!f.density.empty()) j["density"]["kind"] = f.density;
  if (!std::isnan(f.p)) j["density"]["p"] = f.p;
  if (!std::isnan(f.rod)) j["density"]["L"] = f.rod;
  if (!std::isnan(f.level_a)) j["levels"]["A"] = f.level_a;
  if (!std::isnan(f.level_b)) j["levels"]["B"] = f.level_b;
  if (f.n_levels > 0) j["mesh"]["n_levels"] = f.n_levels;
  if (f.n_stations > 0) j["mesh"]["n_stations"] = f.n_stations;
  if (!std::isnan(f.r_min)) j["mesh"]["r_min"] = f.r_min;
  if (!std::isnan(f.outer)) j["data"]["outer"] = f.outer;
  if (!std::isnan(f.inner)) j["data"]["inner"] = f.inner;
  if (!f.contour_levels.empty()) j["contour"]["levels"] = f.contour_levels;
  if (f.n > 0) j["contour"]["n"] = f.n;
  if (!f.source.empty()) j["probe"]["source"] = f.source;
  if (f.nonlocality) j["probe"]["nonlocality"]["enabled"] = true;
  if (f.walks > 0) j["wos"]["walks"] = f.walks;
  if (!std::isnan(f.eps)) j["wos"]["eps"] = f.eps;
  if (!f.points.empty()) {
    json pts = json::array();
    for (const auto& s : f.points) {
      double r, z;
      char tail;
      if (std::sscanf(s.c_str(), "%lf,%lf%c", &r, &z, &tail) != 2)
        throw cusplab::InputError("point must be r,z: " + s, "--point");
      pts.push_back({r, z});
    }
    j["wos"]["points"] = pts;
  }
  if (!f.profiles.empty()) j["wiener"]["profiles"] = f.profiles;
  if (!f.input.empty()) j["wiener"]["input"] = f.input;
  if (!f.q.empty()) j["wiener"]["q"] = f.q;
  return j;
}

void common(CLI::App* s, Flags& f) {
  s->add_option("--config", f.config, "JSON config file");
  s->add_option("--out", f.out, "output directory (default $CUSPLAB_OUTPUT_DIR or cusplab_out)");
  s->add_option("--seed", f.seed, "random seed");
  s->add_option("--density", f.density, "lebesgue | power | tabulated");
  s->add_option("--power", f.p, "exponent for the power density");
  s->add_option("--rod-length", f.rod, "rod length for the power density");
  s->add_option("--level-a", f.level_a, "outer level A");
  s->add_option("--level-b", f.level_b, "inner level B");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cusplab: potentials of rods with cusped level surfaces"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::pair<std::string, std::string>> subs{
      {"potential-grid", "tabulate V on an (r,z) grid"},
      {"contour", "trace level curves; CSV and SVG map"},
      {"mesh", "build the structured cross-section mesh"},
      {"solve", "finite-element Dirichlet solve"},
      {"probe", "sample solutions along approach paths"},
      {"wiener", "Wiener-series classification of cusp profiles"},
      {"wos", "walk-on-spheres point estimates"},
      {"reproduce-figures", "regenerate the figure data"},
      {"run", "run the subcommand named in --config"}};
  for (const auto& [name, help] : subs) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s, f);
    if (name == "run") s->get_option("--config")->required();
    if (name == "contour" || name == "reproduce-figures") {
      s->add_option("--level", f.contour_levels, "contour level (repeatable)");
      s->add_option("--n", f.n, "samples per curve");
    }
    if (name == "mesh" || name == "solve" || name == "probe" || name == "wos") {
      s->add_option("--n-levels", f.n_levels, "mesh rows");
      s->add_option("--n-stations", f.n_stations, "mesh columns");
      s->add_option("--r-min", f.r_min, "cusp cap radius");
      s->add_option("--outer", f.outer, "constant datum on the outer level");
      s->add_option("--inner", f.inner, "constant datum on the inner level");
    }
    if (name == "probe") {
      s->add_option("--source", f.source, "oracle | fem | wos");
      s->add_flag("--nonlocality", f.nonlocality, "run the bump nonlocality experiment");
    }
    if (name == "probe" || name == "wos") {
      s->add_option("--walks", f.walks, "walks per point");
      s->add_option("--eps", f.eps, "absorption shell width");
    }
    if (name == "wos") s->add_option("--point", f.points, "query point r,z (repeatable)");
    if (name == "wiener") {
      s->add_option("--profile", f.profiles, "exp-log-squared | log-power | cubic | lebesgue-r2");
      s->add_option("--input", f.input, "contour CSV with z and r columns");
      s->add_option("--q", f.q, "geometric ratio (repeatable)");
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json j = {{"error", "input"}, {"message", e.what()}, {"exit_code", 1}};
    std::cerr << j.dump() << std::endl;
    return 1;
  }
  try {
    const std::string sub = app.get_subcommands().front()->get_name();
    const cusplab::RunConfig cfg = cusplab::RunConfig::from_json(assemble(sub, f));
    const int code = cusplab::run(cfg, std::cerr);
    if (code == 0) std::cout << (std::filesystem::path(cfg.output_dir) / "report.json").string() << '\n';
    return code;
  } catch (const std::exception& e) {
    return cusplab::error_exit(e, std::cerr);
  }
}
