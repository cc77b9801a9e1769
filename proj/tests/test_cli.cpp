#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cusplab/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_bin;
fs::path g_tmp;

struct Run {
  int code = -1;
  std::string err;
};

Run cli(const std::string& args, const std::string& env = "") {
  const fs::path errf = g_tmp / "stderr.txt";
  const std::string cmd = env + " \"" + g_bin + "\" " + args + " > /dev/null 2> \"" + errf.string() + "\"";
  const int st = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::ifstream in(errf);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

std::string out(const std::string& name) { return "--out \"" + (g_tmp / name).string() + "\""; }

}  // namespace

TEST_CASE("contour residuals") {
  REQUIRE(cli("contour --level 2 " + out("contour")).code == 0);
  const auto t = cusplab::read_csv(g_tmp / "contour" / "contour.csv");
  REQUIRE(t.column("residual") == 3);
  CHECK(t.header[0] == "level");
  CHECK(t.header[1] == "z");
  CHECK(t.header[2] == "r");
  double worst = 0;
  for (const auto& row : t.rows) worst = std::max(worst, std::stod(row[3]));
  CHECK(worst <= 1e-10);
  CHECK(fs::exists(g_tmp / "contour" / "contour_map.svg"));
  CHECK(load(g_tmp / "contour" / "report.json")["all_pass"] == true);
}

TEST_CASE("reproduce-figures") {
  REQUIRE(cli("reproduce-figures " + out("figs")).code == 0);
  const fs::path d = g_tmp / "figs";
  for (const char* f : {"potential_surface.csv", "contour_map.csv", "contour_map.svg",
                        "surface_cloud.csv", "report.json", "config.json"})
    CHECK(fs::exists(d / f));
  const std::string svg = slurp(d / "contour_map.svg");
  CHECK(svg.find("highlight level-0.5") != std::string::npos);
  CHECK(svg.find("highlight level-2") != std::string::npos);
  CHECK(load(d / "report.json")["all_pass"] == true);
  const auto cloud = cusplab::read_csv(d / "surface_cloud.csv");
  CHECK(cloud.header == std::vector<std::string>{"x", "y", "z", "level"});
}

TEST_CASE("malformed config exits 1 with a key pointer") {
  const fs::path cfg = g_tmp / "bad.json";
  std::ofstream(cfg) << R"({"subcommand": "mesh", "mesh": {"n_levels": "many"}})";
  const Run r = cli("run --config \"" + cfg.string() + "\" " + out("bad"));
  CHECK(r.code == 1);
  const json e = json::parse(r.err);
  CHECK(e["key"] == "/mesh/n_levels");
  CHECK(e["error"] == "input");

  std::ofstream(cfg) << R"({"subcommand": "mesh", "mesh": {"n_level": 8}})";
  CHECK(json::parse(cli("run --config \"" + cfg.string() + "\"").err)["key"] == "/mesh/n_level");
  std::ofstream(cfg) << "{ not json";
  CHECK(cli("run --config \"" + cfg.string() + "\"").code == 1);
  CHECK(cli("mesh --level-a 1.5 " + out("bad")).code == 1);
  CHECK(cli("frobnicate").code == 1);
}

TEST_CASE("numerical failure exits 2") {
  const fs::path cfg = g_tmp / "cap.json";
  std::ofstream(cfg) << R"({"subcommand": "wos", "wos": {"walks": 200, "step_cap": 1, "eps": 1e-12}})";
  const Run r = cli("run --config \"" + cfg.string() + "\" " + out("cap"));
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"] == "reliability");
}

TEST_CASE("config echo reproduces the artifacts") {
  REQUIRE(cli("potential-grid --seed 5 " + out("a")).code == 0);
  const fs::path echo = g_tmp / "a" / "config.json";
  REQUIRE(cli("run --config \"" + echo.string() + "\" " + out("b")).code == 0);
  CHECK(slurp(g_tmp / "a" / "potential_grid.csv") == slurp(g_tmp / "b" / "potential_grid.csv"));
  CHECK(slurp(g_tmp / "a" / "report.json") == slurp(g_tmp / "b" / "report.json"));

  REQUIRE(cli("wos --walks 500 --point 0.5,0.5 " + out("w1")).code == 0);
  REQUIRE(cli("run --config \"" + (g_tmp / "w1" / "config.json").string() + "\" " + out("w2")).code == 0);
  CHECK(slurp(g_tmp / "w1" / "wos.csv") == slurp(g_tmp / "w2" / "wos.csv"));
}

TEST_CASE("output directory from the environment") {
  const fs::path d = g_tmp / "from_env";
  REQUIRE(cli("potential-grid", "CUSPLAB_OUTPUT_DIR=\"" + d.string() + "\"").code == 0);
  CHECK(fs::exists(d / "potential_grid.csv"));
}

TEST_CASE("file schemas") {
  REQUIRE(cli("mesh --n-levels 8 --n-stations 32 " + out("mesh")).code == 0);
  CHECK(cusplab::read_csv(g_tmp / "mesh" / "nodes.csv").header ==
        std::vector<std::string>{"id", "r", "z", "tag"});
  CHECK(cusplab::read_csv(g_tmp / "mesh" / "tris.csv").header ==
        std::vector<std::string>{"id", "n0", "n1", "n2"});
  CHECK(fs::exists(g_tmp / "mesh" / "mesh.svg"));

  REQUIRE(cli("solve " + out("solve")).code == 0);
  CHECK(cusplab::read_csv(g_tmp / "solve" / "solution.csv").header ==
        std::vector<std::string>{"id", "r", "z", "value"});
  const json sr = load(g_tmp / "solve" / "solve_report.json");
  for (const char* k : {"energy", "iterations", "residual", "max_principle"}) CHECK(sr.contains(k));

  REQUIRE(cli("probe " + out("probe")).code == 0);
  CHECK(cusplab::read_csv(g_tmp / "probe" / "probe.csv").header ==
        std::vector<std::string>{"path", "station", "r", "z", "value", "stderr"});
  CHECK(load(g_tmp / "probe" / "verdict.json")["limit_set"]["classification"] == "strongly-irregular-like");

  REQUIRE(cli("wiener --profile cubic --q 0.5 " + out("wiener")).code == 0);
  CHECK(load(g_tmp / "wiener" / "wiener.json")["reports"][0]["classification"] == "regular");

  REQUIRE(cli("wos --walks 300 --point 0.5,0.5 --point 0.4,1.3 " + out("wos")).code == 0);
  const auto w = cusplab::read_csv(g_tmp / "wos" / "wos.csv");
  CHECK(w.header == std::vector<std::string>{"point", "mean", "stderr", "walks"});
  CHECK(w.rows.size() == 2);
}

TEST_CASE("wiener accepts a contour file") {
  REQUIRE(cli("contour --level 2 --n 256 " + out("cin")).code == 0);
  REQUIRE(cli("wiener --input \"" + (g_tmp / "cin" / "contour.csv").string() + "\" " + out("win")).code == 0);
  const json w = load(g_tmp / "win" / "wiener.json");
  REQUIRE(w["reports"].size() == 3);
  for (const auto& r : w["reports"]) CHECK(r["classification"] != "regular");
}

int main(int argc, char** argv) {
  if (argc < 2) return 2;
  g_bin = argv[1];
  g_tmp = fs::temp_directory_path() / ("cusplab_cli_" + std::to_string(::getpid()));
  fs::create_directories(g_tmp);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  const int rc = ctx.run();
  fs::remove_all(g_tmp);
  return rc;
}
