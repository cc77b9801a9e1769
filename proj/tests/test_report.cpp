#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "cusplab/errors.hpp"
#include "cusplab/io.hpp"
#include "cusplab/report.hpp"

using namespace cusplab;
namespace fs = std::filesystem;

namespace {
std::vector<ModuleReport> bundle(bool ok) {
  ModuleReport a("potential", {{"v00", 1.0}, {"points", 3}});
  a.checks.emplace_back("v00", true);
  ModuleReport b("contour", {{"levels", {0.5, 2.0}}});
  b.checks.emplace_back("residuals", ok, nlohmann::json{{"max", 1e-12}});
  return {a, b};
}
}  // namespace

TEST_CASE("empty bundle is rejected") { CHECK_THROWS_AS(report({}, {}), InputError); }

TEST_CASE("identical inputs give byte-identical JSON") {
  const nlohmann::json prov{{"seed", 7}};
  CHECK(report(bundle(true), prov).dump(2) == report(bundle(true), prov).dump(2));
}

TEST_CASE("a failed check clears all_pass") {
  CHECK(report(bundle(true), {})["all_pass"] == true);
  const auto r = report(bundle(false), {});
  CHECK(r["all_pass"] == false);
  CHECK(r["checks"].size() == 2);
  CHECK(r["versions"]["cusplab"] == kVersion);
  CHECK(r["versions"].contains("eigen"));
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 3 * M_PI, 1e-300, -2.5e17}) CHECK(std::stod(fmt_num(v)) == v);
  CHECK(fmt_num(0.5) == "0.5");
}

TEST_CASE("CSV write and read") {
  const fs::path dir = fs::temp_directory_path() / "cusplab_test_report";
  ensure_dir(dir);
  {
    CsvWriter w(dir / "t.csv", {"a", "b"});
    w.cell(1.5).cell("x").end_row();
    w.cell(2).cell(0.25).end_row();
  }
  const CsvTable t = read_csv(dir / "t.csv");
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][1] == "x");
  CHECK(t.column("b") == 1);
  CHECK(t.column("c") == -1);
  fs::remove_all(dir);
}
