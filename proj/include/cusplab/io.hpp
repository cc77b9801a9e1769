#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cusplab/potential.hpp"

namespace cusplab {

// shortest text that round-trips the double
std::string fmt_num(double v);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(const std::string& v);
  void end_row();

 private:
  std::ofstream out_;
  bool first_ = true;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::filesystem::path& path);

// Direct SVG emitter with a data-space viewport.
class SvgPlot {
 public:
  SvgPlot(double width, double height, double x0, double x1, double y0, double y1);
  void polyline(const std::vector<Point>& xy, const std::string& stroke, double width = 1.0,
                const std::string& cls = "");
  void segment(const Point& a, const Point& b, const std::string& stroke, double width = 1.0);
  void circle(const Point& c, double radius_px, const std::string& fill);
  void text(const Point& at, const std::string& s, double size = 12.0);
  void axes(const std::string& xlabel, const std::string& ylabel);
  void save(const std::filesystem::path& path) const;

 private:
  double px(double x) const;
  double py(double y) const;
  double w_, h_, x0_, x1_, y0_, y1_;
  double margin_ = 40.0;
  std::string body_;
};

void ensure_dir(const std::filesystem::path& dir);

}  // namespace cusplab
