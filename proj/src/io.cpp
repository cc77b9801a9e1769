#include "cusplab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "cusplab/errors.hpp"

namespace cusplab {

std::string fmt_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path) {
  if (!out_) throw InputError("cannot write " + path.string(), "output_dir");
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(double v) { return cell(fmt_num(v)); }
CsvWriter& CsvWriter::cell(long long v) { return cell(std::to_string(v)); }
CsvWriter& CsvWriter::cell(const std::string& v) {
  if (!first_) out_ << ',';
  out_ << v;
  first_ = false;
  return *this;
}
void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  CsvTable t;
  std::string line;
  auto split = [](const std::string& l) {
    std::vector<std::string> f;
    std::stringstream ss(l);
    std::string x;
    while (std::getline(ss, x, ',')) f.push_back(x);
    return f;
  };
  if (!std::getline(in, line)) throw InputError("empty csv " + path.string());
  t.header = split(line);
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(split(line));
  return t;
}

SvgPlot::SvgPlot(double width, double height, double x0, double x1, double y0, double y1)
    : w_(width), h_(height), x0_(x0), x1_(x1), y0_(y0), y1_(y1) {}

double SvgPlot::px(double x) const { return margin_ + (x - x0_) / (x1_ - x0_) * (w_ - 2 * margin_); }
double SvgPlot::py(double y) const { return h_ - margin_ - (y - y0_) / (y1_ - y0_) * (h_ - 2 * margin_); }

void SvgPlot::polyline(const std::vector<Point>& xy, const std::string& stroke, double width,
                       const std::string& cls) {
  std::ostringstream s;
  s << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"";
  if (!cls.empty()) s << " class=\"" << cls << "\"";
  s << " points=\"";
  char buf[64];
  for (const Point& p : xy) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(p.x()), py(p.y()));
    s << buf;
  }
  s << "\"/>\n";
  body_ += s.str();
}

void SvgPlot::segment(const Point& a, const Point& b, const std::string& stroke, double width) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"%s\" stroke-width=\"%g\"/>\n",
                px(a.x()), py(a.y()), px(b.x()), py(b.y()), stroke.c_str(), width);
  body_ += buf;
}

void SvgPlot::circle(const Point& c, double r, const std::string& fill) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%g\" fill=\"%s\"/>\n", px(c.x()),
                py(c.y()), r, fill.c_str());
  body_ += buf;
}

void SvgPlot::text(const Point& at, const std::string& s, double size) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"%g\">", px(at.x()), py(at.y()), size);
  body_ += buf + s + "</text>\n";
}

void SvgPlot::axes(const std::string& xlabel, const std::string& ylabel) {
  segment({x0_, y0_}, {x1_, y0_}, "#444");
  segment({x0_, y0_}, {x0_, y1_}, "#444");
  char buf[300];
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n"
                "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">%s</text>\n",
                w_ / 2, h_ - 8, xlabel.c_str(), 6.0, margin_ - 10, ylabel.c_str());
  body_ += buf;
  const double xt[2] = {x0_, x1_}, yt[2] = {y0_, y1_};
  for (double x : xt) text({x, y0_ - 0.04 * (y1_ - y0_)}, fmt_num(std::round(x * 1000) / 1000), 10);
  for (double y : yt) text({x0_ - 0.08 * (x1_ - x0_), y}, fmt_num(std::round(y * 1000) / 1000), 10);
}

void SvgPlot::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string(), "output_dir");
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w_ << "\" height=\"" << h_
      << "\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body_ << "</svg>\n";
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + dir.string() + ": " + ec.message(),
                           "output_dir");
}

}  // namespace cusplab
