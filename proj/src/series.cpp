#include "cusplab/series.hpp"

#include <cmath>
#include <sstream>

#include "cusplab/errors.hpp"

namespace cusplab {

const char* to_string(SeriesVerdict v) {
  switch (v) {
    case SeriesVerdict::convergent: return "convergent";
    case SeriesVerdict::divergent: return "divergent";
    default: return "inconclusive";
  }
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0.0;
}

SeriesDiagnostics classify_series(const std::vector<double>& terms,
                                  int first_index) {
  if (terms.size() < 20)
    throw InputError("series classification needs at least 20 terms, got " +
                     std::to_string(terms.size()));
  for (double a : terms)
    if (!(a > 0) || !std::isfinite(a))
      throw DomainError("series terms must be positive and finite");

  const int n = static_cast<int>(terms.size());
  int start = std::max(n / 2, 2 - first_index);
  SeriesDiagnostics d;
  d.tail_start = first_index + start;

  std::vector<double> lj, jj, la, lw;
  for (int i = start; i < n; ++i) {
    const double j = first_index + i;
    jj.push_back(j);
    lj.push_back(std::log(j));
    la.push_back(std::log(terms[i]));
    lw.push_back(std::log(j * std::log(j) * terms[i]));
  }
  d.log_slope = ls_slope(lj, lw);
  d.tail_ratio = std::exp(ls_slope(jj, la));
  d.power_exponent = -ls_slope(lj, la);

  std::ostringstream note;
  if (d.log_slope >= -0.15) {
    d.verdict = SeriesVerdict::divergent;
    note << "tail bounded below by c/(j log j) (slope " << d.log_slope << ")";
  } else if (d.tail_ratio <= 0.98) {
    d.verdict = SeriesVerdict::convergent;
    note << "tail dominated by geometric ratio " << d.tail_ratio;
  } else if (d.power_exponent > 1.1) {
    d.verdict = SeriesVerdict::convergent;
    note << "tail dominated by c/j^p with p = " << d.power_exponent;
  } else {
    d.verdict = SeriesVerdict::inconclusive;
    note << "no comparison test decided (p = " << d.power_exponent
         << ", ratio = " << d.tail_ratio << ")";
  }
  d.note = note.str();
  return d;
}

}  // namespace cusplab
