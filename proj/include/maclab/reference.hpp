#pragma once

// Tabulated reference profiles. Files hold '#' comment lines followed by
// whitespace-separated "coordinate value" rows, coordinate ascending in [0, 1].

#include <cmath>
#include <cstddef>
#include <fstream>
#include <functional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "maclab/error.hpp"

namespace maclab {

struct ReferenceDataset {
  std::string label;
  std::vector<std::string> provenance;  // comment lines, without the leading '#'
  std::vector<double> coord;
  std::vector<double> value;

  std::size_t size() const noexcept { return coord.size(); }
};

inline ReferenceDataset parse_reference(const std::string& text, const std::string& label) {
  ReferenceDataset ds;
  ds.label = label;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::string c = line.substr(first + 1);
      if (!c.empty() && c.front() == ' ') c.erase(0, 1);
      if (c.rfind("source:", 0) == 0) {
        ds.label = c.substr(7);
        ds.label.erase(0, ds.label.find_first_not_of(' '));
      }
      ds.provenance.push_back(c);
      continue;
    }
    std::istringstream row(line);
    double x = 0.0, v = 0.0;
    std::string extra;
    if (!(row >> x >> v) || (row >> extra) || !std::isfinite(x) || !std::isfinite(v))
      throw ParseError(lineno, "", "expected two numeric columns 'coordinate value'");
    if (x < 0.0 || x > 1.0) throw ParseError(lineno, "", "coordinate outside [0, 1]");
    if (!ds.coord.empty() && !(x > ds.coord.back()))
      throw ConfigError(label + ": coordinates not strictly ascending at line " + std::to_string(lineno));
    ds.coord.push_back(x);
    ds.value.push_back(v);
  }
  if (ds.coord.empty()) throw ConfigError(label + ": reference dataset has no samples");
  return ds;
}

inline ReferenceDataset load_reference(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError(path, "cannot open reference dataset");
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_reference(buf.str(), path);
}

struct ErrorNorms {
  double l2_rel = 0.0;
  double linf = 0.0;
};

/// l2_rel = sqrt(sum (u - r)^2 / sum r^2), linf = max |u - r|.
inline ErrorNorms error_norms(std::span<const double> values, std::span<const double> reference) {
  if (values.empty()) throw ConfigError("error norms need at least one sample");
  if (values.size() != reference.size()) throw ConfigError("sample and reference counts differ");
  double num = 0.0, den = 0.0;
  ErrorNorms out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double diff = values[k] - reference[k];
    num += diff * diff;
    den += reference[k] * reference[k];
    out.linf = std::max(out.linf, std::abs(diff));
  }
  if (den > 0.0) out.l2_rel = std::sqrt(num / den);
  else out.l2_rel = num > 0.0 ? std::sqrt(num) : 0.0;
  return out;
}

inline ErrorNorms error_norms(std::span<const double> coords, std::span<const double> values,
                              const std::function<double(double)>& reference_sampler) {
  std::vector<double> ref;
  ref.reserve(coords.size());
  for (double x : coords) ref.push_back(reference_sampler(x));
  return error_norms(values, ref);
}

// Piecewise-linear interpolation of (xs, ys) at x; xs ascending.
inline double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
  if (xs.empty()) throw ConfigError("cannot interpolate an empty profile");
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  std::size_t hi = 1;
  while (xs[hi] < x) ++hi;
  const double t = (x - xs[hi - 1]) / (xs[hi] - xs[hi - 1]);
  return ys[hi - 1] + t * (ys[hi] - ys[hi - 1]);
}

}  // namespace maclab
