#pragma once

// Run configuration files and field/profile writers.
//
// Config files hold one `key = value` per line; `#` starts a comment.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "maclab/error.hpp"
#include "maclab/lattice.hpp"
#include "maclab/scenarios.hpp"
#include "maclab/snapshot.hpp"
#include "maclab/version.hpp"

namespace maclab {

enum class OutputFormat { Csv, VtkLegacy, Both };

inline std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv:
      return "csv";
    case OutputFormat::VtkLegacy:
      return "vtk";
    case OutputFormat::Both:
      return "both";
  }
  return "?";
}

struct RunConfig {
  ScenarioKind scenario = ScenarioKind::Couette;
  std::optional<LatticeModel> lattice;
  std::optional<double> dx;
  std::array<std::optional<int>, 3> lattices;  // nx, ny, nz: lattice counts N_L = L / dx
  std::array<std::optional<double>, 3> extents;  // lx, ly, lz
  double nu = 0.0;
  std::optional<double> u0;
  std::optional<double> dpdx;
  std::optional<double> t_end;
  std::optional<double> steady_tol;
  std::optional<long> max_steps;
  std::optional<long> sample_interval;
  std::optional<std::string> output_dir;
  std::optional<OutputFormat> output_format;
  std::optional<long> output_cadence;
  std::vector<Probe> probes;
  std::optional<int> threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> reference_dir;

  bool operator==(const RunConfig&) const = default;
};

/// Quantities implied by a config; echoed by `check` and in provenance headers.
struct DerivedQuantities {
  int dim = 2;
  double dx = 0.0;
  double e = 0.0;
  double dt = 0.0;
  std::array<double, 3> extents{};
  std::array<int, 3> nodes{1, 1, 1};
  double reynolds = 0.0;  // u0 L / nu with L the domain length along x
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& v, std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(line, key, "expected a number, got '" + v + "'");
  }
}

inline long parse_long(const std::string& v, std::size_t line, const std::string& key) {
  try {
    std::size_t used = 0;
    const long d = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError(line, key, "expected an integer, got '" + v + "'");
  }
}

inline int axis_from_name(const std::string& s, std::size_t line) {
  if (s == "x") return 0;
  if (s == "y") return 1;
  if (s == "z") return 2;
  throw ParseError(line, "probe", "unknown axis '" + s + "'");
}

inline int component_from_name(const std::string& s, std::size_t line) {
  if (s == "ux") return 0;
  if (s == "uy") return 1;
  if (s == "uz") return 2;
  if (s == "rho") return 3;
  throw ParseError(line, "probe", "unknown component '" + s + "'");
}

// probe = <component> <axis> <fixed coordinate>... [ref=<path>] [label=<text to end of line>]
inline Probe parse_probe(const std::string& value, std::size_t line) {
  std::string body = value;
  Probe p;
  if (auto pos = body.find("label="); pos != std::string::npos) {
    p.label = trim(body.substr(pos + 6));
    body = body.substr(0, pos);
  }
  std::istringstream in(body);
  std::string comp, axis, tok;
  if (!(in >> comp >> axis)) throw ParseError(line, "probe", "expected '<component> <axis> <coordinates...>'");
  p.component = component_from_name(comp, line);
  p.axis = axis_from_name(axis, line);
  while (in >> tok) {
    if (tok.rfind("ref=", 0) == 0) {
      p.reference = tok.substr(4);
      continue;
    }
    p.at.push_back(parse_double(tok, line, "probe"));
  }
  return p;
}

inline std::string render_probe(const Probe& p) {
  std::string s = component_name(p.component) + " " + axis_name(p.axis);
  for (double x : p.at) s += " " + format_double(x);
  if (p.reference) s += " ref=" + *p.reference;
  if (!p.label.empty()) s += " label=" + p.label;
  return s;
}

inline OutputFormat parse_format(const std::string& v, std::size_t line) {
  if (v == "csv") return OutputFormat::Csv;
  if (v == "vtk") return OutputFormat::VtkLegacy;
  if (v == "both") return OutputFormat::Both;
  throw ParseError(line, "output_format", "expected csv, vtk or both");
}

}  // namespace detail

/// Extents, spacing and node counts implied by a config. Exactly one of dx
/// or lattice counts is given; the other follows from N_L = L / dx.
inline DerivedQuantities derive(const RunConfig& c) {
  DerivedQuantities q;
  q.dim = scenario_dimension(c.scenario, c.lattice.value_or(LatticeModel::D2Q9));
  q.extents = default_extents(c.scenario);
  for (int d = 0; d < 3; ++d)
    if (c.extents[d]) q.extents[d] = *c.extents[d];
  if (c.dx) {
    q.dx = *c.dx;
  } else {
    for (int d = 0; d < q.dim && q.dx == 0.0; ++d)
      if (c.lattices[d]) q.dx = q.extents[d] / *c.lattices[d];
    for (int d = 0; d < q.dim; ++d) {
      if (!c.lattices[d]) continue;
      const double dx_axis = q.extents[d] / *c.lattices[d];
      if (std::abs(dx_axis - q.dx) > 1e-9 * q.dx)
        throw ConfigError(std::string("n") + axis_name(d) + " implies dx=" + detail::format_double(dx_axis) +
                          " but another axis implies dx=" + detail::format_double(q.dx));
    }
  }
  if (!(q.dx > 0.0)) throw ConfigError("dx must be positive");
  const auto per = scenario_periodicity(c.scenario);
  for (int d = 0; d < q.dim; ++d) q.nodes[d] = node_count(q.extents[d], q.dx, per[d]);
  q.e = 6.0 * c.nu / q.dx;
  q.dt = q.dx / q.e;
  q.reynolds = c.u0.value_or(0.0) * q.extents[0] / c.nu;
  return q;
}

inline RunConfig parse_config(const std::string& text) {
  static const std::set<std::string> known{
      "scenario", "lattice", "dx", "nx", "ny", "nz", "lx", "ly", "lz", "nu", "u0", "dpdx",
      "t_end", "steady_tol", "max_steps", "sample_interval", "output_dir", "output_format",
      "output_cadence", "probe", "threads", "seed", "reference_dir"};
  RunConfig c;
  std::map<std::string, std::size_t> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "", "expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (!known.count(key)) throw ParseError(lineno, key, "unknown key");
    if (value.empty()) throw ParseError(lineno, key, "missing value");
    if (key != "probe" && seen.count(key)) throw ParseError(lineno, key, "key given twice");
    seen[key] = lineno;

    auto num = [&] { return detail::parse_double(value, lineno, key); };
    auto integer = [&] { return detail::parse_long(value, lineno, key); };
    auto positive = [&](double v) {
      if (!(v > 0.0)) throw ParseError(lineno, key, "must be positive");
      return v;
    };

    if (key == "scenario") {
      try {
        c.scenario = parse_scenario_kind(value);
      } catch (const ConfigError& err) {
        throw ParseError(lineno, key, err.what());
      }
    } else if (key == "lattice") {
      try {
        c.lattice = parse_lattice_model(value);
      } catch (const ConfigError& err) {
        throw ParseError(lineno, key, err.what());
      }
    } else if (key == "dx") {
      c.dx = positive(num());
    } else if (key == "nx" || key == "ny" || key == "nz") {
      const long n = integer();
      if (n < 2) throw ParseError(lineno, key, "lattice count must be at least 2");
      c.lattices[static_cast<std::size_t>(key[1] - 'x')] = static_cast<int>(n);
    } else if (key == "lx" || key == "ly" || key == "lz") {
      c.extents[static_cast<std::size_t>(key[1] - 'x')] = positive(num());
    } else if (key == "nu") {
      c.nu = positive(num());
    } else if (key == "u0") {
      c.u0 = num();
      if (*c.u0 < 0.0) throw ParseError(lineno, key, "must be nonnegative");
    } else if (key == "dpdx") {
      c.dpdx = num();
    } else if (key == "t_end") {
      c.t_end = positive(num());
    } else if (key == "steady_tol") {
      c.steady_tol = positive(num());
    } else if (key == "max_steps") {
      c.max_steps = static_cast<long>(positive(static_cast<double>(integer())));
    } else if (key == "sample_interval") {
      c.sample_interval = static_cast<long>(positive(static_cast<double>(integer())));
    } else if (key == "output_dir") {
      c.output_dir = value;
    } else if (key == "output_format") {
      c.output_format = detail::parse_format(value, lineno);
    } else if (key == "output_cadence") {
      const long v = integer();
      if (v < 0) throw ParseError(lineno, key, "must be nonnegative");
      c.output_cadence = v;
    } else if (key == "probe") {
      c.probes.push_back(detail::parse_probe(value, lineno));
    } else if (key == "threads") {
      c.threads = static_cast<int>(positive(static_cast<double>(integer())));
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(integer());
    } else if (key == "reference_dir") {
      c.reference_dir = value;
    }
  }

  auto line_of = [&](const std::string& k) { return seen.count(k) ? seen[k] : lineno; };
  if (!seen.count("scenario")) throw ParseError(lineno, "scenario", "missing required key");
  if (!seen.count("nu")) throw ParseError(lineno, "nu", "missing required key");
  const bool any_count = c.lattices[0] || c.lattices[1] || c.lattices[2];
  if (c.dx && any_count) {
    const std::string k = c.lattices[0] ? "nx" : c.lattices[1] ? "ny" : "nz";
    throw ParseError(std::max(line_of("dx"), line_of(k)), k, "dx and " + k + " are mutually exclusive");
  }
  if (!c.dx && !any_count) throw ParseError(lineno, "dx", "missing required key (or nx/ny/nz)");
  if (c.t_end && c.steady_tol)
    throw ParseError(std::max(line_of("t_end"), line_of("steady_tol")), "steady_tol",
                     "t_end and steady_tol are mutually exclusive");
  const bool needs_u0 = c.scenario != ScenarioKind::CouettePgrad && c.scenario != ScenarioKind::Custom;
  if (needs_u0 && !c.u0) throw ParseError(lineno, "u0", "missing required key");
  if (c.lattice && c.scenario != ScenarioKind::Custom && *c.lattice != (c.scenario == ScenarioKind::Cavity3D ? LatticeModel::D3Q19 : LatticeModel::D2Q9))
    throw ParseError(line_of("lattice"), "lattice", "lattice is fixed by the scenario");
  if (c.dpdx && *c.dpdx != 0.0 && c.scenario != ScenarioKind::CouettePgrad && c.scenario != ScenarioKind::Custom)
    throw ParseError(line_of("dpdx"), "dpdx", "only couette_pgrad and custom accept a pressure gradient");
  const int dim = scenario_dimension(c.scenario, c.lattice.value_or(LatticeModel::D2Q9));
  if (dim == 2 && (c.lattices[2] || c.extents[2]))
    throw ParseError(line_of(c.lattices[2] ? "nz" : "lz"), c.lattices[2] ? "nz" : "lz", "2D scenario has no z axis");
  for (const auto& p : c.probes)
    if (static_cast<int>(p.at.size()) != dim - 1 || p.axis >= dim || (p.component < 3 && p.component >= dim))
      throw ParseError(line_of("probe"), "probe", "probe does not match the scenario dimension");
  try {
    derive(c);
  } catch (const ConfigError& err) {
    throw ParseError(lineno, c.dx ? "dx" : "nx", err.what());
  }
  return c;
}

inline std::string render_config(const RunConfig& c) {
  std::ostringstream out;
  auto put = [&](const char* k, const std::string& v) { out << k << " = " << v << "\n"; };
  put("scenario", std::string(to_string(c.scenario)));
  if (c.lattice) put("lattice", std::string(to_string(*c.lattice)));
  if (c.dx) put("dx", detail::format_double(*c.dx));
  const char* nkeys[] = {"nx", "ny", "nz"};
  const char* lkeys[] = {"lx", "ly", "lz"};
  for (int d = 0; d < 3; ++d) {
    if (c.lattices[d]) put(nkeys[d], std::to_string(*c.lattices[d]));
    if (c.extents[d]) put(lkeys[d], detail::format_double(*c.extents[d]));
  }
  put("nu", detail::format_double(c.nu));
  if (c.u0) put("u0", detail::format_double(*c.u0));
  if (c.dpdx) put("dpdx", detail::format_double(*c.dpdx));
  if (c.t_end) put("t_end", detail::format_double(*c.t_end));
  if (c.steady_tol) put("steady_tol", detail::format_double(*c.steady_tol));
  if (c.max_steps) put("max_steps", std::to_string(*c.max_steps));
  if (c.sample_interval) put("sample_interval", std::to_string(*c.sample_interval));
  if (c.output_dir) put("output_dir", *c.output_dir);
  if (c.output_format) put("output_format", std::string(to_string(*c.output_format)));
  if (c.output_cadence) put("output_cadence", std::to_string(*c.output_cadence));
  for (const auto& p : c.probes) put("probe", detail::render_probe(p));
  if (c.threads) put("threads", std::to_string(*c.threads));
  if (c.seed) put("seed", std::to_string(*c.seed));
  if (c.reference_dir) put("reference_dir", *c.reference_dir);
  return out.str();
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError(path, "cannot open config");
  std::stringstream buf;
  buf << file.rdbuf();
  return parse_config(buf.str());
}

inline Scenario to_scenario(const RunConfig& c) {
  const auto q = derive(c);
  Scenario s = default_scenario(c.scenario);
  s.lattice = c.lattice.value_or(q.dim == 3 ? LatticeModel::D3Q19 : LatticeModel::D2Q9);
  s.dx = q.dx;
  s.extents = q.extents;
  s.nu = c.nu;
  s.u0 = c.u0.value_or(0.0);
  s.dpdx = c.dpdx.value_or(c.scenario == ScenarioKind::CouettePgrad ? s.dpdx : 0.0);
  if (c.t_end || c.steady_tol) {
    s.termination.t_end = c.t_end;
    s.termination.steady_tol = c.steady_tol;
  }
  if (c.max_steps) s.termination.max_steps = *c.max_steps;
  if (c.sample_interval) s.termination.sample_interval = *c.sample_interval;
  s.probes = c.probes;
  s.partitions = c.threads.value_or(1);
  if (c.seed) s.seed = *c.seed;
  if (c.reference_dir) s.reference_dir = *c.reference_dir;
  s.output_cadence = c.output_cadence.value_or(0);
  return s;
}

/// Comment lines identifying the code version, config and kinetics.
inline std::vector<std::string> provenance_lines(const RunConfig& c) {
  const auto q = derive(c);
  std::vector<std::string> lines{
      std::string("maclab ") + MACLAB_VERSION,
      "dx=" + detail::format_double(q.dx) + " e=" + detail::format_double(q.e) + " dt=" + detail::format_double(q.dt)};
  std::istringstream cfg(render_config(c));
  std::string l;
  while (std::getline(cfg, l)) lines.push_back("config: " + l);
  return lines;
}

namespace detail {

inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  return out;
}

inline void finish_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace detail

/// CSV: optional '#' provenance lines, header x,y[,z],rho,ux,uy[,uz], one row
/// per node with x fastest, 17 significant digits.
inline void write_field_csv(const Snapshot& s, const std::string& path, const std::vector<std::string>& provenance = {}) {
  auto out = detail::open_output(path);
  for (const auto& p : provenance) out << "# " << p << "\n";
  out << (s.dim == 3 ? "x,y,z,rho,ux,uy,uz\n" : "x,y,rho,ux,uy\n");
  char buf[48];
  auto put = [&](double v, bool last) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << (last ? '\n' : ',');
  };
  for (int k = 0; k < s.dims[2]; ++k)
    for (int j = 0; j < s.dims[1]; ++j)
      for (int i = 0; i < s.dims[0]; ++i) {
        const std::size_t n = s.index(i, j, k);
        put(i * s.dx, false);
        put(j * s.dx, false);
        if (s.dim == 3) put(k * s.dx, false);
        put(s.rho[n], false);
        for (int d = 0; d < s.dim; ++d) put(s.u[static_cast<std::size_t>(d)][n], d == s.dim - 1);
      }
  detail::finish_output(out, path);
}

template <int D>
void write_field_csv(const FieldState<D>& fields, const Grid<D>& grid, const std::string& path,
                     const std::vector<std::string>& provenance = {}) {
  write_field_csv(make_snapshot(grid, fields), path, provenance);
}

/// Reads a file produced by write_field_csv.
inline Snapshot read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open");
  std::string line;
  std::size_t lineno = 0;
  int dim = 0;
  std::vector<std::array<double, 7>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (dim == 0) {
      if (line == "x,y,rho,ux,uy") dim = 2;
      else if (line == "x,y,z,rho,ux,uy,uz") dim = 3;
      else throw ParseError(lineno, "", "unrecognised CSV header");
      continue;
    }
    std::array<double, 7> r{};
    std::istringstream row(line);
    std::string cell;
    int k = 0;
    while (std::getline(row, cell, ',')) {
      if (k >= 2 * dim + 1) throw ParseError(lineno, "", "too many columns");
      r[static_cast<std::size_t>(k++)] = detail::parse_double(cell, lineno, "");
    }
    if (k != 2 * dim + 1) throw ParseError(lineno, "", "too few columns");
    rows.push_back(r);
  }
  if (rows.empty()) throw ParseError(lineno, "", "no data rows");
  Snapshot s;
  s.dim = dim;
  for (int d = 0; d < dim; ++d) {
    std::set<double> uniq;
    for (const auto& r : rows) uniq.insert(r[static_cast<std::size_t>(d)]);
    s.dims[d] = static_cast<int>(uniq.size());
  }
  s.dx = s.dims[0] > 1 ? rows[1][0] - rows[0][0] : 1.0;
  s.rho.resize(rows.size());
  for (auto& c : s.u) c.assign(rows.size(), 0.0);
  for (std::size_t n = 0; n < rows.size(); ++n) {
    s.rho[n] = rows[n][static_cast<std::size_t>(dim)];
    for (int d = 0; d < dim; ++d) s.u[static_cast<std::size_t>(d)][n] = rows[n][static_cast<std::size_t>(dim + 1 + d)];
  }
  return s;
}

/// Legacy ASCII VTK STRUCTURED_POINTS with a `density` scalar and a
/// `velocity` vector (z component zero in 2D). The title line carries the
/// first provenance entries, since the format has no comment syntax.
inline void write_field_vtk(const Snapshot& s, const std::string& path, const std::vector<std::string>& provenance = {}) {
  auto out = detail::open_output(path);
  std::string title = "maclab field";
  for (std::size_t k = 0; k < provenance.size() && k < 2; ++k) title += "; " + provenance[k];
  if (title.size() > 255) title.resize(255);
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << s.dims[0] << " " << s.dims[1] << " " << s.dims[2] << "\n";
  const std::string h = detail::format_double(s.dx);
  out << "ORIGIN 0 0 0\nSPACING " << h << " " << h << " " << h << "\n";
  out << "POINT_DATA " << s.size() << "\n";
  out << "SCALARS density double 1\nLOOKUP_TABLE default\n";
  char buf[48];
  for (double r : s.rho) {
    std::snprintf(buf, sizeof buf, "%.17g\n", r);
    out << buf;
  }
  out << "VECTORS velocity double\n";
  for (std::size_t n = 0; n < s.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g ", s.u[0][n]);
    out << buf;
    std::snprintf(buf, sizeof buf, "%.17g ", s.u[1][n]);
    out << buf;
    std::snprintf(buf, sizeof buf, "%.17g\n", s.u[2][n]);
    out << buf;
  }
  detail::finish_output(out, path);
}

template <int D>
void write_field_vtk(const FieldState<D>& fields, const Grid<D>& grid, const std::string& path,
                     const std::vector<std::string>& provenance = {}) {
  write_field_vtk(make_snapshot(grid, fields), path, provenance);
}

/// Two-column `coordinate value` profile along a probe line.
inline void write_profile(const Snapshot& s, const Probe& probe, const std::string& path,
                          const std::vector<std::string>& provenance = {}) {
  const auto prof = extract_profile(s, probe);
  auto out = detail::open_output(path);
  for (const auto& p : provenance) out << "# " << p << "\n";
  out << "# probe: " << detail::render_probe(probe) << "\n";
  out << "# t=" << detail::format_double(s.time) << " step=" << s.step << "\n";
  char buf[64];
  for (std::size_t k = 0; k < prof.coord.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", prof.coord[k], prof.value[k]);
    out << buf;
  }
  detail::finish_output(out, path);
}

}  // namespace maclab
