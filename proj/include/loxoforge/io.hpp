/// @file io.hpp
/// Deterministic file formats. CSV carries one row per trace sample with the
/// exact column set u,v,x,y,z,s,angle_dev at 17 significant digits (lossless
/// double round-trip); JSON mirrors the samples plus the spec echo and the
/// verification report; OBJ holds the immersion grid row-major with quad
/// faces and traced loxodromes as polylines; SVG is a fixed-layout (u, v)
/// plot. Identical inputs must produce byte-identical files.

#ifndef LOXOFORGE_IO_HPP
#define LOXOFORGE_IO_HPP

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "loxoforge/errors.hpp"
#include "loxoforge/lox.hpp"
#include "loxoforge/surface.hpp"
#include "loxoforge/verify.hpp"

namespace lox {

namespace io_detail {

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string fmt_fixed3(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

inline std::string fmt6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

inline double parse_field(const std::string& field, const std::string& what) {
  char* end = nullptr;
  const double x = std::strtod(field.c_str(), &end);
  if (field.empty() || end != field.c_str() + field.size())
    throw IoError("malformed CSV: bad " + what + " value '" + field + "'");
  return x;
}

}  // namespace io_detail

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "u,v,x,y,z,s,angle_dev";

/// angle_dev must be per-sample (from trace_diagnostics) and aligned with
/// the trace samples.
inline void write_trace_csv(std::ostream& os, const LoxodromeTrace& tr,
                            const std::vector<double>& angle_dev) {
  using io_detail::fmt17;
  os << kCsvHeader << "\n";
  for (size_t i = 0; i < tr.samples.size(); ++i) {
    const TraceSample& s = tr.samples[i];
    os << fmt17(s.u) << ',' << fmt17(s.v) << ',' << fmt17(s.p.x) << ','
       << fmt17(s.p.y) << ',' << fmt17(s.p.z) << ',' << fmt17(s.s) << ','
       << fmt17(i < angle_dev.size() ? angle_dev[i] : 0.0) << "\n";
  }
}

/// Columns of a re-read trace file.
struct CsvTrace {
  std::vector<double> u, v, x, y, z, s, angle_dev;
};

inline CsvTrace read_csv_trace(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("malformed CSV: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader)
    throw IoError("malformed CSV: header must be exactly '" +
                  std::string(kCsvHeader) + "'");
  CsvTrace t;
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) fields.push_back(cell);
    if (fields.size() != 7)
      throw IoError("malformed CSV: row " + std::to_string(row) + " has " +
                    std::to_string(fields.size()) + " fields, expected 7");
    using io_detail::parse_field;
    t.u.push_back(parse_field(fields[0], "u"));
    t.v.push_back(parse_field(fields[1], "v"));
    t.x.push_back(parse_field(fields[2], "x"));
    t.y.push_back(parse_field(fields[3], "y"));
    t.z.push_back(parse_field(fields[4], "z"));
    t.s.push_back(parse_field(fields[5], "s"));
    t.angle_dev.push_back(parse_field(fields[6], "angle_dev"));
  }
  if (t.u.empty()) throw IoError("malformed CSV: no data rows");
  return t;
}

inline CsvTrace read_csv_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace file '" + path + "'");
  return read_csv_trace(in);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json spec_to_json(const LoxodromeSpec& spec) {
  return {{"theta0", spec.theta0},
          {"branch", branch_name(spec.branch)},
          {"u0", spec.u0},
          {"v0", spec.v0},
          {"samples", spec.grid}};
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& rep) {
  nlohmann::ordered_json j{
      {"surface_id", rep.surface_id},
      {"spec", spec_to_json(rep.spec)},
      {"max_angle_dev", rep.max_angle_dev},
      {"max_unit_speed_dev", rep.max_unit_speed_dev},
      {"max_coeff_identity_dev", rep.max_coeff_identity_dev},
      {"max_analytic_numeric_dev", rep.max_analytic_numeric_dev},
      {"curvature_ode_residual", nullptr},
      {"clairaut_drift", rep.clairaut_drift},
      {"arc_length_rel_err", rep.arc_length_rel_err},
      {"pass", rep.pass}};
  if (rep.curvature_ode_residual)
    j["curvature_ode_residual"] = *rep.curvature_ode_residual;
  return j;
}

inline nlohmann::ordered_json trace_to_json(const LoxodromeTrace& tr,
                                            const std::vector<double>& angle_dev,
                                            const VerificationReport& rep) {
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (size_t i = 0; i < tr.samples.size(); ++i) {
    const TraceSample& s = tr.samples[i];
    samples.push_back({{"u", s.u},
                       {"v", s.v},
                       {"x", s.p.x},
                       {"y", s.p.y},
                       {"z", s.p.z},
                       {"s", s.s},
                       {"angle_dev", i < angle_dev.size() ? angle_dev[i] : 0.0}});
  }
  return {{"schema_version", 1},
          {"surface_id", tr.surface_id},
          {"spec", spec_to_json(tr.spec)},
          {"u_end", tr.u_end},
          {"eps_dom", tr.eps_dom},
          {"monotone_v", tr.monotone_v},
          {"diverging", tr.diverging},
          {"samples", samples},
          {"report", report_to_json(rep)}};
}

// ---------------------------------------------------------------------------
// OBJ
// ---------------------------------------------------------------------------

/// Mesh vertices are psi(u_i, v_j) in row-major order (all v for u_0, then
/// u_1, ...) with quad faces; each trace contributes its own vertices and a
/// single "l" polyline element.
inline void write_obj(std::ostream& os, const InvariantSurface& surf,
                      const std::vector<double>& us,
                      const std::vector<double>& vs,
                      const std::vector<LoxodromeTrace>& traces = {}) {
  using io_detail::fmt17;
  if (us.size() < 2 || vs.size() < 2)
    throw BadParams("mesh grids need at least 2 samples per direction");
  const size_t nu = us.size(), nv = vs.size();
  os << "# invariant surface mesh: " << surf.id << "\n";
  os << "o surface\n";
  for (size_t i = 0; i < nu; ++i)
    for (size_t j = 0; j < nv; ++j) {
      const Vec3 p = surf.psi(us[i], vs[j]);
      os << "v " << fmt17(p.x) << ' ' << fmt17(p.y) << ' ' << fmt17(p.z)
         << "\n";
    }
  auto vid = [nv](size_t i, size_t j) { return i * nv + j + 1; };
  for (size_t i = 0; i + 1 < nu; ++i)
    for (size_t j = 0; j + 1 < nv; ++j)
      os << "f " << vid(i, j) << ' ' << vid(i + 1, j) << ' '
         << vid(i + 1, j + 1) << ' ' << vid(i, j + 1) << "\n";

  size_t next = nu * nv + 1;
  for (size_t k = 0; k < traces.size(); ++k) {
    const LoxodromeTrace& tr = traces[k];
    os << "o trace_" << (k + 1) << "\n";
    for (const TraceSample& s : tr.samples)
      os << "v " << fmt17(s.p.x) << ' ' << fmt17(s.p.y) << ' ' << fmt17(s.p.z)
         << "\n";
    os << "l";
    for (size_t i = 0; i < tr.samples.size(); ++i) os << ' ' << (next + i);
    os << "\n";
    next += tr.samples.size();
  }
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

/// Fixed 800x600 layout: axes with range labels, the (u, v) polyline, an
/// optional overlay polyline, and the crossing-angle label.
inline void write_svg(std::ostream& os, const std::vector<double>& u,
                      const std::vector<double>& v,
                      const std::string& theta_label,
                      const std::vector<double>* overlay_u = nullptr,
                      const std::vector<double>* overlay_v = nullptr) {
  using io_detail::fmt6;
  using io_detail::fmt_fixed3;
  if (u.size() != v.size() || u.size() < 2)
    throw BadParams("svg plot needs matching u/v columns with >= 2 samples");

  double u_lo = u[0], u_hi = u[0], v_lo = v[0], v_hi = v[0];
  auto widen = [&](const std::vector<double>& uu, const std::vector<double>& vv) {
    for (double x : uu) { u_lo = std::min(u_lo, x); u_hi = std::max(u_hi, x); }
    for (double x : vv) { v_lo = std::min(v_lo, x); v_hi = std::max(v_hi, x); }
  };
  widen(u, v);
  if (overlay_u && overlay_v) widen(*overlay_u, *overlay_v);
  if (u_hi - u_lo <= 0.0) { u_lo -= 1.0; u_hi += 1.0; }
  if (v_hi - v_lo <= 0.0) { v_lo -= 1.0; v_hi += 1.0; }

  const double x0 = 70.0, x1 = 770.0, y0 = 560.0, y1 = 50.0;  // y grows up
  auto px = [&](double uu) { return x0 + (uu - u_lo) / (u_hi - u_lo) * (x1 - x0); };
  auto py = [&](double vv) { return y0 + (vv - v_lo) / (v_hi - v_lo) * (y1 - y0); };
  auto polyline = [&](const std::vector<double>& uu, const std::vector<double>& vv,
                      const char* color) {
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < uu.size(); ++i) {
      if (i) os << ' ';
      os << fmt_fixed3(px(uu[i])) << ',' << fmt_fixed3(py(vv[i]));
    }
    os << "\"/>\n";
  };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
        "viewBox=\"0 0 800 600\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  os << "<line x1=\"" << fmt_fixed3(x0) << "\" y1=\"" << fmt_fixed3(y0)
     << "\" x2=\"" << fmt_fixed3(x1) << "\" y2=\"" << fmt_fixed3(y0)
     << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << fmt_fixed3(x0) << "\" y1=\"" << fmt_fixed3(y0)
     << "\" x2=\"" << fmt_fixed3(x0) << "\" y2=\"" << fmt_fixed3(y1)
     << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  os << "<text x=\"" << fmt_fixed3(x0) << "\" y=\"580\" font-size=\"14\" "
        "font-family=\"monospace\">u=" << fmt6(u_lo) << "</text>\n";
  os << "<text x=\"" << fmt_fixed3(x1 - 90.0) << "\" y=\"580\" font-size=\"14\" "
        "font-family=\"monospace\">u=" << fmt6(u_hi) << "</text>\n";
  os << "<text x=\"8\" y=\"" << fmt_fixed3(y0) << "\" font-size=\"14\" "
        "font-family=\"monospace\">v=" << fmt6(v_lo) << "</text>\n";
  os << "<text x=\"8\" y=\"" << fmt_fixed3(y1 + 4.0) << "\" font-size=\"14\" "
        "font-family=\"monospace\">v=" << fmt6(v_hi) << "</text>\n";
  os << "<text x=\"" << fmt_fixed3(x0) << "\" y=\"30\" font-size=\"16\" "
        "font-family=\"monospace\">" << theta_label << "</text>\n";
  polyline(u, v, "#1f6feb");
  if (overlay_u && overlay_v) polyline(*overlay_u, *overlay_v, "#d4601f");
  os << "</svg>\n";
}

// ---------------------------------------------------------------------------
// File helpers
// ---------------------------------------------------------------------------

/// Opens path for writing; IoError on failure. "-" means stdout is handled
/// by the caller.
inline std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  return out;
}

}  // namespace lox

#endif  // LOXOFORGE_IO_HPP
