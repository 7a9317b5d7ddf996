/// @file loxoforge.cpp
/// Command-line front end: catalog listing, loxodrome tracing, independent
/// verification suites, OBJ mesh export, and SVG plots.
///
/// Exit codes: 0 success, 1 verification failure, 2 configuration error,
/// 3 numeric failure, 4 I/O error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loxoforge/config.hpp"
#include "loxoforge/io.hpp"
#include "loxoforge/lox.hpp"
#include "loxoforge/surface.hpp"
#include "loxoforge/verify.hpp"

namespace {

using namespace lox;

constexpr double kPi = 3.14159265358979323846;

std::string param_summary(const AmbientSpace& s) {
  char buf[96];
  switch (s.killing) {
    case KillingKind::translation:
      std::snprintf(buf, sizeof(buf), "axis=(%g, %g, %g)", s.axis.x, s.axis.y,
                    s.axis.z);
      return buf;
    case KillingKind::helicoidal:
    case KillingKind::heis_screw:
      std::snprintf(buf, sizeof(buf), "a=%g", s.a);
      return buf;
    case KillingKind::bcv_rotation:
      std::snprintf(buf, sizeof(buf), "l=%g, m=%g", s.l, s.m);
      return buf;
    case KillingKind::parabolic_screw:
      std::snprintf(buf, sizeof(buf), "a=%g, b=%g", s.a, s.b);
      return buf;
    case KillingKind::hyperbolic_screw:
    case KillingKind::elliptic_screw:
      std::snprintf(buf, sizeof(buf), "b=%g", s.b);
      return buf;
    case KillingKind::vertical_translation:
    case KillingKind::heis_translation:
    case KillingKind::heis_vertical:
      return "-";
  }
  return "-";
}

// Splits a comma-separated flag value, dropping empty tokens.
std::vector<std::string> split_list(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const std::string& arg : args) {
    std::string token;
    for (char ch : arg) {
      if (ch == ',') {
        if (!token.empty()) out.push_back(token);
        token.clear();
      } else {
        token += ch;
      }
    }
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

std::ostream& output_stream(std::ofstream& file, const std::string& out_path) {
  if (out_path.empty()) return std::cout;
  file = open_output(out_path);
  return file;
}

// ---------------------------------------------------------------------------
// list
// ---------------------------------------------------------------------------

int cmd_list() {
  for (const std::string& id : catalog_ids()) {
    const InvariantSurface surf = build_catalog_surface(id);
    std::printf("%-24s family=%-24s params[%s]  u-domain=(%g, %g)\n    %s\n",
                id.c_str(), family_tag(surf.space).c_str(),
                param_summary(surf.space).c_str(), surf.u_domain.lo,
                surf.u_domain.hi, surf.description.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// trace
// ---------------------------------------------------------------------------

struct TraceArgs {
  std::string surface;
  std::string theta0 = "pi/4";
  std::string branch = "plus";
  std::optional<double> u0, u_end, eps_dom;
  double v0 = 0.0;
  int samples = 1001;
  std::string out;
  std::string format = "csv";
};

int cmd_trace(const TraceArgs& args) {
  LoadedConfig cfg = resolve_surface_arg(args.surface);
  const InvariantSurface& surf = cfg.surface;

  LoxodromeSpec spec;
  spec.theta0 = parse_angle(args.theta0);
  spec.branch = args.branch == "minus" ? Branch::minus : Branch::plus;
  spec.u0 = args.u0 ? *args.u0 : surf.trace_window.lo;
  spec.v0 = args.v0;
  spec.grid = args.samples;
  const double u_end = args.u_end ? *args.u_end : surf.trace_window.hi;
  const double eps = args.eps_dom ? *args.eps_dom : cfg.eps_dom;

  const LoxodromeTrace tr = trace(surf, spec, u_end, eps);
  const TraceDiagnostics diag = trace_diagnostics(surf, tr);
  const VerificationReport rep = verify_trace(surf, tr, cfg.tolerances);

  std::ofstream file;
  std::ostream& os = output_stream(file, args.out);
  if (args.format == "json")
    os << trace_to_json(tr, diag.angle_dev, rep).dump(2) << "\n";
  else
    write_trace_csv(os, tr, diag.angle_dev);
  os.flush();
  if (!os) throw IoError("failed writing trace output");
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> surfaces;
  std::vector<std::string> thetas;
  std::string branch = "both";
  int samples = 1001;
  std::optional<double> eps_dom;
  std::string out;
  bool self_test_corruption = false;
};

int cmd_verify(const VerifyArgs& args) {
  std::vector<std::string> surface_args = split_list(args.surfaces);
  if (surface_args.empty()) {
    if (!args.surfaces.empty())
      throw ConfigError("empty suite selection: no surfaces named");
    surface_args = catalog_ids();
  }
  std::vector<std::string> theta_args = split_list(args.thetas);
  if (theta_args.empty()) {
    if (!args.thetas.empty())
      throw ConfigError("empty suite selection: no angles named");
    theta_args = {"pi/8", "pi/6", "pi/4", "pi/3", "pi/2"};
  }
  std::vector<Branch> branches;
  if (args.branch == "plus") branches = {Branch::plus};
  else if (args.branch == "minus") branches = {Branch::minus};
  else branches = {Branch::plus, Branch::minus};

  std::vector<double> angles;
  angles.reserve(theta_args.size());
  for (const std::string& t : theta_args) angles.push_back(parse_angle(t));

  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  bool all_pass = true;
  for (const std::string& sarg : surface_args) {
    const LoadedConfig cfg = resolve_surface_arg(sarg);
    const InvariantSurface& surf = cfg.surface;
    const double eps = args.eps_dom ? *args.eps_dom : cfg.eps_dom;
    for (double theta0 : angles)
      for (Branch branch : branches) {
        LoxodromeSpec spec;
        spec.theta0 = theta0;
        spec.branch = branch;
        spec.u0 = surf.trace_window.lo;
        spec.v0 = 0.0;
        spec.grid = args.samples;
        LoxodromeTrace tr = trace(surf, spec, surf.trace_window.hi, eps);
        if (args.self_test_corruption) tr = corrupt_trace(surf, tr);
        const VerificationReport rep = verify_trace(surf, tr, cfg.tolerances);
        all_pass = all_pass && rep.pass;
        reports.push_back(report_to_json(rep));
      }
  }

  std::ofstream file;
  std::ostream& os = output_stream(file, args.out);
  os << reports.dump(2) << "\n";
  os.flush();
  if (!os) throw IoError("failed writing verification report");
  return all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// mesh
// ---------------------------------------------------------------------------

struct MeshArgs {
  std::string surface;
  int u_samples = 32;
  int v_samples = 64;
  std::optional<double> u_min, u_max;
  double v_min = 0.0;
  double v_max = 2.0 * kPi;
  std::vector<std::string> trace_thetas;
  std::string trace_branch = "plus";
  int trace_samples = 200;
  std::optional<double> eps_dom;
  std::string out;
};

int cmd_mesh(const MeshArgs& args) {
  LoadedConfig cfg = resolve_surface_arg(args.surface);
  const InvariantSurface& surf = cfg.surface;
  if (args.u_samples < 2 || args.v_samples < 2)
    throw ConfigError("mesh grids need at least 2 samples per direction");

  const double u_lo = args.u_min ? *args.u_min : surf.trace_window.lo;
  const double u_hi = args.u_max ? *args.u_max : surf.trace_window.hi;
  if (!(u_lo < u_hi)) throw ConfigError("mesh needs u-min < u-max");
  if (!(args.v_min < args.v_max)) throw ConfigError("mesh needs v-min < v-max");

  std::vector<double> us(args.u_samples), vs(args.v_samples);
  for (int i = 0; i < args.u_samples; ++i)
    us[i] = u_lo + (u_hi - u_lo) * i / (args.u_samples - 1);
  for (int j = 0; j < args.v_samples; ++j)
    vs[j] = args.v_min + (args.v_max - args.v_min) * j / (args.v_samples - 1);

  const double eps = args.eps_dom ? *args.eps_dom : cfg.eps_dom;
  std::vector<LoxodromeTrace> traces;
  for (const std::string& t : split_list(args.trace_thetas)) {
    LoxodromeSpec spec;
    spec.theta0 = parse_angle(t);
    spec.branch = args.trace_branch == "minus" ? Branch::minus : Branch::plus;
    spec.u0 = u_lo;
    spec.v0 = 0.0;
    spec.grid = args.trace_samples;
    traces.push_back(trace(surf, spec, u_hi, eps));
  }

  std::ofstream file;
  std::ostream& os = output_stream(file, args.out);
  write_obj(os, surf, us, vs, traces);
  os.flush();
  if (!os) throw IoError("failed writing mesh output");
  return 0;
}

// ---------------------------------------------------------------------------
// plot
// ---------------------------------------------------------------------------

struct PlotArgs {
  std::string in;
  std::string overlay;
  std::string theta0;
  std::string out;
};

int cmd_plot(const PlotArgs& args) {
  const CsvTrace tr = read_csv_trace(args.in);

  double theta;
  if (!args.theta0.empty()) {
    theta = parse_angle(args.theta0);
  } else {
    // Recover the angle from the arc-length law s = (u - u0)/sin(theta0).
    // Only sin(theta0) is encoded, so angles beyond pi/2 display folded.
    const double du = tr.u.back() - tr.u.front();
    const double ds = tr.s.back() - tr.s.front();
    if (ds == 0.0) throw IoError("malformed CSV: arc-length column is constant");
    theta = std::asin(std::clamp(du / ds, -1.0, 1.0));
  }
  char label[64];
  std::snprintf(label, sizeof(label), "theta0 = %.6g rad", theta);

  std::optional<CsvTrace> over;
  if (!args.overlay.empty()) over = read_csv_trace(args.overlay);

  std::ofstream file;
  std::ostream& os = output_stream(file, args.out);
  write_svg(os, tr.u, tr.v, label, over ? &over->u : nullptr,
            over ? &over->v : nullptr);
  os.flush();
  if (!os) throw IoError("failed writing plot output");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"loxoforge: constant-angle curves on invariant surfaces"};
  app.require_subcommand(1);

  CLI::App* list_cmd = app.add_subcommand("list", "List the surface catalog");

  TraceArgs targs;
  CLI::App* trace_cmd =
      app.add_subcommand("trace", "Trace a loxodrome and write samples");
  trace_cmd->add_option("--surface", targs.surface,
                        "Catalog id or config.json path")->required();
  trace_cmd->add_option("--theta0", targs.theta0,
                        "Crossing angle (radians or pi fraction like pi/6)");
  trace_cmd->add_option("--branch", targs.branch, "Integrand branch")
      ->check(CLI::IsMember({"plus", "minus"}));
  trace_cmd->add_option("--u0", targs.u0, "Start parameter (default: window)");
  trace_cmd->add_option("--v0", targs.v0, "Start orbit coordinate");
  trace_cmd->add_option("--u-end", targs.u_end, "End parameter (default: window)");
  trace_cmd->add_option("--samples", targs.samples, "Sample count (>= 2)");
  trace_cmd->add_option("--eps-dom", targs.eps_dom, "Domain shrink margin");
  trace_cmd->add_option("--out", targs.out, "Output path (default: stdout)");
  trace_cmd->add_option("--format", targs.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs vargs;
  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "Run the independent verification suite, write a JSON report");
  verify_cmd->add_option("--surface", vargs.surfaces,
                         "Surfaces (repeatable, comma lists; default: all)");
  verify_cmd->add_option("--theta0", vargs.thetas,
                         "Angles (repeatable, comma lists; default suite)");
  verify_cmd->add_option("--branch", vargs.branch, "Branches to check")
      ->check(CLI::IsMember({"plus", "minus", "both"}));
  verify_cmd->add_option("--samples", vargs.samples, "Samples per trace");
  verify_cmd->add_option("--eps-dom", vargs.eps_dom, "Domain shrink margin");
  verify_cmd->add_option("--out", vargs.out, "Report path (default: stdout)");
  verify_cmd->add_flag("--self-test-corruption", vargs.self_test_corruption,
                       "Corrupt each trace first; a healthy verifier must fail");

  MeshArgs margs;
  CLI::App* mesh_cmd =
      app.add_subcommand("mesh", "Export the immersion as an OBJ mesh");
  mesh_cmd->add_option("--surface", margs.surface,
                       "Catalog id or config.json path")->required();
  mesh_cmd->add_option("--u-samples", margs.u_samples, "Grid rows (>= 2)");
  mesh_cmd->add_option("--v-samples", margs.v_samples, "Grid columns (>= 2)");
  mesh_cmd->add_option("--u-min", margs.u_min, "Grid start (default: window)");
  mesh_cmd->add_option("--u-max", margs.u_max, "Grid end (default: window)");
  mesh_cmd->add_option("--v-min", margs.v_min, "Orbit coordinate start");
  mesh_cmd->add_option("--v-max", margs.v_max, "Orbit coordinate end");
  mesh_cmd->add_option("--trace-theta0", margs.trace_thetas,
                       "Overlay loxodrome angles (repeatable)");
  mesh_cmd->add_option("--trace-branch", margs.trace_branch,
                       "Branch for overlay traces")
      ->check(CLI::IsMember({"plus", "minus"}));
  mesh_cmd->add_option("--trace-samples", margs.trace_samples,
                       "Samples per overlay trace");
  mesh_cmd->add_option("--eps-dom", margs.eps_dom, "Domain shrink margin");
  mesh_cmd->add_option("--out", margs.out, "Output path (default: stdout)");

  PlotArgs pargs;
  CLI::App* plot_cmd =
      app.add_subcommand("plot", "Render a traced CSV as an SVG (u, v) plot");
  plot_cmd->add_option("--in", pargs.in, "Trace CSV path")->required();
  plot_cmd->add_option("--overlay", pargs.overlay, "Second trace CSV overlay");
  plot_cmd->add_option("--theta0", pargs.theta0,
                       "Label angle override (default: recovered from s)");
  plot_cmd->add_option("--out", pargs.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list_cmd->parsed()) return cmd_list();
    if (trace_cmd->parsed()) return cmd_trace(targs);
    if (verify_cmd->parsed()) return cmd_verify(vargs);
    if (mesh_cmd->parsed()) return cmd_mesh(margs);
    if (plot_cmd->parsed()) return cmd_plot(pargs);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownCatalogId& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BadParams& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownIdentifier& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    // Remaining library errors are numeric: domain violations, singular
    // orbits, quadrature failures, curvature-class mismatches.
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
