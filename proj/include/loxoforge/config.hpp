/// @file config.hpp
/// Strict JSON surface configs and the shared CLI value parsers. A config
/// either names a catalog surface (with parameter overrides) or assembles a
/// custom invariant surface from a family tag, Killing parameters, and a
/// profile given by expressions, a unit-speed constraint, or sampled data.
/// schema_version must be 1 and unknown fields are rejected everywhere, so
/// typos fail loudly instead of silently changing geometry.

#ifndef LOXOFORGE_CONFIG_HPP
#define LOXOFORGE_CONFIG_HPP

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "loxoforge/errors.hpp"
#include "loxoforge/expr.hpp"
#include "loxoforge/profile.hpp"
#include "loxoforge/surface.hpp"
#include "loxoforge/verify.hpp"

namespace lox {

struct LoadedConfig {
  InvariantSurface surface;
  double eps_dom = 1e-4;
  ToleranceMap tolerances = default_tolerances();
  std::optional<std::string> out;
  std::optional<std::string> format;
};

namespace config_detail {

using nlohmann::json;

inline void require_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("unknown field '" + it.key() + "' in " + where);
}

inline double as_number(const json& j, const std::string& what) {
  if (!j.is_number())
    throw ConfigError(what + " must be a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(what + " must be finite");
  return x;
}

inline std::string as_string(const json& j, const std::string& what) {
  if (!j.is_string()) throw ConfigError(what + " must be a string");
  return j.get<std::string>();
}

/// Killing parameters a config must provide, per family tag.
inline AmbientSpace space_from_json(const json& surf_obj,
                                    const std::string& family) {
  ParamMap params;
  if (surf_obj.contains("params")) {
    const json& p = surf_obj.at("params");
    if (!p.is_object()) throw ConfigError("'params' must be an object");
    for (auto it = p.begin(); it != p.end(); ++it)
      params[it.key()] = as_number(it.value(), "params." + it.key());
  }
  auto need = [&params, &family](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw ConfigError("family '" + family + "' requires params." + key);
    return it->second;
  };
  auto only = [&params, &family](std::set<std::string> allowed) {
    for (const auto& [key, value] : params)
      if (!allowed.count(key))
        throw ConfigError("family '" + family + "' does not take params." + key);
  };

  if (family == "euclidean_translation") {
    only({});
    Vec3 axis{0, 0, 1};
    if (surf_obj.contains("axis")) {
      const json& ax = surf_obj.at("axis");
      if (!ax.is_array() || ax.size() != 3)
        throw ConfigError("'axis' must be an array of 3 numbers");
      axis = {as_number(ax[0], "axis[0]"), as_number(ax[1], "axis[1]"),
              as_number(ax[2], "axis[2]")};
    }
    return AmbientSpace::euclidean_translation(axis);
  }
  if (surf_obj.contains("axis"))
    throw ConfigError("'axis' applies only to family euclidean_translation");
  if (family == "euclidean_helicoidal") {
    only({"a"});
    return AmbientSpace::euclidean_helicoidal(need("a"));
  }
  if (family == "bcv_rotation") {
    only({"l", "m"});
    return AmbientSpace::bcv_rotation(need("l"), need("m"));
  }
  if (family == "h2xr_parabolic_screw") {
    only({"a", "b"});
    return AmbientSpace::h2xr_parabolic_screw(need("a"), need("b"));
  }
  if (family == "h2xr_hyperbolic_screw") {
    only({"b"});
    return AmbientSpace::h2xr_hyperbolic_screw(need("b"));
  }
  if (family == "h2xr_elliptic_screw") {
    only({"b"});
    return AmbientSpace::h2xr_elliptic_screw(need("b"));
  }
  if (family == "h2xr_vertical") {
    only({});
    return AmbientSpace::h2xr_vertical();
  }
  if (family == "heis_translation") {
    only({});
    return AmbientSpace::heis_translation();
  }
  if (family == "heis_vertical") {
    only({});
    return AmbientSpace::heis_vertical();
  }
  if (family == "heis_screw") {
    only({"a"});
    return AmbientSpace::heis_screw(need("a"));
  }
  throw ConfigError("unknown family '" + family + "'");
}

/// Validates that an explicit profile is unit speed in the orbit-space
/// metric; the tracer's angle and arc-length laws assume it.
inline void require_unit_speed(const AmbientSpace& space,
                               const ProfileCurve& curve, double tol,
                               const std::string& what) {
  double worst = 0.0;
  constexpr int kProbes = 50;
  for (int i = 0; i < kProbes; ++i) {
    const double u = curve.u_domain.lo +
                     curve.u_domain.length() * (i + 0.5) / kProbes;
    worst = std::max(worst, std::abs(quotient_speed(space, curve, u) - 1.0));
  }
  if (worst > tol)
    throw ConfigError(what + " is not unit speed in the orbit space (max |speed - 1| = " +
                      std::to_string(worst) +
                      "); use xi2 = \"constraint\" to derive it");
}

inline ProfileCurve profile_from_json(const AmbientSpace& space,
                                      const json& prof) {
  if (!prof.is_object()) throw ConfigError("'profile' must be an object");
  require_keys(prof, "profile",
               {"u_min", "u_max", "xi1_expr", "xi2", "constraint"});
  if (!prof.contains("u_min") || !prof.contains("u_max"))
    throw ConfigError("profile needs u_min and u_max");
  const Interval dom{as_number(prof.at("u_min"), "u_min"),
                     as_number(prof.at("u_max"), "u_max")};
  if (!(dom.lo < dom.hi)) throw ConfigError("profile needs u_min < u_max");
  if (!prof.contains("xi1_expr"))
    throw ConfigError("profile needs xi1_expr");
  const ProfileExpr e1 = parse(as_string(prof.at("xi1_expr"), "xi1_expr"));
  if (!prof.contains("xi2")) throw ConfigError("profile needs xi2");
  const json& x2 = prof.at("xi2");

  if (x2.is_string()) {
    if (x2.get<std::string>() != "constraint")
      throw ConfigError("xi2 must be \"constraint\", {\"expr\": ...}, or "
                        "{\"u\": [...], \"values\": [...]}");
    ParamMap cparams;
    if (prof.contains("constraint")) {
      const json& c = prof.at("constraint");
      if (!c.is_object()) throw ConfigError("'constraint' must be an object");
      require_keys(c, "constraint", {"sign", "u_ref", "xi2_0"});
      for (auto it = c.begin(); it != c.end(); ++it)
        cparams[it.key()] = as_number(it.value(), "constraint." + it.key());
    }
    return profile_from_constraint(space, e1, cparams, dom);
  }
  if (prof.contains("constraint"))
    throw ConfigError("'constraint' applies only when xi2 is \"constraint\"");
  if (!x2.is_object())
    throw ConfigError("xi2 must be \"constraint\", {\"expr\": ...}, or "
                      "{\"u\": [...], \"values\": [...]}");

  ProfileCurve curve;
  curve.u_domain = dom;
  curve.xi1 = [e1](double u) { return eval(e1, u); };
  curve.xi1_prime = [e1](double u) { return derivative(e1, u); };

  if (x2.contains("expr")) {
    require_keys(x2, "xi2", {"expr"});
    const ProfileExpr e2 = parse(as_string(x2.at("expr"), "xi2.expr"));
    curve.provenance = Provenance::closed_form;
    curve.xi2 = [e2](double u) { return eval(e2, u); };
    curve.xi2_prime = [e2](double u) { return derivative(e2, u); };
    require_unit_speed(space, curve, 1e-6, "the expression profile");
    return curve;
  }
  if (x2.contains("u") || x2.contains("values")) {
    require_keys(x2, "xi2", {"u", "values"});
    if (!x2.contains("u") || !x2.contains("values"))
      throw ConfigError("sampled xi2 needs both 'u' and 'values' arrays");
    auto read_array = [](const json& arr, const std::string& what) {
      if (!arr.is_array() || arr.size() < 4)
        throw ConfigError(what + " must be an array of at least 4 numbers");
      std::vector<double> xs(arr.size());
      for (size_t i = 0; i < arr.size(); ++i)
        xs[i] = as_number(arr[i], what + " entry");
      return xs;
    };
    const std::vector<double> us = read_array(x2.at("u"), "xi2.u");
    const std::vector<double> ys = read_array(x2.at("values"), "xi2.values");
    if (us.size() != ys.size())
      throw ConfigError("xi2.u and xi2.values must have equal length");
    if (us.front() > dom.lo || us.back() < dom.hi)
      throw ConfigError("xi2 samples must cover [u_min, u_max]");
    const PchipInterpolant interp = PchipInterpolant::build(us, ys);
    curve.provenance = Provenance::sampled;
    curve.xi2 = [interp](double u) { return interp.eval(u); };
    curve.xi2_prime = [interp](double u) { return interp.deriv(u); };
    // Piecewise-cubic data cannot hit quadrature accuracy; gate loosely and
    // let verify_trace report the honest deviations.
    require_unit_speed(space, curve, 1e-3, "the sampled profile");
    return curve;
  }
  throw ConfigError("xi2 object must contain 'expr' or 'u'/'values'");
}

inline InvariantSurface surface_from_json(const json& s) {
  if (!s.is_object()) throw ConfigError("'surface' must be an object");
  if (s.contains("catalog_id")) {
    require_keys(s, "surface", {"catalog_id", "params"});
    ParamMap params;
    if (s.contains("params")) {
      const json& p = s.at("params");
      if (!p.is_object()) throw ConfigError("'params' must be an object");
      for (auto it = p.begin(); it != p.end(); ++it)
        params[it.key()] = as_number(it.value(), "params." + it.key());
    }
    return build_catalog_surface(as_string(s.at("catalog_id"), "catalog_id"),
                                 params);
  }

  require_keys(s, "surface",
               {"family", "params", "axis", "profile", "trace_window",
                "const_K", "id", "description"});
  if (!s.contains("family"))
    throw ConfigError("surface needs either catalog_id or family");
  const std::string family = as_string(s.at("family"), "family");
  const AmbientSpace space = space_from_json(s, family);
  if (!s.contains("profile"))
    throw ConfigError("custom surface needs a profile");
  const ProfileCurve profile = profile_from_json(space, s.at("profile"));

  Interval window{profile.u_domain.lo + 0.025 * profile.u_domain.length(),
                  profile.u_domain.hi - 0.025 * profile.u_domain.length()};
  if (s.contains("trace_window")) {
    const json& w = s.at("trace_window");
    if (!w.is_array() || w.size() != 2)
      throw ConfigError("trace_window must be [lo, hi]");
    window = {as_number(w[0], "trace_window[0]"),
              as_number(w[1], "trace_window[1]")};
    if (!(profile.u_domain.lo <= window.lo && window.lo < window.hi &&
          window.hi <= profile.u_domain.hi))
      throw ConfigError("trace_window must be an increasing interval inside "
                        "[u_min, u_max]");
  }
  std::optional<double> const_K;
  if (s.contains("const_K")) const_K = as_number(s.at("const_K"), "const_K");

  InvariantSurface surf = assemble_surface(
      space, profile,
      s.contains("id") ? as_string(s.at("id"), "id") : std::string("custom"),
      s.contains("description")
          ? as_string(s.at("description"), "description")
          : "user-defined invariant surface (family " + family + ")",
      window, const_K);
  return surf;
}

}  // namespace config_detail

/// Loads and validates a config file.
inline LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& err) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + err.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be an object");
  config_detail::require_keys(
      j, "config",
      {"schema_version", "surface", "eps_dom", "tolerances", "out", "format"});
  if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer() ||
      j.at("schema_version").get<int>() != 1)
    throw ConfigError("config requires \"schema_version\": 1");
  if (!j.contains("surface")) throw ConfigError("config needs a surface");

  LoadedConfig cfg;
  cfg.surface = config_detail::surface_from_json(j.at("surface"));
  if (j.contains("eps_dom")) {
    cfg.eps_dom = config_detail::as_number(j.at("eps_dom"), "eps_dom");
    if (cfg.eps_dom < 0.0) throw ConfigError("eps_dom must be nonnegative");
  }
  cfg.tolerances = tolerances_with_env();
  if (j.contains("tolerances")) {
    const nlohmann::json& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("'tolerances' must be an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (!cfg.tolerances.count(it.key()))
        throw ConfigError("unknown tolerance '" + it.key() + "'");
      const double v = config_detail::as_number(it.value(), "tolerances." + it.key());
      if (v <= 0.0) throw ConfigError("tolerances." + it.key() + " must be positive");
      cfg.tolerances[it.key()] = v;
    }
  }
  if (j.contains("out")) cfg.out = config_detail::as_string(j.at("out"), "out");
  if (j.contains("format")) {
    cfg.format = config_detail::as_string(j.at("format"), "format");
    if (*cfg.format != "csv" && *cfg.format != "json")
      throw ConfigError("format must be \"csv\" or \"json\"");
  }
  return cfg;
}

/// Resolves a --surface argument: a catalog id, or a path to a config file
/// (anything containing a dot or slash is treated as a path).
inline LoadedConfig resolve_surface_arg(const std::string& arg) {
  for (const std::string& id : catalog_ids())
    if (id == arg) {
      LoadedConfig cfg;
      cfg.surface = build_catalog_surface(id);
      cfg.tolerances = tolerances_with_env();
      return cfg;
    }
  if (arg.find('.') == std::string::npos && arg.find('/') == std::string::npos)
    throw UnknownCatalogId(arg);
  return load_config(arg);
}

/// Parses an angle given as radians ("0.7854") or as a pi fraction
/// ("pi/6", "2pi/5", "0.5pi", "pi").
inline double parse_angle(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ConfigError("empty angle");
  const double PI = 3.14159265358979323846;

  const size_t at = s.find("pi");
  if (at == std::string::npos) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(x))
      throw ConfigError("cannot parse angle '" + text + "'");
    return x;
  }

  double coef = 1.0;
  if (at > 0) {
    const std::string head = s.substr(0, at);
    if (head == "-") {
      coef = -1.0;
    } else {
      char* end = nullptr;
      coef = std::strtod(head.c_str(), &end);
      if (end != head.c_str() + head.size() || !std::isfinite(coef))
        throw ConfigError("cannot parse angle '" + text + "'");
    }
  }
  double den = 1.0;
  const std::string tail = s.substr(at + 2);
  if (!tail.empty()) {
    if (tail[0] != '/' || tail.size() < 2)
      throw ConfigError("cannot parse angle '" + text + "'");
    const std::string d = tail.substr(1);
    char* end = nullptr;
    den = std::strtod(d.c_str(), &end);
    if (end != d.c_str() + d.size() || !std::isfinite(den) || den == 0.0)
      throw ConfigError("cannot parse angle '" + text + "'");
  }
  return coef * PI / den;
}

}  // namespace lox

#endif  // LOXOFORGE_CONFIG_HPP
