#include "decoh/json_io.hpp"

#include "decoh/csv.hpp"
#include "decoh/error.hpp"

namespace decoh {

void check_keys(const Json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
  if (!obj.is_object()) fail(ErrorCode::ConfigError, context + ": expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed) ok = ok || item.key() == k;
    if (!ok) fail(ErrorCode::ConfigError, context + ": unknown key '" + item.key() + "'");
  }
}

double get_number(const Json& obj, const char* key, const std::string& context) {
  if (!obj.contains(key)) fail(ErrorCode::ConfigError, context + ": missing '" + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number()) fail(ErrorCode::ConfigError, context + ": '" + key + "' must be a number");
  return v.get<double>();
}

double get_number_or(const Json& obj, const char* key, double fallback,
                     const std::string& context) {
  return obj.contains(key) ? get_number(obj, key, context) : fallback;
}

namespace {

int get_int(const Json& obj, const char* key, int fallback, const std::string& context) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) {
    fail(ErrorCode::ConfigError, context + ": '" + key + "' must be an integer");
  }
  return v.get<int>();
}

const Json& get(const Json& obj, const char* key, const std::string& context) {
  if (!obj.contains(key)) fail(ErrorCode::ConfigError, context + ": missing '" + key + "'");
  return obj.at(key);
}

std::vector<double> number_array(const Json& j, const std::string& context) {
  if (!j.is_array()) fail(ErrorCode::ConfigError, context + ": expected an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) fail(ErrorCode::ConfigError, context + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

Json rounded(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_12(x);
}

Json to_json(Vec3 v) { return Json::array({rounded(v.x), rounded(v.y), rounded(v.z)}); }

Vec3 vec3_from_json(const Json& j, const std::string& context) {
  const auto v = number_array(j, context);
  if (v.size() != 3) fail(ErrorCode::ConfigError, context + ": expected 3 components");
  return {v[0], v[1], v[2]};
}

Json to_json(const AtomModel& atom) {
  Json channels = Json::array();
  for (const auto& c : atom.channels()) {
    channels.push_back({{"label", c.label},
                        {"bohr_frequency", rounded(c.bohr_frequency)},
                        {"dipole_strength", rounded(c.dipole_strength)}});
  }
  return {{"channels", channels}};
}

AtomModel atom_from_json(const Json& j) {
  check_keys(j, {"channels"}, "atom");
  const Json& list = get(j, "channels", "atom");
  if (!list.is_array()) fail(ErrorCode::ConfigError, "atom: 'channels' must be an array");
  std::vector<DecayChannel> channels;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string ctx = "atom.channels[" + std::to_string(i) + "]";
    const Json& c = list[i];
    check_keys(c, {"label", "bohr_frequency", "dipole_strength"}, ctx);
    DecayChannel ch;
    if (c.contains("label")) {
      if (!c["label"].is_string()) fail(ErrorCode::ConfigError, ctx + ": 'label' must be a string");
      ch.label = c["label"].get<std::string>();
    } else {
      ch.label = std::to_string(i);
    }
    ch.bohr_frequency = get_number(c, "bohr_frequency", ctx);
    ch.dipole_strength = get_number_or(c, "dipole_strength", 1.0, ctx);
    channels.push_back(std::move(ch));
  }
  return AtomModel(std::move(channels));
}

Json to_json(const Path& path) {
  if (path.is_constant()) return {{"type", "constant"}, {"position", to_json(path.at(0.0))}};
  Json times = Json::array();
  Json positions = Json::array();
  const auto nodes = path.nodes();
  const auto t = path.times();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    times.push_back(rounded(t[i]));
    positions.push_back(to_json(nodes[i]));
  }
  return {{"type", "sampled"}, {"times", times}, {"positions", positions}};
}

Path path_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::ConfigError, "path: expected an object");
  const Json& type = get(j, "type", "path");
  if (type == "constant") {
    check_keys(j, {"type", "position"}, "path");
    return Path::constant(vec3_from_json(get(j, "position", "path"), "path.position"));
  }
  if (type == "sampled") {
    check_keys(j, {"type", "times", "positions"}, "path");
    auto times = number_array(get(j, "times", "path"), "path.times");
    const Json& pos = get(j, "positions", "path");
    if (!pos.is_array()) fail(ErrorCode::ConfigError, "path.positions: expected an array");
    std::vector<Vec3> positions;
    for (const auto& p : pos) positions.push_back(vec3_from_json(p, "path.positions"));
    return Path::sampled(std::move(times), std::move(positions));
  }
  fail(ErrorCode::ConfigError, "path: 'type' must be \"constant\" or \"sampled\"");
}

Json to_json(const PathPair& pair) {
  return {{"path1", to_json(pair.first)},
          {"path2", to_json(pair.second)},
          {"duration", rounded(pair.duration)}};
}

PathPair path_pair_from_json(const Json& j) {
  check_keys(j, {"path1", "path2", "duration"}, "path_pair");
  return PathPair(path_from_json(get(j, "path1", "path_pair")),
                  path_from_json(get(j, "path2", "path_pair")),
                  get_number(j, "duration", "path_pair"));
}

Json to_json(const QuadratureSpec& spec) {
  return {{"panel_factor", rounded(spec.panel_factor)},
          {"gauss_order", spec.gauss_order},
          {"rel_tolerance", rounded(spec.rel_tolerance)},
          {"max_refinements", spec.max_refinements}};
}

QuadratureSpec quadrature_from_json(const Json& j) {
  const std::string ctx = "quadrature";
  check_keys(j, {"panel_factor", "gauss_order", "rel_tolerance", "max_refinements", "threads"},
             ctx);
  QuadratureSpec s;
  s.panel_factor = get_number_or(j, "panel_factor", s.panel_factor, ctx);
  s.gauss_order = get_int(j, "gauss_order", s.gauss_order, ctx);
  s.rel_tolerance = get_number_or(j, "rel_tolerance", s.rel_tolerance, ctx);
  s.max_refinements = get_int(j, "max_refinements", s.max_refinements, ctx);
  const int threads = get_int(j, "threads", static_cast<int>(s.threads), ctx);
  if (threads < 1) fail(ErrorCode::ConfigError, ctx + ": 'threads' must be >= 1");
  s.threads = static_cast<unsigned>(threads);
  try {
    s.validate();
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, ctx + ": " + e.what());
  }
  return s;
}

Json to_json(const RateReport& report) {
  const RateDiagnostics& d = report.diagnostics();
  Json schedule = Json::array();
  for (double t : d.dt_schedule) schedule.push_back(rounded(t));
  return {{"gamma_local", rounded(report.gamma_local())},
          {"gamma_nonlocal", rounded(report.gamma_nonlocal())},
          {"gamma_total", rounded(report.gamma_total())},
          {"diagnostics",
           {{"fit_residual_local", rounded(d.fit_residual_local)},
            {"fit_residual_nonlocal", rounded(d.fit_residual_nonlocal)},
            {"dt_schedule", schedule},
            {"quadrature_error", rounded(d.quadrature_error)},
            {"quadrature_panels", d.quadrature_panels},
            {"grid_nodes", d.grid_nodes},
            {"tau_cutoff", rounded(d.tau_cutoff)}}}};
}

RateReport rate_report_from_json(const Json& j) {
  check_keys(j, {"gamma_local", "gamma_nonlocal", "gamma_total", "diagnostics"}, "rate_report");
  RateDiagnostics d;
  if (j.contains("diagnostics")) {
    const Json& dj = j["diagnostics"];
    const std::string ctx = "rate_report.diagnostics";
    check_keys(dj,
               {"fit_residual_local", "fit_residual_nonlocal", "dt_schedule", "quadrature_error",
                "quadrature_panels", "grid_nodes", "tau_cutoff"},
               ctx);
    d.fit_residual_local = get_number_or(dj, "fit_residual_local", 0.0, ctx);
    d.fit_residual_nonlocal = get_number_or(dj, "fit_residual_nonlocal", 0.0, ctx);
    if (dj.contains("dt_schedule")) d.dt_schedule = number_array(dj["dt_schedule"], ctx);
    d.quadrature_error = get_number_or(dj, "quadrature_error", 0.0, ctx);
    d.quadrature_panels = static_cast<std::size_t>(get_int(dj, "quadrature_panels", 0, ctx));
    d.grid_nodes = static_cast<std::size_t>(get_int(dj, "grid_nodes", 0, ctx));
    d.tau_cutoff = get_number_or(dj, "tau_cutoff", 0.0, ctx);
  }
  return RateReport(get_number(j, "gamma_local", "rate_report"),
                    get_number(j, "gamma_nonlocal", "rate_report"), std::move(d));
}

}  // namespace decoh
