#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "decoh/cli/app.hpp"
#include "decoh/csv.hpp"
#include "decoh/ctp_functional.hpp"
#include "decoh/error.hpp"
#include "decoh/overlap_view.hpp"
#include "decoh/qed_rates.hpp"

namespace decoh::cli {

namespace {

double reference_wavelength(const AtomModel& atom) { return atom[0].wavelength; }

double max_frequency(const AtomModel& atom) {
  double w = 0.0;
  for (const auto& c : atom.channels()) w = std::max(w, c.bohr_frequency);
  return w;
}

QuadratureSpec quad_with_threads(const RunConfig& c) {
  QuadratureSpec q = c.quad;
  q.threads = c.threads;
  return q;
}

double require_duration(const RunConfig& c) {
  if (!c.duration) fail(ErrorCode::ConfigError, "config: 'duration' is required");
  return *c.duration;
}

Json rates_json(const RateReport& r) {
  return {{"gamma_local", rounded(r.gamma_local())},
          {"gamma_nonlocal", rounded(r.gamma_nonlocal())},
          {"gamma_total", rounded(r.gamma_total())}};
}

double deviation(const RateReport& a, const RateReport& b, double gamma) {
  const double d = std::max({std::abs(a.gamma_local() - b.gamma_local()),
                             std::abs(a.gamma_nonlocal() - b.gamma_nonlocal()),
                             std::abs(a.gamma_total() - b.gamma_total())});
  return gamma > 0.0 ? d / gamma : d;
}

SeparationRow row_from(double a_over_lambda, const RateReport& r) {
  SeparationRow row;
  row.a_over_lambda = a_over_lambda;
  row.gamma_local = r.gamma_local();
  row.gamma_nonlocal = r.gamma_nonlocal();
  row.gamma_total = r.gamma_total();
  row.ratio = r.gamma_local() != 0.0 ? r.gamma_total() / r.gamma_local() : std::nan("");
  return row;
}

Json scan_json(const SeparationScan& scan) {
  Json rows = Json::array();
  for (const auto& r : scan.rows) {
    rows.push_back({{"a_over_lambda", rounded(r.a_over_lambda)},
                    {"gamma_local", rounded(r.gamma_local)},
                    {"gamma_nonlocal", rounded(r.gamma_nonlocal)},
                    {"gamma_total", rounded(r.gamma_total)},
                    {"ratio", rounded(r.ratio)}});
  }
  return {{"reference_wavelength", rounded(scan.reference_wavelength)}, {"rows", rows}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string cmd_rates(const RunConfig& c) {
  const double a = c.separations.at(0);
  RateReport r;
  if (c.route == "ctp") {
    r = ctp_route(c, a);
  } else if (c.route == "overlap") {
    r = overlap_route(c, a);
  } else {
    r = total_rate(c.atom, a * reference_wavelength(c.atom));
  }
  if (c.format == Format::Json) {
    Json j = to_json(r);
    j["a_over_lambda"] = rounded(a);
    j["route"] = c.route;
    return dump(j);
  }
  SeparationScan scan;
  scan.reference_wavelength = reference_wavelength(c.atom);
  scan.rows.push_back(row_from(a, r));
  std::ostringstream os;
  write_scan_csv(os, scan);
  return os.str();
}

std::string cmd_scan(const RunConfig& c) {
  const SeparationScan scan = scan_separation(c.atom, c.separations, c.threads);
  if (c.format == Format::Json) return dump(scan_json(scan));
  std::ostringstream os;
  write_scan_csv(os, scan);
  return os.str();
}

std::string cmd_mismatch(const RunConfig& c) {
  const double dt = require_duration(c);
  MismatchOptions opts;
  opts.mode = c.mismatch_mode;
  opts.cutoff_factor = c.cutoff_factor;
  opts.quad = quad_with_threads(c);
  const double a = c.separations.at(0) * reference_wavelength(c.atom);
  const auto rows = scan_mismatch_products(c.atom, a, dt, c.d_omega_dt, opts);
  if (c.format == Format::Json) {
    Json out = Json::array();
    for (const auto& r : rows) {
      out.push_back({{"d_omega_dt", rounded(r.d_omega_dt)},
                     {"duration", rounded(r.duration)},
                     {"gamma_nonlocal", rounded(r.gamma_nonlocal)},
                     {"ratio", rounded(r.ratio)}});
    }
    return dump({{"a_over_lambda", rounded(c.separations.at(0))}, {"rows", out}});
  }
  std::ostringstream os;
  write_mismatch_csv(os, rows);
  return os.str();
}

std::string cmd_kernel_demo(const RunConfig& c) {
  const double dt = require_duration(c);
  const KernelPair k = exponential_test_kernels(c.tau_c, c.kernel_frequency);
  StationaryOptions opts;
  opts.quad = quad_with_threads(c);
  const auto schedule = default_dt_schedule(dt, c.schedule_points);
  const auto factory = [](double t) { return double_well_pair(0.0, t); };
  const RateReport r = stationary_rates(k.q, k.X, factory, schedule, opts);
  std::vector<FunctionalValue> values;
  for (double t : schedule) values.push_back(eval_functionals(k.q, k.X, factory(t), opts.quad));

  if (c.format == Format::Csv) {
    std::ostringstream os;
    write_csv_header(os, {"duration", "s_local_dec", "s_nonlocal_dec"});
    for (const auto& v : values) write_csv_row(os, {v.duration, v.s_local_dec, v.s_nonlocal_dec});
    return os.str();
  }
  const double wt = c.kernel_frequency * c.tau_c;
  Json rows = Json::array();
  for (const auto& v : values) {
    rows.push_back({{"duration", rounded(v.duration)},
                    {"s_local_dec", rounded(v.s_local_dec)},
                    {"s_nonlocal_dec", rounded(v.s_nonlocal_dec)}});
  }
  Json j = to_json(r);
  j["tau_c"] = rounded(c.tau_c);
  j["omega"] = rounded(c.kernel_frequency);
  j["gamma_local_expected"] = rounded(4.0 * c.tau_c / (1.0 + wt * wt));
  j["functionals"] = rows;
  return dump(j);
}

std::string cmd_crosscheck(const RunConfig& c, int& exit_code) {
  const CrosscheckReport rep = crosscheck(c);
  if (!rep.passed) exit_code = kExitCrosscheck;
  if (c.format == Format::Csv) {
    std::ostringstream os;
    write_csv_header(os, {"a_over_lambda", "closed_total", "ctp_total", "overlap_total",
                          "dev_ctp", "dev_overlap", "dev_ctp_overlap"});
    for (const auto& r : rep.rows) {
      write_csv_row(os, {r.a_over_lambda, r.closed.gamma_total(), r.ctp.gamma_total(),
                         r.overlap.gamma_total(), r.deviation_ctp, r.deviation_overlap,
                         r.deviation_ctp_overlap});
    }
    return os.str();
  }
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    rows.push_back({{"a_over_lambda", rounded(r.a_over_lambda)},
                    {"closed", rates_json(r.closed)},
                    {"ctp", rates_json(r.ctp)},
                    {"overlap", rates_json(r.overlap)},
                    {"deviation",
                     {{"ctp_closed", rounded(r.deviation_ctp)},
                      {"overlap_closed", rounded(r.deviation_overlap)},
                      {"ctp_overlap", rounded(r.deviation_ctp_overlap)}}}});
  }
  const Json j = {{"gamma", rounded(rep.gamma)},
                  {"tolerance", rounded(rep.tolerance)},
                  {"duration", rounded(require_duration(c))},
                  {"overlap_duration", rounded(c.overlap_duration)},
                  {"cutoff_factor", rounded(c.cutoff_factor)},
                  {"max_deviation", rounded(rep.max_deviation)},
                  {"passed", rep.passed},
                  {"rows", rows}};
  return dump(j);
}

}  // namespace

RateReport ctp_route(const RunConfig& c, double a_over_lambda) {
  const double dt = require_duration(c);
  const double a = a_over_lambda * reference_wavelength(c.atom);
  QedKernelOptions kopts;
  kopts.cutoff = c.cutoff_factor * max_frequency(c.atom);
  const KernelPair k = build_qed_kernels(c.atom, kopts);
  StationaryOptions opts;
  opts.quad = quad_with_threads(c);
  return stationary_rates(
      k.q, k.X, [a](double t) { return double_well_pair(a, t); },
      default_dt_schedule(dt, c.schedule_points), opts);
}

RateReport overlap_route(const RunConfig& c, double a_over_lambda) {
  const double dt = c.overlap_duration;
  const double a = a_over_lambda * reference_wavelength(c.atom);
  auto grid = std::make_shared<const ModeGrid>(ModeGrid::for_atom(c.atom, dt, 0.5 * a));
  const auto plus = perturb_env_state(c.atom, {0.0, 0.0, 0.5 * a}, dt, grid, "+", c.threads);
  const auto minus = perturb_env_state(c.atom, {0.0, 0.0, -0.5 * a}, dt, grid, "-", c.threads);
  return RateReport(local_rate_from_norms(plus, minus), overlap_rate(plus, minus));
}

CrosscheckReport crosscheck(const RunConfig& c) {
  CrosscheckReport rep;
  rep.gamma = gamma_spontaneous(c.atom);
  rep.tolerance = c.tolerance;
  for (double x : c.separations) {
    RouteRates r;
    r.a_over_lambda = x;
    r.closed = total_rate(c.atom, x * reference_wavelength(c.atom));
    r.ctp = ctp_route(c, x);
    r.overlap = overlap_route(c, x);
    r.deviation_ctp = deviation(r.ctp, r.closed, rep.gamma);
    r.deviation_overlap = deviation(r.overlap, r.closed, rep.gamma);
    r.deviation_ctp_overlap = deviation(r.ctp, r.overlap, rep.gamma);
    rep.max_deviation = std::max(
        {rep.max_deviation, r.deviation_ctp, r.deviation_overlap, r.deviation_ctp_overlap});
    rep.rows.push_back(r);
  }
  rep.passed = rep.max_deviation <= rep.tolerance;
  return rep;
}

std::string execute(const RunConfig& config, int& exit_code) {
  exit_code = kExitOk;
  switch (config.command) {
    case Command::Rates: return cmd_rates(config);
    case Command::Scan: return cmd_scan(config);
    case Command::Mismatch: return cmd_mismatch(config);
    case Command::KernelDemo: return cmd_kernel_demo(config);
    case Command::Crosscheck: return cmd_crosscheck(config, exit_code);
  }
  return {};
}

}  // namespace decoh::cli
