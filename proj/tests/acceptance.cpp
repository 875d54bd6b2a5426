// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "decoh/cli/app.hpp"
#include "decoh/csv.hpp"
#include "decoh/ctp_functional.hpp"
#include "decoh/mismatch.hpp"
#include "decoh/overlap_view.hpp"
#include "decoh/qed_rates.hpp"
#include "decoh/quadrature.hpp"
#include "oracles.hpp"

using namespace decoh;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Output {
  int code;
  std::string text;
};

Output cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str() + err.str()};
}

const double kGamma = oracle::partial_rate(1.0, 1.0);

double deviation(const RateReport& r, double a) {
  const double nl = oracle::nl_over_gamma(a) * kGamma;
  return std::max({std::abs(r.gamma_local() - kGamma), std::abs(r.gamma_nonlocal() - nl),
                   std::abs(r.gamma_total() - (kGamma + nl))}) /
         kGamma;
}

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const Output o = cli({"scan"});
  const double runtime = seconds_since(t0);
  std::istringstream is(o.text);
  const SeparationScan scan = read_scan_csv(is);

  double max_dev = 0.0;
  std::size_t imax = 0;
  double r0 = NAN, rhalf = NAN, rone = NAN;
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    const auto& row = scan.rows[i];
    max_dev = std::max(max_dev, std::abs(row.ratio - (1.0 - oracle::sinc(2.0 * oracle::kPi * row.a_over_lambda))));
    if (row.ratio > scan.rows[imax].ratio) imax = i;
    if (row.a_over_lambda == 0.0) r0 = row.ratio;
    if (row.a_over_lambda == 0.5) rhalf = row.ratio;
    if (row.a_over_lambda == 1.0) rone = row.ratio;
  }

  // Refine the grid maximum on a 1e-7 grid around the coarse peak.
  const double center = scan.rows[imax].a_over_lambda;
  const SeparationScan fine =
      scan_separation(two_level_atom(), linear_grid(center - 0.01, center + 0.01, 1e-7));
  const auto best = std::max_element(fine.rows.begin(), fine.rows.end(),
                                     [](const auto& a, const auto& b) { return a.ratio < b.ratio; });
  const double a_star = oracle::tan_root(4.49) / (2.0 * oracle::kPi);
  const double a_root = find_root_tan_x_eq_x(oracle::kPi, 1.5 * oracle::kPi) / (2.0 * oracle::kPi);
  // The location is checked against 4.4934094579 / (2 pi) = 0.7151483. The
  // rounded constant 0.715127 quoted alongside that root is 2.1e-5 below it.
  const double quoted = 0.715127;

  const bool ok = o.code == 0 && scan.rows.size() == 301 && max_dev <= 1e-11 && r0 == 0.0 &&
                  std::abs(rhalf - 1.0) <= 1e-11 && std::abs(rone - 1.0) <= 1e-11 &&
                  std::abs(best->ratio - 1.217234) <= 1e-5 &&
                  std::abs(best->a_over_lambda - a_star) <= 1e-5 &&
                  std::abs(a_root - a_star) <= 1e-10 / (2.0 * oracle::kPi) && runtime < 1.0;
  report(1, ok,
         fmt("rows=%zu max|ratio-(1-sinc)|=%.2e ratio(0)=%.12g ratio(0.5)=%.12g ratio(1)=%.12g "
             "max=%.9f at a/lambda=%.7f (tan root/2pi %.10f, tol 1e-5; quoted %.6f is off by %.1e) "
             "runtime=%.3fs",
             scan.rows.size(), max_dev, r0, rhalf, rone, best->ratio, best->a_over_lambda, a_root,
             quoted, std::abs(a_star - quoted), runtime));
}

cli::CrosscheckReport criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const Output o = cli({"crosscheck"});
  const cli::RunConfig config = cli::default_config(cli::Command::Crosscheck);
  const cli::CrosscheckReport rep = cli::crosscheck(config);

  double max_ctp = 0.0;
  double max_overlap = 0.0;
  double worst_ratio = 0.0;
  double best_ratio = 1.0;
  cli::RunConfig doubled = config;
  doubled.overlap_duration = 2.0 * config.overlap_duration;
  for (const auto& row : rep.rows) {
    max_ctp = std::max(max_ctp, row.deviation_ctp);
    max_overlap = std::max(max_overlap, row.deviation_overlap);
    const double e1 = deviation(row.overlap, row.a_over_lambda);
    const double e2 = deviation(cli::overlap_route(doubled, row.a_over_lambda), row.a_over_lambda);
    worst_ratio = std::max(worst_ratio, e2 / e1);
    best_ratio = std::min(best_ratio, e2 / e1);
  }
  const double runtime = seconds_since(t0);
  const bool ok = o.code == 0 && rep.passed && max_ctp <= 2e-2 && max_overlap <= 2e-2 &&
                  best_ratio >= 0.4 && worst_ratio <= 0.6 && runtime < 120.0;
  report(2, ok,
         fmt("max dev ctp=%.2e overlap=%.2e (tol 2e-2); overlap error ratio dt 400->800 in "
             "[%.3f, %.3f]; runtime=%.1fs",
             max_ctp, max_overlap, best_ratio, worst_ratio, runtime));
  return rep;
}

void criterion_3() {
  oracle::Gen g(2024);
  double worst = 0.0;
  int grids = 0;
  for (double dt : {50.0, 200.0, 400.0}) {
    for (double a : {0.0, 0.25, 0.5, 0.715, 1.5, 5.0}) {
      const AtomModel atom = g.uniform(0.0, 1.0) < 0.5
                                 ? two_level_atom()
                                 : validate_atom({{"a", 1.0, 1.0}, {"b", g.uniform(0.6, 1.8), 0.4}});
      const Vec3 shift{g.uniform(-0.3, 0.3), g.uniform(-0.3, 0.3), g.uniform(-0.3, 0.3)};
      const Vec3 r1 = Vec3{0.0, 0.0, 0.5 * a} + shift;
      const Vec3 r2 = Vec3{0.0, 0.0, -0.5 * a} + shift;
      auto grid = std::make_shared<const ModeGrid>(
          ModeGrid::for_atom(atom, dt, std::max(r1.norm(), r2.norm())));
      const auto s1 = perturb_env_state(atom, r1, dt, grid);
      const auto s2 = perturb_env_state(atom, r2, dt, grid);
      const double local = local_rate_from_norms(s1, s2);
      const double lhs = total_rate_from_difference(s1, s2);
      worst = std::max(worst, std::abs(lhs - (local + overlap_rate(s1, s2))) / local);
      ++grids;
    }
  }
  report(3, worst <= 1e-12, fmt("%d grids, max relative residual %.2e (tol 1e-12)", grids, worst));
}

void criterion_4(const cli::CrosscheckReport& rep) {
  const SeparationScan scan = scan_separation(two_level_atom(), linear_grid(0.0, 3.0, 0.01));
  double min_total = INFINITY;
  for (const auto& r : scan.rows) min_total = std::min(min_total, r.gamma_total);
  for (const auto& r : rep.rows) {
    min_total = std::min({min_total, r.overlap.gamma_total(), r.ctp.gamma_total()});
  }
  double zero = 0.0;
  for (const auto& r : rep.rows) {
    if (r.a_over_lambda != 0.0) continue;
    zero = std::max({std::abs(r.closed.gamma_total()), std::abs(r.ctp.gamma_total()),
                     std::abs(r.overlap.gamma_total())});
  }
  // The CTP route's coincident total is a difference of two equal integrals
  // and may come out as a signed rounding residue.
  const bool positive = min_total >= -1e-12 * kGamma;
  report(4, positive && zero <= 1e-3 * kGamma,
         fmt("min Gamma_total over scan and routes = %.3e; |Gamma_total(a=0)|/gamma = %.2e (tol 1e-3)",
             min_total, zero / kGamma));
}

void criterion_5(const cli::CrosscheckReport& rep) {
  const SeparationScan scan = scan_separation(two_level_atom(), linear_grid(5.0, 20.0, 0.01));
  double worst = 0.0;
  for (const auto& r : scan.rows) worst = std::max(worst, std::abs(r.gamma_nonlocal));
  for (const auto& r : rep.rows) {
    if (r.a_over_lambda < 5.0) continue;
    worst = std::max({worst, std::abs(r.ctp.gamma_nonlocal()), std::abs(r.overlap.gamma_nonlocal())});
  }
  cli::RunConfig c = cli::default_config(cli::Command::Crosscheck);
  for (double a : {5.5, 6.3, 8.0}) worst = std::max(worst, std::abs(cli::overlap_route(c, a).gamma_nonlocal()));
  report(5, worst <= 0.05 * kGamma, fmt("max |Gamma_NL|/gamma for a >= 5 lambda = %.4f (tol 0.05)", worst / kGamma));
}

void criterion_6() {
  const double wbar = 1.0;
  const double a = 0.02;
  const double dt = 60.0;
  double worst = 0.0;
  for (double x = 0.0; x <= 20.0 + 1e-9; x += 0.25) {
    const ShiftedAtomPair p = ShiftedAtomPair::symmetric(two_level_atom(wbar), x / dt);
    const double num = gamma_nl_mismatch(p, a, dt);
    worst = std::max(worst, std::abs(num - oracle::mismatch_nl(wbar, 1.0, a, x)) / gamma_bar(p));
  }
  const ShiftedAtomPair far = ShiftedAtomPair::symmetric(two_level_atom(), 100.0 / 100.0);
  const double suppressed = std::abs(gamma_nl_mismatch(far, 0.01, 100.0)) / gamma_bar(far);
  double collapse = 0.0;
  for (double x : {0.5, 1.7, 3.0, 6.2, 12.0}) {
    const ShiftedAtomPair p1 = ShiftedAtomPair::symmetric(two_level_atom(), x / 40.0);
    const ShiftedAtomPair p2 = ShiftedAtomPair::symmetric(two_level_atom(), x / 120.0);
    collapse = std::max(collapse, std::abs(gamma_nl_mismatch(p1, 0.01, 40.0) / gamma_bar(p1) -
                                           gamma_nl_mismatch(p2, 0.01, 120.0) / gamma_bar(p2)));
  }
  report(6, worst <= 1e-3 && suppressed <= 0.02 && collapse <= 1e-3,
         fmt("max |num-oracle|/gamma_bar on [0,20] = %.2e (tol 1e-3); |Gamma_NL|/gamma_bar at 100 = "
             "%.2e (tol 0.02); collapse = %.2e (tol 1e-3)",
             worst, suppressed, collapse));
}

void criterion_7() {
  double worst_l = 0.0;
  double worst_total = 0.0;
  for (auto [tc, om] : {std::pair{1.0, 0.0}, {1.0, 0.5}, {0.5, 3.0}, {2.0, 1.2}}) {
    const KernelPair k = exponential_test_kernels(tc, om);
    const RateReport r = stationary_rates(
        k.q, k.X, [](double t) { return double_well_pair(0.0, t); }, default_dt_schedule(120.0 * tc));
    const double expected = 2.0 * (2.0 * tc / (1.0 + om * om * tc * tc));
    worst_l = std::max(worst_l, std::abs(r.gamma_local() - expected) / expected);
    worst_total = std::max(worst_total, std::abs(r.gamma_total()) / r.gamma_local());
  }
  report(7, worst_l <= 1e-4 && worst_total <= 1e-4,
         fmt("max |Gamma_L - 4 tau_c/(1+Omega^2 tau_c^2)|/expected = %.2e; max |Gamma_total|/Gamma_L = %.2e "
             "(tol 1e-4)",
             worst_l, worst_total));
}

void criterion_8() {
  const std::vector<std::vector<std::string>> runs = {
      {"scan"},
      {"crosscheck"},
      {"kernel-demo", "--format", "json"},
      {"rates", "--format", "json"},
  };
  bool same = true;
  int compared = 0;
  for (const auto& base : runs) {
    std::string first;
    for (const char* n : {"1", "2", "8"}) {
      std::vector<std::string> args = base;
      args.insert(args.end(), {"--threads", n});
      const Output o = cli(args);
      if (first.empty()) {
        first = o.text;
      } else {
        same = same && o.text == first;
        ++compared;
      }
    }
  }

  // Raw doubles, before output rounding.
  const AtomModel atom = two_level_atom();
  const KernelPair k = build_qed_kernels(atom);
  std::vector<double> bits;
  for (unsigned n : {1u, 2u, 8u}) {
    QuadratureSpec q;
    q.threads = n;
    const FunctionalValue v = eval_functionals(k.q, k.X, double_well_pair(0.3, 80.0), q);
    auto grid = std::make_shared<const ModeGrid>(ModeGrid::for_atom(atom, 400.0, 0.15));
    const auto s1 = perturb_env_state(atom, {0, 0, 0.15}, 400.0, grid, "+", n);
    const auto s2 = perturb_env_state(atom, {0, 0, -0.15}, 400.0, grid, "-", n);
    const double ov = overlap_rate(s1, s2);
    if (bits.empty()) {
      bits = {v.s_local_dec, v.s_nonlocal_dec, ov};
    } else {
      same = same && bits == std::vector<double>{v.s_local_dec, v.s_nonlocal_dec, ov};
      ++compared;
    }
  }
  report(8, same, fmt("%d comparisons across 1, 2 and 8 workers, %s", compared,
                      same ? "all bitwise identical" : "outputs differ"));
}

}  // namespace

int main() {
  criterion_1();
  const cli::CrosscheckReport rep = criterion_2();
  criterion_3();
  criterion_4(rep);
  criterion_5(rep);
  criterion_6();
  criterion_7();
  criterion_8();
  return failures == 0 ? 0 : 1;
}
