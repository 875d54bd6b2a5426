#include "decoh/ctp_functional.hpp"

#include <algorithm>
#include <cmath>

#include "decoh/error.hpp"

namespace decoh {

void CorrelationKernel::validate() const {
  if (dim < 1 || dim > 3) fail(ErrorCode::InvalidArgument, "kernel dim must be 1, 2 or 3");
  if (!eval) fail(ErrorCode::InvalidArgument, "kernel has no evaluator");
  if (!(memory_time > 0.0)) fail(ErrorCode::InvalidArgument, "kernel memory_time must be positive");
  if (!(max_frequency >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "kernel max_frequency must be non-negative");
  }
}

double eval_G(const CorrelationKernel& kq, const CorrelationKernel& kX, const SpaceTimePoint& x,
              const SpaceTimePoint& xp) {
  if (kq.dim != kX.dim) {
    fail(ErrorCode::DimensionMismatch, "q and X kernels have different dimensions");
  }
  const KernelSample q = kq.eval(x, xp);
  const KernelSample X = kX.eval(x, xp);
  const double theta = x.t > xp.t ? 1.0 : (x.t == xp.t ? 0.5 : 0.0);
  double sym = 0.0;
  double anti = 0.0;
  for (int i = 0; i < kq.dim; ++i) {
    for (int j = 0; j < kq.dim; ++j) {
      sym += q.s(i, j) * X.s(i, j);
      anti += q.a(i, j) * X.a(i, j);
    }
  }
  return 0.5 * sym - 0.25 * theta * anti;
}

namespace {

struct Scales {
  double memory;
  double oscillation;
  double delay;
};

Scales integration_scales(const CorrelationKernel& kq, const CorrelationKernel& kX,
                          const PathPair& pair) {
  const double memory = std::min(kq.memory_time, kX.memory_time);
  const double wmax = std::max(kq.max_frequency, kX.max_frequency);
  const double period = wmax > 0.0 ? kTwoPi / wmax : std::numeric_limits<double>::infinity();
  Scales s{memory, period, 0.0};
  if (!std::isfinite(s.memory)) s.memory = pair.duration / kTruncationDecayLengths;
  if (!std::isfinite(s.oscillation)) s.oscillation = std::min(s.memory, pair.duration);
  if (kq.position_dependent || kX.position_dependent) s.delay = light_time(pair.max_extent());
  return s;
}

}  // namespace

FunctionalValue eval_functionals(const CorrelationKernel& kq, const CorrelationKernel& kX,
                                 const PathPair& pair, const QuadratureSpec& quad) {
  kq.validate();
  kX.validate();
  if (kq.dim != kX.dim) {
    fail(ErrorCode::DimensionMismatch, "q and X kernels have different dimensions");
  }
  quad.validate();
  const Scales sc = integration_scales(kq, kX, pair);
  const Path& p1 = pair.first;
  const Path& p2 = pair.second;

  auto local = [&](double t, double tp) {
    return eval_G(kq, kX, {t, p1.at(t)}, {tp, p1.at(tp)}) +
           eval_G(kq, kX, {tp, p2.at(tp)}, {t, p2.at(t)});
  };
  auto nonlocal = [&](double t, double tp) {
    return -(eval_G(kq, kX, {t, p1.at(t)}, {tp, p2.at(tp)}) +
             eval_G(kq, kX, {tp, p2.at(tp)}, {t, p1.at(t)}));
  };

  FunctionalValue out;
  out.duration = pair.duration;
  Integral<double> L;
  Integral<double> NL;
  if (kq.stationary && kX.stationary && p1.is_constant() && p2.is_constant()) {
    auto gl = [&](double tau) { return local(tau, 0.0); };
    auto gnl = [&](double tau) { return nonlocal(tau, 0.0); };
    L = integrate_stationary_square(gl, pair.duration, sc.memory, sc.oscillation, quad, sc.delay);
    NL = integrate_stationary_square(gnl, pair.duration, sc.memory, sc.oscillation, quad,
                                     sc.delay);
  } else {
    RotatedOptions opt;
    opt.propagation_delay = sc.delay;
    opt.drift_scale = std::min(p1.min_spacing(), p2.min_spacing());
    auto fl = [&](double tm, double tau) { return local(tm + 0.5 * tau, tm - 0.5 * tau); };
    auto fnl = [&](double tm, double tau) { return nonlocal(tm + 0.5 * tau, tm - 0.5 * tau); };
    L = integrate_2d_rotated(fl, pair.duration, sc.memory, sc.oscillation, quad, opt);
    NL = integrate_2d_rotated(fnl, pair.duration, sc.memory, sc.oscillation, quad, opt);
  }
  out.s_local_dec = L.value;
  out.s_nonlocal_dec = NL.value;
  out.error_estimate = std::max(L.error_estimate, NL.error_estimate);
  out.panels = std::max(L.panels, NL.panels);
  out.tau_cutoff = L.tau_cutoff;
  out.truncation_bound = L.truncation_bound;
  return out;
}

std::vector<double> default_dt_schedule(double dt_max, std::size_t n) {
  if (!(dt_max > 0.0)) fail(ErrorCode::InvalidArgument, "dt_max must be positive");
  if (n < 2) fail(ErrorCode::InvalidArgument, "schedule needs at least 2 points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = 0.5 * dt_max * (1.0 + static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

RateReport stationary_rates(const CorrelationKernel& kq, const CorrelationKernel& kX,
                            const PairFactory& pair_factory, const std::vector<double>& schedule,
                            const StationaryOptions& options) {
  if (schedule.size() < 4) fail(ErrorCode::TooFewPoints, "schedule needs at least 4 points");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i] > schedule[i - 1])) {
      fail(ErrorCode::InvalidArgument, "schedule must be strictly increasing");
    }
  }
  std::vector<double> sl(schedule.size());
  std::vector<double> snl(schedule.size());
  RateDiagnostics diag;
  diag.dt_schedule = schedule;
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const FunctionalValue v = eval_functionals(kq, kX, pair_factory(schedule[i]), options.quad);
    sl[i] = v.s_local_dec;
    snl[i] = v.s_nonlocal_dec;
    diag.quadrature_error = std::max(diag.quadrature_error, v.error_estimate);
    diag.quadrature_panels = std::max(diag.quadrature_panels, v.panels);
    diag.tau_cutoff = std::max(diag.tau_cutoff, v.tau_cutoff);
  }
  const LinearFit fl = fit_linear_tail(schedule, sl, options.tail_fraction);
  const LinearFit fnl = fit_linear_tail(schedule, snl, options.tail_fraction);
  diag.fit_residual_local = fl.residual;
  diag.fit_residual_nonlocal = fnl.residual;
  if (fl.residual > options.residual_tolerance || fnl.residual > options.residual_tolerance) {
    fail(ErrorCode::NonLinearGrowth,
         "functional growth is not linear over the schedule tail (residuals " +
             std::to_string(fl.residual) + ", " + std::to_string(fnl.residual) + ")");
  }
  return RateReport(fl.slope, fnl.slope, std::move(diag));
}

std::vector<std::vector<RateReport>> pairwise_decoherence_matrix(
    const CorrelationKernel& kq, const CorrelationKernel& kX, const std::vector<Path>& paths,
    const std::vector<double>& schedule, const StationaryOptions& options) {
  if (paths.size() < 2) fail(ErrorCode::InvalidArgument, "need at least two paths");
  const std::size_t n = paths.size();
  std::vector<std::vector<RateReport>> out(n, std::vector<RateReport>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      out[j][k] = stationary_rates(
          kq, kX, [&](double dt) { return PathPair(paths[j], paths[k], dt); }, schedule, options);
    }
  }
  return out;
}

KernelPair exponential_test_kernels(double tau_c, double omega) {
  if (!(tau_c > 0.0)) fail(ErrorCode::InvalidArgument, "tau_c must be positive");
  if (!(omega >= 0.0)) fail(ErrorCode::InvalidArgument, "omega must be non-negative");
  KernelPair k;
  k.q.dim = 1;
  k.q.memory_time = tau_c;
  k.q.max_frequency = omega;
  k.q.eval = [tau_c, omega](const SpaceTimePoint& x, const SpaceTimePoint& xp) {
    const double tau = x.t - xp.t;
    KernelSample s;
    s.s(0, 0) = std::exp(-std::abs(tau) / tau_c) * std::cos(omega * tau);
    return s;
  };
  k.X.dim = 1;
  k.X.eval = [](const SpaceTimePoint&, const SpaceTimePoint&) {
    KernelSample s;
    s.s(0, 0) = 2.0;
    return s;
  };
  return k;
}

KernelPair zero_kernels(int dim) {
  KernelPair k;
  auto zero = [](const SpaceTimePoint&, const SpaceTimePoint&) { return KernelSample{}; };
  k.q.dim = dim;
  k.q.eval = zero;
  k.X.dim = dim;
  k.X.eval = zero;
  return k;
}

}  // namespace decoh
