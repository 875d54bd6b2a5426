#include "decoh/mismatch.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <ostream>

#include "decoh/csv.hpp"
#include "decoh/error.hpp"
#include "decoh/overlap_view.hpp"
#include "decoh/qed_rates.hpp"

namespace decoh {

ShiftedAtomPair::ShiftedAtomPair(AtomModel base, std::vector<double> omega_plus,
                                 std::vector<double> omega_minus)
    : base_(std::move(base)), plus_(std::move(omega_plus)), minus_(std::move(omega_minus)) {
  if (plus_.size() != base_.size() || minus_.size() != base_.size()) {
    fail(ErrorCode::DimensionMismatch, "shifted frequencies do not match the channel count");
  }
  for (std::size_t s = 0; s < base_.size(); ++s) {
    if (!(plus_[s] > 0.0) || !(minus_[s] > 0.0)) {
      fail(ErrorCode::NonPositiveFrequency, "shifted Bohr frequencies must be positive");
    }
  }
}

ShiftedAtomPair ShiftedAtomPair::symmetric(const AtomModel& base, double shift) {
  std::vector<double> p;
  std::vector<double> m;
  for (const auto& c : base.channels()) {
    p.push_back(c.bohr_frequency + 0.5 * shift);
    m.push_back(c.bohr_frequency - 0.5 * shift);
  }
  return ShiftedAtomPair(base, std::move(p), std::move(m));
}

namespace {

AtomModel with_frequencies(const AtomModel& base, const std::vector<double>& omega) {
  auto specs = base.specs();
  for (std::size_t s = 0; s < specs.size(); ++s) specs[s].bohr_frequency = omega[s];
  return AtomModel(std::move(specs));
}

}  // namespace

AtomModel ShiftedAtomPair::plus_atom() const { return with_frequencies(base_, plus_); }
AtomModel ShiftedAtomPair::minus_atom() const { return with_frequencies(base_, minus_); }

AtomModel ShiftedAtomPair::mean_atom() const {
  std::vector<double> m(size());
  for (std::size_t s = 0; s < size(); ++s) m[s] = mean(s);
  return with_frequencies(base_, m);
}

double gamma_l_mismatch(const ShiftedAtomPair& pair) {
  return 0.5 * (gamma_spontaneous(pair.plus_atom()) + gamma_spontaneous(pair.minus_atom()));
}

double gamma_bar(const ShiftedAtomPair& pair) { return gamma_spontaneous(pair.mean_atom()); }

namespace {

double extended(const ShiftedAtomPair& pair, double separation, double duration,
                const MismatchOptions& opt) {
  const AtomModel mean = pair.mean_atom();
  const double cutoff = opt.cutoff_factor * mean.max_frequency();
  const double R = light_time(separation);
  double total = 0.0;
  for (std::size_t s = 0; s < pair.size(); ++s) {
    const double wbar = pair.mean(s);
    const double dw = pair.delta(s);
    const double T = kTruncationDecayLengths / wbar + R;
    auto lag = [&](double tau) {
      return std::polar(1.0, wbar * tau) * field_correlation(R, tau, cutoff);
    };
    const auto phi_int = integrate_1d<std::complex<double>>(lag, -T, T, kTwoPi / cutoff, opt.quad);
    const std::complex<double> phi = (kFieldNorm / 3.0) * mean[s].dipole_strength *
                                     std::exp(wbar / cutoff) * phi_int.value;
    auto drift = [&](double tm) { return std::polar(1.0, -dw * tm); };
    const double scale = dw != 0.0 ? std::min(duration, kTwoPi / std::abs(dw)) : duration;
    const auto window = integrate_1d<std::complex<double>>(drift, 0.0, duration, scale, opt.quad);
    total -= (phi * window.value / duration).real();
  }
  return total;
}

double finite_limits(const ShiftedAtomPair& pair, double separation, double duration,
                     const MismatchOptions&) {
  std::vector<ChannelWindow> windows;
  for (std::size_t s = 0; s < pair.size(); ++s) {
    const double wbar = pair.mean(s);
    windows.push_back({wbar, 0.5 * wbar + 0.5 * std::abs(pair.delta(s))});
  }
  auto grid = std::make_shared<const ModeGrid>(
      ModeGrid::for_windows(std::move(windows), duration, 0.5 * separation));
  const Vec3 half{0.0, 0.0, 0.5 * separation};
  const auto plus = perturb_env_state(pair.plus_atom(), half, duration, grid, "+");
  const auto minus = perturb_env_state(pair.minus_atom(), Vec3{} - half, duration, grid, "-");
  return overlap_rate(plus, minus);
}

}  // namespace

double gamma_nl_mismatch(const ShiftedAtomPair& pair, double separation, double duration,
                         const MismatchOptions& options) {
  if (separation < 0.0) fail(ErrorCode::NegativeSeparation, "separation must be >= 0");
  if (!(duration > 0.0)) fail(ErrorCode::InvalidArgument, "duration must be positive");
  if (!(options.cutoff_factor > 1.0)) {
    fail(ErrorCode::InvalidCutoff, "cutoff_factor must exceed 1");
  }
  return options.mode == MismatchMode::Extended ? extended(pair, separation, duration, options)
                                                : finite_limits(pair, separation, duration, options);
}

std::vector<MismatchRow> scan_mismatch(const ShiftedAtomPair& pair, double separation,
                                       const std::vector<double>& durations,
                                       const MismatchOptions& options) {
  const double gbar = gamma_bar(pair);
  std::vector<MismatchRow> rows;
  for (double dt : durations) {
    const double g = gamma_nl_mismatch(pair, separation, dt, options);
    rows.push_back({pair.delta(0) * dt, dt, g, gbar > 0.0 ? g / gbar : 0.0});
  }
  return rows;
}

std::vector<MismatchRow> scan_mismatch_products(const AtomModel& base, double separation,
                                                double duration,
                                                const std::vector<double>& d_omega_dt,
                                                const MismatchOptions& options) {
  if (!(duration > 0.0)) fail(ErrorCode::InvalidArgument, "duration must be positive");
  std::vector<MismatchRow> rows;
  for (double x : d_omega_dt) {
    const ShiftedAtomPair pair = ShiftedAtomPair::symmetric(base, x / duration);
    const double gbar = gamma_bar(pair);
    const double g = gamma_nl_mismatch(pair, separation, duration, options);
    rows.push_back({x, duration, g, gbar > 0.0 ? g / gbar : 0.0});
  }
  return rows;
}

void write_mismatch_csv(std::ostream& os, const std::vector<MismatchRow>& rows) {
  write_csv_header(os, {"d_omega_dt", "ratio"});
  for (const auto& r : rows) write_csv_row(os, {r.d_omega_dt, r.ratio});
}

}  // namespace decoh
