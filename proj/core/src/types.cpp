#include "decoh/types.hpp"

#include <algorithm>
#include <limits>

#include "decoh/error.hpp"

namespace decoh {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

UnitSystem::UnitSystem(double reference_frequency) : omega0_(reference_frequency) {
  if (!(reference_frequency > 0.0) || !std::isfinite(reference_frequency)) {
    fail(ErrorCode::NonPositiveFrequency, "reference frequency must be positive");
  }
}

double partial_rate(double bohr_frequency, double dipole_strength) {
  return bohr_frequency * bohr_frequency * bohr_frequency * dipole_strength / (6.0 * kPi);
}

AtomModel::AtomModel(std::vector<DecayChannel> channels) {
  if (channels.empty()) fail(ErrorCode::EmptyChannelList, "atom needs at least one decay channel");
  channels_.reserve(channels.size());
  for (auto& c : channels) {
    if (!(c.bohr_frequency > 0.0) || !std::isfinite(c.bohr_frequency)) {
      fail(ErrorCode::NonPositiveFrequency,
           "channel '" + c.label + "' has non-positive Bohr frequency");
    }
    if (!(c.dipole_strength >= 0.0) || !std::isfinite(c.dipole_strength)) {
      fail(ErrorCode::NegativeDipoleStrength,
           "channel '" + c.label + "' has negative dipole strength");
    }
    channels_.push_back({std::move(c.label), c.bohr_frequency, c.dipole_strength,
                         partial_rate(c.bohr_frequency, c.dipole_strength),
                         1.0 / c.bohr_frequency});
  }
}

double AtomModel::min_frequency() const {
  return std::ranges::min(channels_, {}, &Channel::bohr_frequency).bohr_frequency;
}

double AtomModel::max_frequency() const {
  return std::ranges::max(channels_, {}, &Channel::bohr_frequency).bohr_frequency;
}

std::vector<DecayChannel> AtomModel::specs() const {
  std::vector<DecayChannel> out;
  out.reserve(channels_.size());
  for (const auto& c : channels_) out.push_back({c.label, c.bohr_frequency, c.dipole_strength});
  return out;
}

AtomModel validate_atom(std::vector<DecayChannel> channels) { return AtomModel(std::move(channels)); }

AtomModel two_level_atom(double bohr_frequency, double dipole_strength) {
  return AtomModel({{"g", bohr_frequency, dipole_strength}});
}

Path Path::constant(Vec3 position) { return Path(position); }

Path Path::sampled(std::vector<double> times, std::vector<Vec3> positions) {
  if (times.size() < 2 || times.size() != positions.size()) {
    fail(ErrorCode::InvalidPath, "sampled path needs >= 2 matching times and positions");
  }
  if (times.front() != 0.0) fail(ErrorCode::InvalidPath, "sampled path must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      fail(ErrorCode::InvalidPath, "sample times must be strictly increasing");
    }
  }
  return Path(Samples{std::move(times), std::move(positions)});
}

Vec3 Path::at(double t) const {
  if (const auto* p = std::get_if<Vec3>(&data_)) return *p;
  const auto& s = std::get<Samples>(data_);
  if (t <= s.times.front()) return s.positions.front();
  if (t >= s.times.back()) return s.positions.back();
  const auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - s.times.begin());
  const std::size_t lo = hi - 1;
  const double w = (t - s.times[lo]) / (s.times[hi] - s.times[lo]);
  if (w == 0.0) return s.positions[lo];
  return s.positions[lo] + w * (s.positions[hi] - s.positions[lo]);
}

double Path::end_time() const {
  if (is_constant()) return std::numeric_limits<double>::infinity();
  return std::get<Samples>(data_).times.back();
}

double Path::min_spacing() const {
  if (is_constant()) return std::numeric_limits<double>::infinity();
  const auto& t = std::get<Samples>(data_).times;
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < t.size(); ++i) h = std::min(h, t[i] - t[i - 1]);
  return h;
}

std::vector<Vec3> Path::nodes() const {
  if (const auto* p = std::get_if<Vec3>(&data_)) return {*p};
  return std::get<Samples>(data_).positions;
}

std::vector<double> Path::times() const {
  if (is_constant()) return {0.0};
  return std::get<Samples>(data_).times;
}

PathPair::PathPair(Path first_path, Path second_path, double dt)
    : first(std::move(first_path)), second(std::move(second_path)), duration(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidArgument, "duration must be positive");
  // Sampled paths may extend past the window; they are restricted to [0, dt].
  if (first.end_time() < dt || second.end_time() < dt) {
    fail(ErrorCode::InvalidPath, "sampled path does not cover [0, duration]");
  }
}

double PathPair::max_extent() const {
  std::vector<Vec3> all = first.nodes();
  const auto b = second.nodes();
  all.insert(all.end(), b.begin(), b.end());
  double d = 0.0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) d = std::max(d, distance(all[i], all[j]));
  }
  return d;
}

PathPair double_well_pair(double separation, double duration, Vec3 axis) {
  if (separation < 0.0) fail(ErrorCode::NegativeSeparation, "well separation must be >= 0");
  const double n = axis.norm();
  if (!(n > 0.0)) fail(ErrorCode::InvalidArgument, "well axis must be non-zero");
  const Vec3 half = (0.5 * separation / n) * axis;
  return PathPair(Path::constant(half), Path::constant(Vec3{} - half), duration);
}

RateReport::RateReport(double gamma_local, double gamma_nonlocal, RateDiagnostics diagnostics)
    : gamma_local_(gamma_local),
      gamma_nonlocal_(gamma_nonlocal),
      gamma_total_(gamma_local + gamma_nonlocal),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace decoh
