#include "decoh/overlap_view.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "decoh/csv.hpp"
#include "decoh/error.hpp"
#include "decoh/parallel.hpp"
#include "decoh/quadrature.hpp"

namespace decoh {

namespace {

constexpr double kRelSlack = 1e-12;

double min_half_span(double duration) { return kGridMinHalfSpan / duration; }

void require_same_grid(const PerturbedEnvState& a, const PerturbedEnvState& b) {
  if (a.grid_ptr() != b.grid_ptr() && !(a.grid() == b.grid())) {
    fail(ErrorCode::GridMismatch, "states live on different mode grids");
  }
}

// Per-node reduction over lm, then a compensated sum over nodes in grid order.
template <class NodeFn>
std::complex<double> reduce_nodes(const ModeGrid& g, NodeFn&& node_value) {
  CompensatedComplexSum sum;
  std::size_t k = 0;
  for (const auto& ch : g.channels()) {
    for (std::size_t i = 0; i < ch.nodes.size(); ++i, ++k) sum.add(ch.weights[i] * node_value(k));
  }
  return sum.value();
}

}  // namespace

ModeGrid ModeGrid::for_atom(const AtomModel& atom, double duration, double max_radius) {
  std::vector<ChannelWindow> windows;
  for (const auto& c : atom.channels()) windows.push_back({c.bohr_frequency, 0.5 * c.bohr_frequency});
  return for_windows(std::move(windows), duration, max_radius);
}

ModeGrid ModeGrid::for_windows(std::vector<ChannelWindow> windows, double duration,
                               double max_radius) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    fail(ErrorCode::InvalidArgument, "grid duration must be positive");
  }
  if (!(max_radius >= 0.0)) fail(ErrorCode::InvalidArgument, "max_radius must be >= 0");
  if (windows.empty()) fail(ErrorCode::EmptyChannelList, "grid needs at least one window");
  ModeGrid g;
  g.duration_ = duration;
  g.max_radius_ = max_radius;
  const GaussRule rule = gauss_legendre(kGridGaussOrder);
  const double panel = kTwoPi / duration;
  double top = 0.0;
  for (auto w : windows) {
    if (!(w.center > 0.0)) fail(ErrorCode::NonPositiveFrequency, "window center must be positive");
    w.half_width = std::max(w.half_width, min_half_span(duration));
    const double lo = std::max(0.0, w.center - w.half_width);
    const double hi = w.center + w.half_width;
    const auto n = static_cast<std::size_t>(std::ceil((hi - lo) / panel - 1e-9));
    const double h = (hi - lo) / static_cast<double>(n);
    Channel ch{w, {}, {}};
    ch.nodes.reserve(n * rule.nodes.size());
    for (std::size_t p = 0; p < n; ++p) {
      const double mid = lo + h * (static_cast<double>(p) + 0.5);
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        ch.nodes.push_back(mid + 0.5 * h * rule.nodes[k]);
        ch.weights.push_back(0.5 * h * rule.weights[k]);
      }
    }
    top = std::max(top, hi);
    g.channels_.push_back(std::move(ch));
  }
  g.l_max_ = static_cast<int>(std::ceil(top * light_time(max_radius))) + 20;
  return g;
}

std::size_t ModeGrid::node_count() const {
  std::size_t n = 0;
  for (const auto& c : channels_) n += c.nodes.size();
  return n;
}

bool operator==(const ModeGrid& a, const ModeGrid& b) {
  if (a.duration_ != b.duration_ || a.l_max_ != b.l_max_ ||
      a.channels_.size() != b.channels_.size()) {
    return false;
  }
  for (std::size_t c = 0; c < a.channels_.size(); ++c) {
    if (a.channels_[c].nodes != b.channels_[c].nodes ||
        a.channels_[c].weights != b.channels_[c].weights) {
      return false;
    }
  }
  return true;
}

PerturbedEnvState::PerturbedEnvState(std::shared_ptr<const ModeGrid> grid, Vec3 position,
                                     std::string well,
                                     std::vector<std::complex<double>> amplitudes,
                                     std::vector<std::complex<double>> radial_amplitudes)
    : grid_(std::move(grid)),
      position_(position),
      well_(std::move(well)),
      amplitudes_(std::move(amplitudes)),
      radial_(std::move(radial_amplitudes)) {
  if (!grid_) fail(ErrorCode::InvalidArgument, "state needs a grid");
  if (amplitudes_.size() != grid_->node_count() * grid_->lm_count() ||
      radial_.size() != grid_->node_count()) {
    fail(ErrorCode::GridMismatch, "amplitude table does not match the grid");
  }
}

double PerturbedEnvState::squared_norm() const {
  const std::size_t lm = grid_->lm_count();
  const auto& a = amplitudes_;
  return reduce_nodes(*grid_, [&](std::size_t k) {
           double s = 0.0;
           for (std::size_t j = k * lm; j < (k + 1) * lm; ++j) {
             s += a[j].real() * a[j].real() + a[j].imag() * a[j].imag();
           }
           return std::complex<double>(s, 0.0);
         })
      .real();
}

std::complex<double> time_window(double detuning, double duration) {
  const double half = 0.5 * detuning * duration;
  return duration * std::polar(1.0, half) * sinc(half);
}

double real_spherical_harmonic(int l, int m, Vec3 r) {
  const double n = r.norm();
  const double theta = n > 0.0 ? std::acos(std::clamp(r.z / n, -1.0, 1.0)) : 0.0;
  const double phi = n > 0.0 ? std::atan2(r.y, r.x) : 0.0;
  const auto ul = static_cast<unsigned>(l);
  const auto um = static_cast<unsigned>(std::abs(m));
  if (m == 0) return std::sph_legendre(ul, 0, theta);
  const double y = std::sqrt(2.0) * std::sph_legendre(ul, um, theta);
  return m > 0 ? y * std::cos(m * phi) : y * std::sin(-m * phi);
}

PerturbedEnvState perturb_env_state(const AtomModel& atom, Vec3 well_position, double duration,
                                    std::shared_ptr<const ModeGrid> grid, std::string well,
                                    unsigned threads) {
  if (!grid) fail(ErrorCode::InvalidArgument, "perturb_env_state needs a grid");
  const ModeGrid& g = *grid;
  if (duration != g.duration()) {
    fail(ErrorCode::GridMismatch, "grid was built for a different duration");
  }
  if (g.channels().size() != atom.size()) {
    fail(ErrorCode::GridMismatch, "grid and atom have different channel counts");
  }
  const double radius = well_position.norm();
  if (radius > g.max_radius() * (1.0 + kRelSlack)) {
    fail(ErrorCode::GridTooCoarse, "well lies outside the grid's partial-wave radius");
  }
  const double span = min_half_span(duration);
  const double max_spacing = kPi / (4.0 * duration);
  for (std::size_t s = 0; s < atom.size(); ++s) {
    const auto& ch = g.channels()[s];
    const double w = atom[s].bohr_frequency;
    const double lo = ch.nodes.empty() ? 0.0 : ch.window.center - ch.window.half_width;
    const double hi = ch.window.center + ch.window.half_width;
    const double spacing = (hi - std::max(lo, 0.0)) / static_cast<double>(ch.nodes.size());
    if (ch.nodes.empty() || std::max(lo, 0.0) > std::max(0.0, w - span) + kRelSlack * w ||
        hi < w + span - kRelSlack * w || spacing > max_spacing * (1.0 + 1e-9)) {
      fail(ErrorCode::GridTooCoarse,
           "grid does not resolve the window of channel '" + atom[s].label + "'");
    }
  }

  const std::size_t lm = g.lm_count();
  const int L = g.l_max();
  std::vector<double> harmonics(lm);
  for (int l = 0; l <= L; ++l) {
    for (int m = -l; m <= l; ++m) {
      harmonics[static_cast<std::size_t>(l * l + l + m)] = real_spherical_harmonic(l, m, well_position);
    }
  }
  static const std::complex<double> kMinusIPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};

  const std::size_t nodes = g.node_count();
  std::vector<std::complex<double>> amp(nodes * lm);
  std::vector<std::complex<double>> radial(nodes);
  std::vector<std::pair<std::size_t, std::size_t>> index(nodes);  // (channel, node)
  for (std::size_t s = 0, k = 0; s < g.channels().size(); ++s) {
    for (std::size_t i = 0; i < g.channels()[s].nodes.size(); ++i) index[k++] = {s, i};
  }
  const double rl = light_time(radius);
  parallel_for(nodes, threads, [&](std::size_t k) {
    const auto [s, i] = index[k];
    const double omega = g.channels()[s].nodes[i];
    const double d2 = atom[s].dipole_strength;
    const double coupling = std::sqrt(d2 * omega * omega * omega / (48.0 * kPi * kPi * kPi));
    const std::complex<double> base =
        std::complex<double>(0.0, -coupling) * time_window(atom[s].bohr_frequency - omega, duration);
    radial[k] = base * std::sqrt(4.0 * kPi);
    for (int l = 0; l <= L; ++l) {
      const double jl = std::sph_bessel(static_cast<unsigned>(l), omega * rl);
      const std::complex<double> c = base * (4.0 * kPi * jl) * kMinusIPow[l % 4];
      for (int m = -l; m <= l; ++m) {
        const auto j = static_cast<std::size_t>(l * l + l + m);
        amp[k * lm + j] = c * harmonics[j];
      }
    }
  });
  return PerturbedEnvState(std::move(grid), well_position, std::move(well), std::move(amp),
                           std::move(radial));
}

std::complex<double> inner_product(const PerturbedEnvState& s1, const PerturbedEnvState& s2) {
  require_same_grid(s1, s2);
  const std::size_t lm = s1.grid().lm_count();
  const auto& a = s1.amplitudes();
  const auto& b = s2.amplitudes();
  return reduce_nodes(s1.grid(), [&](std::size_t k) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = k * lm; j < (k + 1) * lm; ++j) {
      re += a[j].real() * b[j].real() + a[j].imag() * b[j].imag();
      im += a[j].real() * b[j].imag() - a[j].imag() * b[j].real();
    }
    return std::complex<double>(re, im);
  });
}

double local_rate_from_norm(const PerturbedEnvState& state) {
  return state.squared_norm() / state.duration();
}

double local_rate_from_norms(const PerturbedEnvState& s1, const PerturbedEnvState& s2) {
  require_same_grid(s1, s2);
  return 0.5 * (s1.squared_norm() + s2.squared_norm()) / s1.duration();
}

double overlap_rate(const PerturbedEnvState& s1, const PerturbedEnvState& s2) {
  return -inner_product(s1, s2).real() / s1.duration();
}

double total_rate_from_difference(const PerturbedEnvState& s1, const PerturbedEnvState& s2) {
  require_same_grid(s1, s2);
  const std::size_t lm = s1.grid().lm_count();
  const auto& a = s1.amplitudes();
  const auto& b = s2.amplitudes();
  const double n2 = reduce_nodes(s1.grid(), [&](std::size_t k) {
                      double s = 0.0;
                      for (std::size_t j = k * lm; j < (k + 1) * lm; ++j) {
                        const double re = b[j].real() - a[j].real();
                        const double im = b[j].imag() - a[j].imag();
                        s += re * re + im * im;
                      }
                      return std::complex<double>(s, 0.0);
                    }).real();
  return 0.5 * n2 / s1.duration();
}

void write_state_csv(std::ostream& os, const std::vector<const PerturbedEnvState*>& states) {
  os << "omega,re_amp,im_amp,channel,well\n";
  for (std::size_t w = 0; w < states.size(); ++w) {
    const PerturbedEnvState& st = *states[w];
    const std::string label = st.well().empty() ? std::to_string(w) : st.well();
    std::size_t k = 0;
    for (std::size_t c = 0; c < st.grid().channels().size(); ++c) {
      for (double omega : st.grid().channels()[c].nodes) {
        const auto a = st.radial_amplitudes()[k++];
        os << format_number(omega) << ',' << format_number(a.real()) << ','
           << format_number(a.imag()) << ',' << c << ',' << label << '\n';
      }
    }
  }
}

}  // namespace decoh
