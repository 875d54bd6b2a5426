#pragma once

// First-order perturbed field states on a discretized photon-mode grid. The
// mode continuum is expanded in spherical waves around the trap center, so a
// state is a table of amplitudes over (channel, omega node, l, m); rates
// follow from norms and overlaps.

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "decoh/types.hpp"

namespace decoh {

struct ChannelWindow {
  double center = 1.0;      // Bohr frequency the window is built around
  double half_width = 0.5;  // the grid spans center +- half_width (clipped at 0)
};

class ModeGrid {
 public:
  struct Channel {
    ChannelWindow window;
    std::vector<double> nodes;
    std::vector<double> weights;
  };

  /// One window per atom channel, half width max(omega_s / 2, 40 / dt).
  static ModeGrid for_atom(const AtomModel& atom, double duration, double max_radius);
  /// Explicit windows (e.g. shared by two frequency-shifted wells). Each
  /// half width is raised to at least 40 / dt.
  static ModeGrid for_windows(std::vector<ChannelWindow> windows, double duration,
                              double max_radius);

  double duration() const { return duration_; }
  double max_radius() const { return max_radius_; }
  int l_max() const { return l_max_; }
  std::size_t lm_count() const { return static_cast<std::size_t>((l_max_ + 1) * (l_max_ + 1)); }
  const std::vector<Channel>& channels() const { return channels_; }
  std::size_t node_count() const;

  friend bool operator==(const ModeGrid& a, const ModeGrid& b);

 private:
  ModeGrid() = default;
  double duration_ = 0.0;
  double max_radius_ = 0.0;
  int l_max_ = 0;
  std::vector<Channel> channels_;
};

/// Gauss-Legendre panels per Fejer lobe width 2 pi / dt.
inline constexpr int kGridGaussOrder = 8;
/// Side lobes resolved on each side of a resonance, in units of 1/dt.
inline constexpr double kGridMinHalfSpan = 40.0;

class PerturbedEnvState {
 public:
  PerturbedEnvState(std::shared_ptr<const ModeGrid> grid, Vec3 position, std::string well,
                    std::vector<std::complex<double>> amplitudes,
                    std::vector<std::complex<double>> radial_amplitudes);

  const ModeGrid& grid() const { return *grid_; }
  const std::shared_ptr<const ModeGrid>& grid_ptr() const { return grid_; }
  Vec3 position() const { return position_; }
  const std::string& well() const { return well_; }
  double duration() const { return grid_->duration(); }
  /// Flattened [channel][node][lm].
  const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
  /// Spherical-wave-reduced amplitude of one node: -i g(omega) W(omega)
  /// sqrt(4 pi). Its weighted squared modulus sums to the squared norm.
  const std::vector<std::complex<double>>& radial_amplitudes() const { return radial_; }

  double squared_norm() const;

 private:
  std::shared_ptr<const ModeGrid> grid_;
  Vec3 position_;
  std::string well_;
  std::vector<std::complex<double>> amplitudes_;
  std::vector<std::complex<double>> radial_;
};

/// Time window int_0^dt exp(i (omega_s - omega) t) dt.
std::complex<double> time_window(double detuning, double duration);

/// Emission amplitudes of an atom held at `well_position` over [0, dt]. The
/// atom's channels map one to one onto the grid's channel windows.
PerturbedEnvState perturb_env_state(const AtomModel& atom, Vec3 well_position, double duration,
                                    std::shared_ptr<const ModeGrid> grid, std::string well = "",
                                    unsigned threads = 1);

/// ||psi||^2 / dt.
double local_rate_from_norm(const PerturbedEnvState& state);
/// (||psi1||^2 + ||psi2||^2) / (2 dt).
double local_rate_from_norms(const PerturbedEnvState& s1, const PerturbedEnvState& s2);
/// -Re <psi1|psi2> / dt.
double overlap_rate(const PerturbedEnvState& s1, const PerturbedEnvState& s2);
/// ||(psi2 - psi1) / sqrt(2)||^2 / dt.
double total_rate_from_difference(const PerturbedEnvState& s1, const PerturbedEnvState& s2);

std::complex<double> inner_product(const PerturbedEnvState& s1, const PerturbedEnvState& s2);

/// Header omega,re_amp,im_amp,channel,well with the radial amplitudes.
void write_state_csv(std::ostream& os, const std::vector<const PerturbedEnvState*>& states);

/// Real spherical harmonic S_lm at the direction of r (z axis when r = 0).
double real_spherical_harmonic(int l, int m, Vec3 r);

}  // namespace decoh
