#pragma once

// Nonlocal rate over a finite monitoring time when the two wells shift the
// Bohr frequencies differently.

#include <iosfwd>
#include <vector>

#include "decoh/quadrature.hpp"
#include "decoh/types.hpp"

namespace decoh {

class ShiftedAtomPair {
 public:
  /// Per-channel frequencies in the + and - wells; dipole strengths are
  /// taken from `base` for both wells.
  ShiftedAtomPair(AtomModel base, std::vector<double> omega_plus, std::vector<double> omega_minus);

  /// omega_pm = omega_s +- shift / 2 for every channel.
  static ShiftedAtomPair symmetric(const AtomModel& base, double shift);

  const AtomModel& base() const { return base_; }
  std::size_t size() const { return base_.size(); }
  double omega_plus(std::size_t s) const { return plus_[s]; }
  double omega_minus(std::size_t s) const { return minus_[s]; }
  double delta(std::size_t s) const { return plus_[s] - minus_[s]; }
  double mean(std::size_t s) const { return 0.5 * (plus_[s] + minus_[s]); }

  AtomModel plus_atom() const;
  AtomModel minus_atom() const;
  AtomModel mean_atom() const;

 private:
  AtomModel base_;
  std::vector<double> plus_;
  std::vector<double> minus_;
};

/// (Gamma_L^+ + Gamma_L^-) / 2.
double gamma_l_mismatch(const ShiftedAtomPair& pair);

/// Spontaneous rate at the mean frequencies.
double gamma_bar(const ShiftedAtomPair& pair);

enum class MismatchMode {
  /// Lag integral over the whole real line, times the t_m window average.
  Extended,
  /// Exact square [0, dt]^2, from the overlap of the two wells' emission states.
  FiniteLimits,
};

struct MismatchOptions {
  MismatchMode mode = MismatchMode::Extended;
  /// Field cutoff in units of the largest mean frequency (extended mode).
  double cutoff_factor = 20.0;
  QuadratureSpec quad;
};

double gamma_nl_mismatch(const ShiftedAtomPair& pair, double separation, double duration,
                         const MismatchOptions& options = {});

struct MismatchRow {
  double d_omega_dt = 0.0;  // channel 0's shift times dt
  double duration = 0.0;
  double gamma_nonlocal = 0.0;
  double ratio = 0.0;  // gamma_nonlocal / gamma_bar
};

/// Fixed pair, varying monitoring time.
std::vector<MismatchRow> scan_mismatch(const ShiftedAtomPair& pair, double separation,
                                       const std::vector<double>& durations,
                                       const MismatchOptions& options = {});

/// Fixed monitoring time; the symmetric shift of every channel is x / dt for
/// each x in `d_omega_dt`.
std::vector<MismatchRow> scan_mismatch_products(const AtomModel& base, double separation,
                                                double duration,
                                                const std::vector<double>& d_omega_dt,
                                                const MismatchOptions& options = {});

void write_mismatch_csv(std::ostream& os, const std::vector<MismatchRow>& rows);

}  // namespace decoh
