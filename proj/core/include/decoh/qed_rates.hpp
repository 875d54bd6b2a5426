#pragma once

// Excited atom in a double well coupled to the vacuum field: closed-form
// rates, separation scans and the dipole/field kernels for the CTP route.

#include <complex>
#include <iosfwd>
#include <vector>

#include "decoh/ctp_functional.hpp"
#include "decoh/types.hpp"

namespace decoh {

/// gamma = sum_s Gamma_es.
double gamma_spontaneous(const AtomModel& atom);

/// -sum_s Gamma_es sinc(2 pi a / lambda_es), a in units of lambda_0.
double gamma_nl_closed_form(const AtomModel& atom, double separation);

RateReport total_rate(const AtomModel& atom, double separation);

struct SeparationRow {
  double a_over_lambda = 0.0;  // in units of the reference channel wavelength
  double gamma_local = 0.0;
  double gamma_nonlocal = 0.0;
  double gamma_total = 0.0;
  double ratio = 0.0;  // gamma_total / gamma_local, NaN when gamma_local = 0
};

struct SeparationScan {
  double reference_wavelength = 1.0;  // lambda of channel 0, units of lambda_0
  std::vector<SeparationRow> rows;
};

/// Closed-form rates on a grid of a / lambda_ref (lambda_ref is channel 0's
/// wavelength).
SeparationScan scan_separation(const AtomModel& atom, const std::vector<double>& a_over_lambda,
                               unsigned threads = 1);

/// start, start + step, ..., up to stop inclusive (within step/1000).
std::vector<double> linear_grid(double start, double stop, double step);

void write_scan_csv(std::ostream& os, const SeparationScan& scan);
SeparationScan read_scan_csv(std::istream& is);

struct QedKernelOptions {
  /// Exponential frequency cutoff Lambda of the field kernel.
  double cutoff = 20.0;
  /// Multiply each dipole channel by exp(omega_s / Lambda) so that the
  /// resonant rate does not inherit the cutoff's exp(-omega / Lambda).
  bool compensate_cutoff = true;
};

/// F(R, tau) = int_0^inf w^3 sinc(w R) exp(-w / Lambda) exp(-i w tau) dw with
/// R a light travel time.
std::complex<double> field_correlation(double light_distance, double tau, double cutoff);

/// Normalization of the isotropic field kernel: <E_i E_i> = N F / 3.
inline constexpr double kFieldNorm = 1.0 / (4.0 * kPi * kPi);

/// Dipole (q) and vacuum-field (X) kernels. Both are diagonal and isotropic.
KernelPair build_qed_kernels(const AtomModel& atom, const QedKernelOptions& options = {});

}  // namespace decoh
