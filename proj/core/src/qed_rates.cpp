#include "decoh/qed_rates.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include "decoh/csv.hpp"
#include "decoh/error.hpp"
#include "decoh/parallel.hpp"

namespace decoh {

double gamma_spontaneous(const AtomModel& atom) {
  double g = 0.0;
  for (const auto& c : atom.channels()) g += c.partial_rate;
  return g;
}

double gamma_nl_closed_form(const AtomModel& atom, double separation) {
  if (separation < 0.0) fail(ErrorCode::NegativeSeparation, "separation must be >= 0");
  double g = 0.0;
  for (const auto& c : atom.channels()) {
    g += c.partial_rate * sinc(light_time(separation) * c.bohr_frequency);
  }
  return -g;
}

RateReport total_rate(const AtomModel& atom, double separation) {
  return RateReport(gamma_spontaneous(atom), gamma_nl_closed_form(atom, separation));
}

SeparationScan scan_separation(const AtomModel& atom, const std::vector<double>& a_over_lambda,
                               unsigned threads) {
  if (a_over_lambda.empty()) fail(ErrorCode::InvalidArgument, "separation grid is empty");
  for (double a : a_over_lambda) {
    if (!(a >= 0.0)) fail(ErrorCode::NegativeSeparation, "separation grid has negative entries");
  }
  SeparationScan scan;
  scan.reference_wavelength = atom[0].wavelength;
  scan.rows.resize(a_over_lambda.size());
  parallel_for(a_over_lambda.size(), threads, [&](std::size_t i) {
    const RateReport r = total_rate(atom, a_over_lambda[i] * scan.reference_wavelength);
    SeparationRow& row = scan.rows[i];
    row.a_over_lambda = a_over_lambda[i];
    row.gamma_local = r.gamma_local();
    row.gamma_nonlocal = r.gamma_nonlocal();
    row.gamma_total = r.gamma_total();
    row.ratio = r.gamma_local() > 0.0 ? r.gamma_total() / r.gamma_local()
                                      : std::numeric_limits<double>::quiet_NaN();
  });
  return scan;
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) {
    fail(ErrorCode::InvalidArgument, "grid needs step > 0 and stop >= start");
  }
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-3)) + 1;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = start + static_cast<double>(i) * step;
  return out;
}

void write_scan_csv(std::ostream& os, const SeparationScan& scan) {
  write_csv_header(os, {"a_over_lambda", "gamma_L", "gamma_NL", "gamma_total", "ratio"});
  for (const auto& r : scan.rows) {
    write_csv_row(os, {r.a_over_lambda, r.gamma_local, r.gamma_nonlocal, r.gamma_total, r.ratio});
  }
}

SeparationScan read_scan_csv(std::istream& is) {
  const CsvTable t = read_csv(is);
  const std::size_t ia = column_index(t, "a_over_lambda");
  const std::size_t il = column_index(t, "gamma_L");
  const std::size_t inl = column_index(t, "gamma_NL");
  const std::size_t it = column_index(t, "gamma_total");
  const std::size_t ir = column_index(t, "ratio");
  SeparationScan scan;
  for (const auto& row : t.rows) {
    scan.rows.push_back({parse_number(row[ia]), parse_number(row[il]), parse_number(row[inl]),
                         parse_number(row[it]), parse_number(row[ir])});
  }
  return scan;
}

std::complex<double> field_correlation(double light_distance, double tau, double cutoff) {
  const double R = light_distance;
  const double eps = 1.0 / cutoff;
  // s = eps + i tau; s^2 + R^2 written to avoid cancellation near tau = R.
  const std::complex<double> den((R - tau) * (R + tau) + eps * eps, 2.0 * eps * tau);
  const std::complex<double> num(3.0 * (eps * eps - tau * tau) - R * R, 6.0 * eps * tau);
  return 2.0 * num / (den * den * den);
}

KernelPair build_qed_kernels(const AtomModel& atom, const QedKernelOptions& options) {
  const double cutoff = options.cutoff;
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    fail(ErrorCode::InvalidCutoff, "frequency cutoff must be positive and finite");
  }
  if (cutoff <= atom.max_frequency()) {
    fail(ErrorCode::InvalidCutoff, "frequency cutoff must exceed every Bohr frequency");
  }
  struct Line {
    double omega;
    double weight;
  };
  std::vector<Line> lines;
  for (const auto& c : atom.channels()) {
    const double comp = options.compensate_cutoff ? std::exp(c.bohr_frequency / cutoff) : 1.0;
    lines.push_back({c.bohr_frequency, c.dipole_strength * comp / 3.0});
  }

  KernelPair k;
  k.q.dim = 3;
  k.q.max_frequency = atom.max_frequency();
  k.q.eval = [lines](const SpaceTimePoint& x, const SpaceTimePoint& xp) {
    const double tau = x.t - xp.t;
    double sym = 0.0;
    double anti = 0.0;
    for (const auto& l : lines) {
      sym += l.weight * std::cos(l.omega * tau);
      anti += 2.0 * l.weight * std::sin(l.omega * tau);
    }
    KernelSample s;
    for (int i = 0; i < 3; ++i) {
      s.s(i, i) = sym;
      s.a(i, i) = anti;
    }
    return s;
  };

  k.X.dim = 3;
  k.X.memory_time = 1.0 / atom.min_frequency();
  k.X.max_frequency = cutoff;
  k.X.position_dependent = true;
  k.X.eval = [cutoff](const SpaceTimePoint& x, const SpaceTimePoint& xp) {
    const std::complex<double> F =
        field_correlation(light_time(distance(x.r, xp.r)), x.t - xp.t, cutoff);
    KernelSample s;
    for (int i = 0; i < 3; ++i) {
      s.s(i, i) = kFieldNorm * F.real() / 3.0;
      s.a(i, i) = 2.0 * kFieldNorm * F.imag() / 3.0;
    }
    return s;
  };
  return k;
}

}  // namespace decoh
