#pragma once

// Panel-wise Gauss-Legendre integration with global refinement, the rotated
// (t_m, tau) double integral over [0, T]^2, the stationary linear-tail fit and
// the tan(x) = x root finder.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "decoh/error.hpp"
#include "decoh/parallel.hpp"

namespace decoh {

struct QuadratureSpec {
  double panel_factor = 8.0;  // panels per shortest scale
  int gauss_order = 8;
  double rel_tolerance = 1e-6;
  int max_refinements = 6;
  unsigned threads = 1;  // read from JSON when present, never written

  void validate() const;
};

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

GaussRule gauss_legendre(int order);

/// Decay lengths kept when an infinite lag range is truncated.
inline constexpr double kTruncationDecayLengths = 40.0;

template <class T>
struct Integral {
  T value{};
  double error_estimate = 0.0;
  std::size_t panels = 0;
  int refinements = 0;
  // Rotated/stationary integrals only.
  double tau_cutoff = 0.0;
  double truncation_bound = 0.0;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(std::complex<double> z) { return std::abs(z); }

template <class T>
struct LevelSum {
  T value{};
  double l1 = 0.0;
};

// Runs level(0), level(1), ... until successive values agree. Each level
// halves every panel of the previous one.
template <class T, class Level>
Integral<T> refine(Level&& level, const QuadratureSpec& spec, std::size_t base_panels,
                   const char* what) {
  LevelSum<T> prev = level(0);
  for (int r = 1; r <= spec.max_refinements; ++r) {
    const LevelSum<T> cur = level(r);
    const double diff = magnitude(cur.value - prev.value);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * cur.l1;
    if (diff <= spec.rel_tolerance * magnitude(cur.value) || diff <= floor) {
      Integral<T> out;
      out.value = cur.value;
      out.error_estimate = std::max(diff, floor);
      out.panels = base_panels << r;
      out.refinements = r;
      return out;
    }
    prev = cur;
  }
  fail(ErrorCode::QuadratureNotConverged,
       std::string(what) + ": no convergence after " + std::to_string(spec.max_refinements) +
           " refinements");
}

// Sum over `panels` equal panels of [a, b] of the Gauss rule applied to f.
template <class T, class F>
LevelSum<T> panel_sum(F& f, double a, double b, std::size_t panels, const GaussRule& rule,
                      unsigned threads) {
  std::vector<T> part(panels);
  std::vector<double> part_l1(panels);
  const double h = (b - a) / static_cast<double>(panels);
  parallel_for(panels, threads, [&](std::size_t p) {
    const double lo = a + h * static_cast<double>(p);
    const double mid = lo + 0.5 * h;
    T s{};
    double s1 = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const T v = f(mid + 0.5 * h * rule.nodes[k]);
      s += rule.weights[k] * v;
      s1 += rule.weights[k] * magnitude(v);
    }
    part[p] = 0.5 * h * s;
    part_l1[p] = 0.5 * h * s1;
  });
  return {pairwise_sum<T>(part), pairwise_sum<double>(part_l1)};
}

inline std::size_t panel_count(double length, double scale, double factor) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(length * factor / scale - 1e-9)));
}

}  // namespace detail

/// Integrates f over [a, b]. The initial panel width is
/// oscillation_scale / panel_factor; every refinement halves all panels.
template <class T = double, class F>
Integral<T> integrate_1d(F&& f, double a, double b, double oscillation_scale,
                         const QuadratureSpec& spec) {
  spec.validate();
  if (!(b >= a)) fail(ErrorCode::InvalidArgument, "integrate_1d: need b >= a");
  if (!(oscillation_scale > 0.0)) {
    fail(ErrorCode::InvalidArgument, "integrate_1d: oscillation_scale must be positive");
  }
  if (a == b) return {};
  const GaussRule rule = gauss_legendre(spec.gauss_order);
  const std::size_t n0 = detail::panel_count(b - a, oscillation_scale, spec.panel_factor);
  auto level = [&](int r) {
    return detail::panel_sum<T>(f, a, b, n0 << r, rule, spec.threads);
  };
  return detail::refine<T>(level, spec, n0, "integrate_1d");
}

/// Lag range kept for an integrand that decays on `memory_scale` and may be
/// delayed by a propagation time: 40 decay lengths plus the delay, capped at
/// the window length.
inline double tau_cutoff(double duration, double memory_scale, double propagation_delay) {
  return std::min(duration, kTruncationDecayLengths * memory_scale + propagation_delay);
}

/// intint_{[0,T]^2} g(t - t') dt dt' = int_{-T}^{T} (T - |tau|) g(tau) dtau, for
/// integrands that depend on the lag only. The lag range is truncated at
/// tau_cutoff(); panels are split at tau = 0.
template <class T = double, class G>
Integral<T> integrate_stationary_square(G&& g, double duration, double memory_scale,
                                        double oscillation_scale, const QuadratureSpec& spec,
                                        double propagation_delay = 0.0) {
  if (!(duration > 0.0)) fail(ErrorCode::InvalidArgument, "duration must be positive");
  if (!(memory_scale > 0.0)) fail(ErrorCode::InvalidArgument, "memory_scale must be positive");
  const double cut = tau_cutoff(duration, memory_scale, propagation_delay);
  auto folded = [&](double tau) { return (duration - tau) * (g(tau) + g(-tau)); };
  Integral<T> out =
      integrate_1d<T>(folded, 0.0, cut, std::min(memory_scale, oscillation_scale), spec);
  out.tau_cutoff = cut;
  out.truncation_bound = cut < duration ? std::exp(-kTruncationDecayLengths) : 0.0;
  return out;
}

struct RotatedOptions {
  /// Scale on which the integrand varies along t_m (path motion, slow
  /// phases). Infinite means one panel per lag node.
  double drift_scale = std::numeric_limits<double>::infinity();
  double propagation_delay = 0.0;
};

/// intint_{[0,T]^2} f dt dt' in rotated variables t_m = (t+t')/2, tau = t - t',
/// with f called as f(t_m, tau). Outer lag panels are sized
/// min(memory_scale, oscillation_scale) / panel_factor and split at tau = 0;
/// the lag range is truncated at tau_cutoff().
template <class T = double, class F>
Integral<T> integrate_2d_rotated(F&& f, double duration, double memory_scale,
                                 double oscillation_scale, const QuadratureSpec& spec,
                                 RotatedOptions options = {}) {
  spec.validate();
  if (!(duration > 0.0)) fail(ErrorCode::InvalidArgument, "duration must be positive");
  if (!(memory_scale > 0.0) || !(oscillation_scale > 0.0)) {
    fail(ErrorCode::InvalidArgument, "integrate_2d_rotated: scales must be positive");
  }
  const GaussRule rule = gauss_legendre(spec.gauss_order);
  const double cut = tau_cutoff(duration, memory_scale, options.propagation_delay);
  const std::size_t n0 =
      detail::panel_count(cut, std::min(memory_scale, oscillation_scale), spec.panel_factor);
  const double drift = std::min(options.drift_scale, duration);

  auto level = [&](int r) {
    const std::size_t n = n0 << r;
    const std::size_t inner_mult = std::size_t{1} << r;
    const double h = cut / static_cast<double>(n);
    // Panels 0..n-1 cover [0, cut], n..2n-1 cover [-cut, 0].
    std::vector<T> part(2 * n);
    std::vector<double> part_l1(2 * n);
    parallel_for(2 * n, spec.threads, [&](std::size_t p) {
      const double sign = p < n ? 1.0 : -1.0;
      const double lo = h * static_cast<double>(p % n);
      T s{};
      double s1 = 0.0;
      for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double a = lo + 0.5 * h * (1.0 + rule.nodes[k]);
        const double tau = sign * a;
        const double m_lo = 0.5 * a;
        const double m_hi = duration - 0.5 * a;
        const double len = m_hi - m_lo;
        if (len <= 0.0) continue;
        const std::size_t nm =
            detail::panel_count(len, drift, spec.panel_factor) * inner_mult;
        const double hm = len / static_cast<double>(nm);
        T inner{};
        double inner1 = 0.0;
        for (std::size_t q = 0; q < nm; ++q) {
          const double mid = m_lo + hm * (static_cast<double>(q) + 0.5);
          for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            const T v = f(mid + 0.5 * hm * rule.nodes[j], tau);
            inner += rule.weights[j] * v;
            inner1 += rule.weights[j] * detail::magnitude(v);
          }
        }
        s += rule.weights[k] * (0.5 * hm) * inner;
        s1 += rule.weights[k] * (0.5 * hm) * inner1;
      }
      part[p] = 0.5 * h * s;
      part_l1[p] = 0.5 * h * s1;
    });
    return detail::LevelSum<T>{pairwise_sum<T>(part), pairwise_sum<double>(part_l1)};
  };
  Integral<T> out = detail::refine<T>(level, spec, 2 * n0, "integrate_2d_rotated");
  out.tau_cutoff = cut;
  out.truncation_bound = cut < duration ? std::exp(-kTruncationDecayLengths) : 0.0;
  return out;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Max |y - fit| over the tail, relative to max |y| over the tail.
  double residual = 0.0;
  std::size_t points_used = 0;
};

/// Least-squares line through the last ceil(tail_fraction * n) points.
LinearFit fit_linear_tail(std::span<const double> xs, std::span<const double> ys,
                          double tail_fraction = 0.5);

/// Root of tan x = x inside (lo, hi), by bisection on x cos x - sin x.
double find_root_tan_x_eq_x(double lo, double hi);

}  // namespace decoh
