#pragma once

// Second-order decoherence functionals for a linear coupling V = q . X and
// stationary rates extracted from their growth with the monitoring time.

#include <array>
#include <functional>
#include <limits>
#include <vector>

#include "decoh/quadrature.hpp"
#include "decoh/types.hpp"

namespace decoh {

struct SpaceTimePoint {
  double t = 0.0;
  Vec3 r;
};

/// Two-point correlation of a vector operator A at (x, x'), components
/// (i, j) stored row-major in a 3x3 block.
///   sym[i][j]     = (1/2) <{A_i(x), A_j(x')}>
///   antisym[i][j] = <[A_i(x), A_j(x')]> / i
struct KernelSample {
  std::array<double, 9> sym{};
  std::array<double, 9> antisym{};

  double& s(int i, int j) { return sym[static_cast<std::size_t>(3 * i + j)]; }
  double& a(int i, int j) { return antisym[static_cast<std::size_t>(3 * i + j)]; }
  double s(int i, int j) const { return sym[static_cast<std::size_t>(3 * i + j)]; }
  double a(int i, int j) const { return antisym[static_cast<std::size_t>(3 * i + j)]; }
};

struct CorrelationKernel {
  int dim = 1;
  std::function<KernelSample(const SpaceTimePoint&, const SpaceTimePoint&)> eval;
  /// Decay time of the correlation; +inf for undamped kernels.
  double memory_time = std::numeric_limits<double>::infinity();
  /// Fastest angular frequency present (0 for non-oscillating kernels).
  double max_frequency = 0.0;
  /// Depends on (t, t') only through t - t'.
  bool stationary = true;
  bool position_dependent = false;

  void validate() const;
};

/// G(x, x') = sum_ij [ (1/2) sym_q sym_X - (1/4) Theta(t - t') antisym_q antisym_X ]
/// with Theta(0) = 1/2.
double eval_G(const CorrelationKernel& kq, const CorrelationKernel& kX, const SpaceTimePoint& x,
              const SpaceTimePoint& xp);

struct FunctionalValue {
  double s_local_dec = 0.0;
  double s_nonlocal_dec = 0.0;
  double duration = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
  double tau_cutoff = 0.0;
  double truncation_bound = 0.0;
};

/// s_local    =  intint [G(r1(t), r1(t')) + G(r2(t'), r2(t))]
/// s_nonlocal = -intint [G(r1(t), r2(t')) + G(r2(t'), r1(t))]
/// over [0, T]^2. Constant paths with stationary kernels reduce to a single
/// lag integral.
FunctionalValue eval_functionals(const CorrelationKernel& kq, const CorrelationKernel& kX,
                                 const PathPair& pair, const QuadratureSpec& quad = {});

struct StationaryOptions {
  QuadratureSpec quad;
  double tail_fraction = 0.5;
  double residual_tolerance = 1e-3;
};

/// n evenly spaced monitoring times from dt_max/2 to dt_max.
std::vector<double> default_dt_schedule(double dt_max, std::size_t n = 8);

using PairFactory = std::function<PathPair(double)>;

/// Slopes of s_local and s_nonlocal over the tail of the schedule. Throws
/// NonLinearGrowth if either fit residual exceeds the tolerance.
RateReport stationary_rates(const CorrelationKernel& kq, const CorrelationKernel& kX,
                            const PairFactory& pair_factory, const std::vector<double>& schedule,
                            const StationaryOptions& options = {});

/// Entry (j, k) holds the rates of PathPair(paths[j], paths[k]).
std::vector<std::vector<RateReport>> pairwise_decoherence_matrix(
    const CorrelationKernel& kq, const CorrelationKernel& kX, const std::vector<Path>& paths,
    const std::vector<double>& schedule, const StationaryOptions& options = {});

struct KernelPair {
  CorrelationKernel q;
  CorrelationKernel X;
};

/// Scalar kernels whose G is exp(-|tau|/tau_c) cos(Omega tau).
KernelPair exponential_test_kernels(double tau_c, double omega);

/// Zero kernels of the given dimension.
KernelPair zero_kernels(int dim = 1);

}  // namespace decoh
