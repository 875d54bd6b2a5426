#include <gtest/gtest.h>

#include "decoh/ctp_functional.hpp"
#include "decoh/error.hpp"
#include "decoh/qed_rates.hpp"
#include "oracles.hpp"

using namespace decoh;

namespace {

CorrelationKernel scalar_kernel(std::function<double(double)> sym, std::function<double(double)> anti,
                                double memory = 1.0, double wmax = 1.0) {
  CorrelationKernel k;
  k.dim = 1;
  k.memory_time = memory;
  k.max_frequency = wmax;
  k.eval = [sym, anti](const SpaceTimePoint& x, const SpaceTimePoint& xp) {
    KernelSample s;
    s.s(0, 0) = sym(x.t - xp.t);
    s.a(0, 0) = anti(x.t - xp.t);
    return s;
  };
  return k;
}

double zero(double) { return 0.0; }
double one(double) { return 1.0; }

}  // namespace

TEST(EvalG, ZeroKernels) {
  const auto k = zero_kernels(3);
  EXPECT_EQ(eval_G(k.q, k.X, {1.0, {}}, {0.0, {}}), 0.0);
}

TEST(EvalG, HeavisideKillsCommutatorForLaterPrime) {
  const auto q = scalar_kernel(zero, [](double t) { return std::sin(t) + 2.0; });
  const auto X = scalar_kernel(zero, one);
  EXPECT_EQ(eval_G(q, X, {0.0, {}}, {1.0, {}}), 0.0);
  EXPECT_NE(eval_G(q, X, {1.0, {}}, {0.0, {}}), 0.0);
}

TEST(EvalG, HeavisideIsHalfAtEqualTimes) {
  const auto q = scalar_kernel(zero, one);
  const auto X = scalar_kernel(zero, one);
  EXPECT_DOUBLE_EQ(eval_G(q, X, {2.0, {}}, {2.0, {}}), -0.125);
  EXPECT_DOUBLE_EQ(eval_G(q, X, {3.0, {}}, {2.0, {}}), -0.25);
}

TEST(EvalG, SymmetricProductRegressionValue) {
  // sym_q = cos(t - t'), sym_X = 1 at equal times: G = (1/2) * 1 * 1.
  const auto q = scalar_kernel([](double t) { return std::cos(t); }, zero);
  const auto X = scalar_kernel(one, zero);
  EXPECT_DOUBLE_EQ(eval_G(q, X, {0.3, {}}, {0.3, {}}), 0.5);
}

TEST(EvalG, DimensionMismatch) {
  const auto a = zero_kernels(1);
  const auto b = zero_kernels(3);
  try {
    eval_G(a.q, b.X, {0.0, {}}, {0.0, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Functionals, ZeroKernels) {
  const auto k = zero_kernels();
  const auto v = eval_functionals(k.q, k.X, double_well_pair(0.3, 10.0));
  EXPECT_EQ(v.s_local_dec, 0.0);
  EXPECT_EQ(v.s_nonlocal_dec, 0.0);
}

TEST(Functionals, CoincidentPathsCancelAtEveryDuration) {
  const auto k = exponential_test_kernels(1.0, 2.0);
  for (double dt : {0.5, 3.0, 40.0}) {
    const auto v = eval_functionals(k.q, k.X, double_well_pair(0.0, dt));
    EXPECT_GT(v.s_local_dec, 0.0);
    EXPECT_NEAR(v.s_local_dec + v.s_nonlocal_dec, 0.0, 1e-14 * v.s_local_dec) << dt;
  }
}

TEST(Functionals, ExponentialKernelSlope) {
  const double tc = 1.0;
  const double w = 2.0;
  const auto k = exponential_test_kernels(tc, w);
  const auto a = eval_functionals(k.q, k.X, double_well_pair(0.0, 100.0));
  const auto b = eval_functionals(k.q, k.X, double_well_pair(0.0, 200.0));
  EXPECT_NEAR((b.s_local_dec - a.s_local_dec) / 100.0, 2.0 * oracle::exp_cos_integral(tc, w), 1e-9);
}

TEST(Functionals, FastPathAgreesWithGeneralPath) {
  const auto k = exponential_test_kernels(0.8, 1.5);
  const double dt = 12.0;
  const auto fast = eval_functionals(k.q, k.X, double_well_pair(0.0, dt));
  // A sampled path that stays put forces the rotated double integral.
  const Path still = Path::sampled({0.0, dt}, {{}, {}});
  const auto slow = eval_functionals(k.q, k.X, PathPair(still, still, dt));
  EXPECT_NEAR(fast.s_local_dec, slow.s_local_dec, 1e-8 * fast.s_local_dec);
  EXPECT_NEAR(fast.s_nonlocal_dec, slow.s_nonlocal_dec, 1e-8 * fast.s_local_dec);
}

TEST(Functionals, ExchangeSymmetry) {
  const AtomModel atom = two_level_atom();
  const auto k = build_qed_kernels(atom, {10.0, true});
  const Path p1 = Path::sampled({0.0, 6.0}, {{0, 0, 0.1}, {0, 0.1, 0.2}});
  const Path p2 = Path::constant({0.0, 0.0, -0.2});
  const PathPair pair(p1, p2, 6.0);
  const auto a = eval_functionals(k.q, k.X, pair);
  const auto b = eval_functionals(k.q, k.X, pair.swapped());
  EXPECT_NEAR(a.s_local_dec, b.s_local_dec, 1e-7 * std::abs(a.s_local_dec));
  EXPECT_NEAR(a.s_nonlocal_dec, b.s_nonlocal_dec, 1e-7 * std::abs(a.s_local_dec));
}

TEST(Functionals, LinearInXKernel) {
  const auto k = exponential_test_kernels(1.0, 0.5);
  CorrelationKernel X3 = k.X;
  X3.eval = [inner = k.X.eval](const SpaceTimePoint& x, const SpaceTimePoint& xp) {
    KernelSample s = inner(x, xp);
    for (auto& v : s.sym) v *= 3.0;
    for (auto& v : s.antisym) v *= 3.0;
    return s;
  };
  const PathPair pair = double_well_pair(0.0, 20.0);
  const auto a = eval_functionals(k.q, k.X, pair);
  const auto b = eval_functionals(k.q, X3, pair);
  EXPECT_NEAR(b.s_local_dec, 3.0 * a.s_local_dec, 1e-12 * b.s_local_dec);
  EXPECT_NEAR(b.s_nonlocal_dec, 3.0 * a.s_nonlocal_dec, 1e-12 * b.s_local_dec);
}

TEST(Functionals, PanelHalvingWithinTolerance) {
  const auto k = exponential_test_kernels(1.0, 2.0);
  QuadratureSpec fine;
  fine.panel_factor = 16.0;
  const PathPair pair = double_well_pair(0.0, 30.0);
  const auto a = eval_functionals(k.q, k.X, pair, {});
  const auto b = eval_functionals(k.q, k.X, pair, fine);
  EXPECT_LE(std::abs(a.s_local_dec - b.s_local_dec), 1e-6 * b.s_local_dec);
}

TEST(StationaryRates, ZeroKernels) {
  const auto k = zero_kernels();
  const auto r = stationary_rates(
      k.q, k.X, [](double dt) { return double_well_pair(0.2, dt); }, default_dt_schedule(50.0));
  EXPECT_EQ(r.gamma_local(), 0.0);
  EXPECT_EQ(r.gamma_nonlocal(), 0.0);
}

TEST(StationaryRates, ExponentialKernel) {
  const double tc = 1.0;
  const double w = 2.0;
  const auto k = exponential_test_kernels(tc, w);
  const auto r = stationary_rates(
      k.q, k.X, [](double dt) { return double_well_pair(0.0, dt); }, default_dt_schedule(200.0));
  const double expected = 2.0 * oracle::exp_cos_integral(tc, w);
  EXPECT_NEAR(r.gamma_local(), expected, 1e-4 * expected);
  EXPECT_NEAR(r.gamma_nonlocal(), -expected, 1e-4 * expected);
  EXPECT_LE(std::abs(r.gamma_total()), 1e-4 * r.gamma_local());
  EXPECT_EQ(r.diagnostics().dt_schedule.size(), 8u);
  EXPECT_LT(r.diagnostics().fit_residual_local, 1e-3);
}

TEST(StationaryRates, NonLinearGrowthDetected) {
  // An undamped kernel makes the functional grow quadratically.
  const auto q = scalar_kernel(one, zero, 1e9, 0.0);
  const auto X = scalar_kernel(one, zero, 1e9, 0.0);
  try {
    stationary_rates(
        q, X, [](double dt) { return double_well_pair(0.0, dt); }, default_dt_schedule(10.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonLinearGrowth);
  }
}

TEST(StationaryRates, ScheduleValidation) {
  const auto k = exponential_test_kernels(1.0, 0.0);
  auto factory = [](double dt) { return double_well_pair(0.0, dt); };
  EXPECT_THROW(stationary_rates(k.q, k.X, factory, {10.0, 20.0, 30.0}), Error);
  EXPECT_THROW(stationary_rates(k.q, k.X, factory, {10.0, 20.0, 20.0, 30.0}), Error);
}

TEST(PairwiseMatrix, TwoPathsMatchSinglePair) {
  const auto k = exponential_test_kernels(1.0, 1.0);
  const std::vector<Path> paths{Path::constant({0, 0, 0.5}), Path::constant({0, 0, -0.5})};
  const auto sched = default_dt_schedule(60.0);
  const auto m = pairwise_decoherence_matrix(k.q, k.X, paths, sched);
  const auto r = stationary_rates(
      k.q, k.X, [](double dt) { return double_well_pair(1.0, dt); }, sched);
  EXPECT_DOUBLE_EQ(m[0][1].gamma_local(), r.gamma_local());
  EXPECT_DOUBLE_EQ(m[0][1].gamma_nonlocal(), r.gamma_nonlocal());
  EXPECT_NEAR(m[0][0].gamma_total(), 0.0, 1e-12);
  EXPECT_NEAR(m[1][1].gamma_total(), 0.0, 1e-12);
}

TEST(PairwiseMatrix, IdenticalPathsAllCancel) {
  const auto k = exponential_test_kernels(1.0, 3.0);
  const std::vector<Path> paths(3, Path::constant({0.1, 0.2, 0.3}));
  const auto m = pairwise_decoherence_matrix(k.q, k.X, paths, default_dt_schedule(60.0));
  for (const auto& row : m) {
    for (const auto& r : row) EXPECT_LE(std::abs(r.gamma_total()), 1e-10 * r.gamma_local());
  }
}

TEST(PairwiseMatrix, QedOffDiagonalFollowsDistanceSinc) {
  const AtomModel atom = two_level_atom();
  const auto k = build_qed_kernels(atom, {20.0, true});
  const double a = 0.3;
  const std::vector<Path> paths{Path::constant({}), Path::constant({0, 0, a}),
                                Path::constant({0, 0, -a})};
  const auto m = pairwise_decoherence_matrix(k.q, k.X, paths, default_dt_schedule(200.0));
  const double gamma = oracle::partial_rate(1.0, 1.0);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t l = 0; l < 3; ++l) {
      const double d = distance(paths[j].at(0.0), paths[l].at(0.0));
      const double expected = -gamma * oracle::sinc(2.0 * oracle::kPi * d);
      EXPECT_NEAR(m[j][l].gamma_nonlocal(), expected, 1e-2 * gamma) << j << "," << l;
    }
  }
}
