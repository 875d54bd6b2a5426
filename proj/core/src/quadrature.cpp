#include "decoh/quadrature.hpp"

#include <string>

#include "decoh/types.hpp"

namespace decoh {

void QuadratureSpec::validate() const {
  if (!(panel_factor > 0.0) || !std::isfinite(panel_factor)) {
    fail(ErrorCode::InvalidArgument, "panel_factor must be positive");
  }
  if (gauss_order < 1 || gauss_order > 64) {
    fail(ErrorCode::InvalidArgument, "gauss_order must be in [1, 64]");
  }
  if (!(rel_tolerance > 0.0)) fail(ErrorCode::InvalidArgument, "rel_tolerance must be positive");
  if (max_refinements < 1 || max_refinements > 20) {
    fail(ErrorCode::InvalidArgument, "max_refinements must be in [1, 20]");
  }
  if (threads < 1) fail(ErrorCode::InvalidArgument, "threads must be >= 1");
}

GaussRule gauss_legendre(int order) {
  if (order < 1) fail(ErrorCode::InvalidArgument, "gauss order must be >= 1");
  const auto n = static_cast<std::size_t>(order);
  GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
  // Newton on P_n from the Chebyshev-like initial guess; nodes are symmetric.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = order == 1 ? x : p1;
      const double pm = order == 1 ? 1.0 : p0;
      dp = order * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double pm = order == 1 ? 1.0 : p0;
    dp = order * (x * p1 - pm) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

LinearFit fit_linear_tail(std::span<const double> xs, std::span<const double> ys,
                          double tail_fraction) {
  if (xs.size() != ys.size()) fail(ErrorCode::DimensionMismatch, "fit: xs and ys differ in length");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "tail_fraction must be in (0, 1]");
  }
  const std::size_t n = xs.size();
  const auto m = static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n) - 1e-12));
  if (m < 4) {
    fail(ErrorCode::TooFewPoints,
         "linear fit needs >= 4 tail points, got " + std::to_string(m));
  }
  const auto x = xs.subspan(n - m);
  const auto y = ys.subspan(n - m);
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) fail(ErrorCode::InvalidArgument, "fit: tail abscissae are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_used = m;
  double dev = 0.0;
  double ymax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    dev = std::max(dev, std::abs(y[i] - (fit.intercept + fit.slope * x[i])));
    ymax = std::max(ymax, std::abs(y[i]));
  }
  fit.residual = ymax > 0.0 ? dev / ymax : 0.0;
  return fit;
}

double find_root_tan_x_eq_x(double lo, double hi) {
  auto h = [](double x) { return x * std::cos(x) - std::sin(x); };
  if (!(lo < hi)) fail(ErrorCode::NoSignChange, "root bracket is empty");
  double flo = h(lo);
  const double fhi = h(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    fail(ErrorCode::NoSignChange, "x cos x - sin x does not change sign on the bracket");
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi);
       ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = h(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace decoh
