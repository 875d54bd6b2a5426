#pragma once

// Deterministic data parallelism. Work items are computed independently and
// reduced afterwards in a fixed order, so results are bitwise identical for
// every worker count.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace decoh {

/// Worker count from the DECOH_THREADS environment variable, or 1.
unsigned default_threads();

/// Calls body(begin, end) over contiguous chunks of [0, count).
void parallel_for_chunks(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& body);

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  parallel_for_chunks(count, threads, [&fn](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

/// Pairwise (cascade) summation with a fixed tree shape.
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.empty()) return T{};
  if (v.size() <= 8) {
    T s = v[0];
    for (std::size_t i = 1; i < v.size(); ++i) s += v[i];
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace decoh
