#pragma once

// Shared numerical plumbing: reproducible pairwise reduction, polynomial
// extrapolation to zero, convergence-order fits, a seeded generator and a
// small fork-join loop.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "cliffbvp/clifford.hpp"

namespace cliffbvp {

/// Pairwise (cascade) sum of term(i) for i in [0, count). The split points
/// depend only on count, so results do not depend on evaluation order.
template <class T, class Term>
T pairwise_sum(std::size_t begin, std::size_t end, const Term& term, const T& zero) {
  constexpr std::size_t kBlock = 16;
  if (end - begin <= kBlock) {
    T acc = zero;
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  T left = pairwise_sum<T>(begin, mid, term, zero);
  left += pairwise_sum<T>(mid, end, term, zero);
  return left;
}

template <class T, class Term>
T pairwise_sum(std::size_t count, const Term& term, const T& zero) {
  return pairwise_sum<T>(std::size_t{0}, count, term, zero);
}

/// Limit estimate plus the magnitude of the last Neville correction.
template <class V>
struct Extrapolated {
  V value;
  double error_estimate = 0.0;
};

/// Neville extrapolation of the polynomial through (h_k, v_k) to h = 0.
/// Requires distinct abscissae; error estimate is |T_{m,m} - T_{m,m-1}|.
Extrapolated<double> extrapolate_to_zero(std::span<const double> h, std::span<const double> v);
Extrapolated<Multivector> extrapolate_to_zero(std::span<const double> h,
                                              std::span<const Multivector> v);

/// Geometric sequence first, first*ratio, ... with `count` terms.
std::vector<double> geometric_sequence(double first, double ratio, int count);

/// Least-squares fit of log(error) = c + p log(h).
struct OrderFit {
  double order = 0.0;
  /// Two standard errors of the slope; zero when only two points are used.
  double confidence_width = 0.0;
  /// Number of (h, error) pairs above the noise floor that entered the fit.
  int points_used = 0;
  /// True when every error is already at or below the noise floor.
  bool at_noise_floor = false;
};

OrderFit fit_order(std::span<const double> h, std::span<const double> errors,
                   double noise_floor = 1e-13);

/// Seeded generator with platform-independent uniform draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound).
  std::size_t index(std::size_t bound) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(bound));
  }

 private:
  std::mt19937_64 engine_;
};

Multivector random_multivector(int n, Rng& rng, double lo = -1.0, double hi = 1.0);
Point random_point(int n, Rng& rng, double lo, double hi);

/// Worker count used by parallel_for; defaults to 1.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count) across thread_count() workers. Each index
/// is handled by exactly one call; body must only write to index-owned state.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cliffbvp
