#include "cliffbvp/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>

#include "cliffbvp/error.hpp"

namespace cliffbvp {
namespace {

std::atomic<int> g_threads{1};

// Value at 0 of the interpolant through (h_k, v_k), by Neville's scheme.
template <class V>
V neville_at_zero(std::span<const double> h, std::vector<V> table) {
  const std::size_t m = h.size();
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t i = 0; i + k < m; ++i) {
      V next = table[i + 1] * h[i];
      next -= table[i] * h[i + k];
      table[i] = next * (1.0 / (h[i] - h[i + k]));
    }
  return table[0];
}

template <class V>
Extrapolated<V> neville(std::span<const double> h, std::span<const V> v) {
  if (h.size() != v.size() || h.empty())
    throw InvalidInput("extrapolation needs matching, non-empty abscissae and values");
  for (std::size_t i = 0; i < h.size(); ++i)
    for (std::size_t j = i + 1; j < h.size(); ++j)
      if (h[i] == h[j]) throw InvalidInput("extrapolation abscissae must be distinct");

  Extrapolated<V> out{neville_at_zero(h, std::vector<V>(v.begin(), v.end())), 0.0};
  if (h.size() > 1) {
    // Compare against the extrapolant that drops the coarsest point.
    V diff = out.value;
    diff -= neville_at_zero(h.subspan(1), std::vector<V>(v.begin() + 1, v.end()));
    if constexpr (std::is_same_v<V, double>) {
      out.error_estimate = std::abs(diff);
    } else {
      out.error_estimate = diff.norm();
    }
  }
  return out;
}

}  // namespace

Extrapolated<double> extrapolate_to_zero(std::span<const double> h, std::span<const double> v) {
  return neville<double>(h, v);
}

Extrapolated<Multivector> extrapolate_to_zero(std::span<const double> h,
                                              std::span<const Multivector> v) {
  return neville<Multivector>(h, v);
}

std::vector<double> geometric_sequence(double first, double ratio, int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  double value = first;
  for (int i = 0; i < count; ++i) {
    out.push_back(value);
    value *= ratio;
  }
  return out;
}

OrderFit fit_order(std::span<const double> h, std::span<const double> errors, double noise_floor) {
  if (h.size() != errors.size()) throw InvalidInput("fit_order: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (errors[i] > noise_floor && h[i] > 0.0) {
      xs.push_back(std::log(h[i]));
      ys.push_back(std::log(errors[i]));
    }
  }
  OrderFit fit;
  fit.points_used = static_cast<int>(xs.size());
  if (xs.empty()) {
    fit.at_noise_floor = true;
    return fit;
  }
  if (xs.size() < 2) return fit;
  const double k = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.order = sxy / sxx;
  if (xs.size() > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (my + fit.order * (xs[i] - mx));
      rss += r * r;
    }
    fit.confidence_width = 2.0 * std::sqrt(rss / (k - 2.0) / sxx);
  }
  return fit;
}

Multivector random_multivector(int n, Rng& rng, double lo, double hi) {
  Multivector m(n);
  for (double& c : m.coeffs()) c = rng.uniform(lo, hi);
  return m;
}

Point random_point(int n, Rng& rng, double lo, double hi) {
  Point p;
  for (int k = 0; k <= n; ++k) p.push_back(rng.uniform(lo, hi));
  return p;
}

void set_thread_count(int threads) { g_threads.store(std::max(1, threads)); }

int thread_count() { return g_threads.load(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(thread_count());
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(count);
    }
  };
  {
    std::vector<std::jthread> pool;
    const std::size_t spawned = std::min(workers, count) - 1;
    pool.reserve(spawned);
    for (std::size_t t = 0; t < spawned; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace cliffbvp
