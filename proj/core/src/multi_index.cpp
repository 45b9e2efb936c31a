#include "cliffbvp/multi_index.hpp"

#include <cmath>
#include <numeric>

#include "cliffbvp/error.hpp"

namespace cliffbvp {
namespace {

double factorial_of(int k) { return std::tgamma(static_cast<double>(k) + 1.0); }

void fill_degree(int n, int remaining, int position, MultiIndex& current,
                 std::vector<MultiIndex>& out) {
  if (position == n - 1) {
    current[position] = remaining;
    out.push_back(current);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    current[position] = k;
    fill_degree(n, remaining - k, position + 1, current, out);
  }
}

}  // namespace

MultiIndex::MultiIndex(int n) {
  AlgebraContext{n};
  entries_.assign(static_cast<std::size_t>(n), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex::MultiIndex(const std::vector<int>& entries) {
  AlgebraContext{static_cast<int>(entries.size())};
  for (int e : entries) {
    if (e < 0) throw InvalidInput("multi-index entries must be non-negative");
    entries_.push_back(e);
  }
}

int MultiIndex::degree() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), 0);
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int e : entries_) f *= factorial_of(e);
  return f;
}

double MultiIndex::multinomial() const { return factorial_of(degree()) / factorial(); }

std::string MultiIndex::to_string() const {
  std::string s = "[";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) s += ',';
    s += std::to_string(entries_[j]);
  }
  return s + "]";
}

std::vector<MultiIndex> multi_indices_of_degree(int n, int degree) {
  if (degree < 0) throw InvalidInput("degree must be non-negative");
  std::vector<MultiIndex> out;
  MultiIndex current(n);
  fill_degree(n, degree, 0, current, out);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_degree) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= max_degree; ++k) {
    auto level = multi_indices_of_degree(n, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

double binomial(int top, int bottom) {
  if (bottom < 0 || top < 0 || bottom > top) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= bottom; ++i) r = r * (top - bottom + i) / i;
  return std::round(r);
}

}  // namespace cliffbvp
