#pragma once

#include <boost/container/static_vector.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "cliffbvp/clifford.hpp"

namespace cliffbvp {

inline constexpr int kDefaultMaxDegree = 6;

/// α = [α_1, ..., α_n] over the generator directions x_1..x_n.
class MultiIndex {
 public:
  explicit MultiIndex(int n);
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(const std::vector<int>& entries);

  int n() const noexcept { return static_cast<int>(entries_.size()); }
  int operator[](int j) const { return entries_[static_cast<std::size_t>(j)]; }
  int& operator[](int j) { return entries_[static_cast<std::size_t>(j)]; }
  int degree() const noexcept;
  /// |α|! / (α_1! ... α_n!)
  double multinomial() const;
  /// α_1! ... α_n!
  double factorial() const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return std::equal(a.entries_.begin(), a.entries_.end(), b.entries_.begin(), b.entries_.end());
  }
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    return std::lexicographical_compare(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                        b.entries_.end());
  }

 private:
  boost::container::static_vector<int, kMaxGenerators> entries_;
};

/// All α with |α| == degree, in lexicographically decreasing order.
std::vector<MultiIndex> multi_indices_of_degree(int n, int degree);
/// All α with |α| <= max_degree, grouped by degree.
std::vector<MultiIndex> multi_indices_up_to(int n, int max_degree);

/// Binomial coefficient C(top, bottom) as a double; zero when bottom is out of range.
double binomial(int top, int bottom);

}  // namespace cliffbvp
