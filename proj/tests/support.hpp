#pragma once

// Test-only generators and independent reference computations. Nothing here
// calls into the algorithms under test beyond constructing value types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "blockpart/sequence.hpp"

namespace blockpart::testing {

inline std::vector<double> uniform_values(std::mt19937_64& rng, std::size_t n, double lo = 0.0,
                                          double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

// Values from {0, 1/4, 1/2, 3/4, 1}; all block sums are exact in binary.
inline std::vector<double> quarter_grid_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> d(0, 4);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng) / 4.0;
  return v;
}

// Values in [lo, 1] with a non-negative total: the smallest element is
// redrawn from [0, 1] until the total is non-negative. With `quarters` every
// value is a multiple of 1/4.
inline std::vector<double> signed_values(std::mt19937_64& rng, std::size_t n, double lo,
                                         bool quarters = false) {
  std::uniform_real_distribution<double> d(lo, 1.0), pos(0.0, 1.0);
  std::uniform_int_distribution<int> qd(static_cast<int>(std::ceil(lo * 4)), 4), qpos(0, 4);
  std::vector<double> v(n);
  for (double& x : v) x = quarters ? qd(rng) / 4.0 : d(rng);
  while (true) {
    double total = 0.0;
    for (double x : v) total += x;
    if (total >= 0.0) return v;
    *std::min_element(v.begin(), v.end()) = quarters ? qpos(rng) / 4.0 : pos(rng);
  }
}

// Sum of a block by direct summation, without prefix sums.
inline double direct_sum(const std::vector<double>& values, Interval b) {
  double acc = 0.0;
  for (std::size_t i = b.begin; i < b.end; ++i) acc += values[i];
  return acc;
}

inline std::vector<double> direct_sizes(const std::vector<double>& values, const CutVector& cv) {
  std::vector<double> out;
  for (std::size_t i = 0; i < cv.k(); ++i) out.push_back(direct_sum(values, cv.block(i)));
  return out;
}

inline double direct_spread(const std::vector<double>& sizes) {
  return *std::max_element(sizes.begin(), sizes.end()) -
         *std::min_element(sizes.begin(), sizes.end());
}

using Table = std::vector<std::vector<double>>;

// t[i][j - i] = sum of values[i, j), or its absolute value.
inline Table block_sum_table(const std::vector<double>& values, bool absolute) {
  const std::size_t n = values.size();
  Table t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    t[i].assign(n - i + 1, 0.0);
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double s = direct_sum(values, {i, j});
      t[i][j - i] = absolute ? std::abs(s) : s;
    }
  }
  return t;
}

// Recursive enumeration of all cut vectors, independent of the oracle's
// iterative enumerator.
inline void enumerate_cuts(std::size_t n, std::size_t k, std::vector<std::size_t>& prefix,
                           std::vector<std::vector<std::size_t>>& out) {
  if (prefix.size() + 1 == k) {
    out.push_back(prefix);
    return;
  }
  const std::size_t lo = prefix.empty() ? 0 : prefix.back();
  for (std::size_t c = lo; c <= n; ++c) {
    prefix.push_back(c);
    enumerate_cuts(n, k, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> all_cuts(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> prefix;
  enumerate_cuts(n, k, prefix, out);
  return out;
}

// Minimum spread of the sum functional by recursive enumeration and direct
// summation.
inline double brute_min_spread(const std::vector<double>& values, std::size_t k) {
  double best = INFINITY;
  for (const auto& c : all_cuts(values.size(), k)) {
    const CutVector cv(values.size(), k, c);
    best = std::min(best, direct_spread(direct_sizes(values, cv)));
  }
  return best;
}

// Random table s[i, j) with s[i,i) = 0, s >= 0 and one-endpoint changes of at
// most 1. Filled by increasing length: each entry is drawn from the window
// allowed by its two shorter neighbours, which is never empty because both
// neighbours are within 1 of the same length-(L-2) entry.
inline std::vector<std::vector<double>> random_unit_change_table(std::mt19937_64& rng,
                                                                 std::size_t n) {
  std::vector<std::vector<double>> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t[i].assign(n - i + 1, 0.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t len = 1; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      const double a = t[i + 1][len - 1];  // s[i+1, i+len)
      const double b = t[i][len - 1];      // s[i, i+len-1)
      const double lo = std::max({0.0, a - 1.0, b - 1.0});
      const double hi = std::min(a + 1.0, b + 1.0);
      t[i][len] = lo + (hi - lo) * u(rng);
    }
  }
  return t;
}

}  // namespace blockpart::testing
