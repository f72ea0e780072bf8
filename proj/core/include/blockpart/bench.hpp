#pragma once

// Iteration-count harness for the balancer: seeded random unit-interval
// sequences over an (n, k) grid, checked against the 8 k n^3 step budget,
// with a log-log fit of mean iterations against n for each k.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace blockpart {

inline constexpr const char* kBenchGenerator = "mt19937_64/splitmix64-seeded/53-bit-uniform";

enum class BenchInit {
  first_block,  // every element starts in block 0
  threshold,    // the balancer's default start
};

struct BenchOptions {
  std::vector<std::pair<std::size_t, std::size_t>> grid;  // (n, k)
  std::size_t trials = 50;
  std::uint64_t seed = 1;
  BenchInit init = BenchInit::first_block;
};

struct BenchCell {
  std::size_t n = 0;
  std::size_t k = 0;
  double mean_iterations = 0.0;
  std::size_t max_iterations = 0;
  std::size_t bound = 0;  // 8 k n^3
};

struct BenchViolation {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t trial = 0;
  std::uint64_t trial_seed = 0;
  std::vector<double> sequence;
  std::size_t iterations = 0;
  std::string reason;
};

struct BenchReport {
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  BenchInit init = BenchInit::first_block;
  std::vector<BenchCell> cells;
  std::map<std::size_t, double> exponent_by_k;  // slope of log(mean) vs log(n)
  std::optional<double> max_exponent;
  std::optional<BenchViolation> violation;
};

// Seed for one trial; a pure function of the master seed and the cell.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t k, std::size_t trial);

// n i.i.d. uniform [0, 1) values from mt19937_64, 53 random bits each.
std::vector<double> uniform_sequence(std::uint64_t seed, std::size_t n);

// Least-squares slope of log(y) against log(x) over points with x, y > 0.
std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& points);

// Parses "8:2,16:4" into (n, k) pairs; empty optional on bad syntax.
std::optional<std::vector<std::pair<std::size_t, std::size_t>>> parse_grid(const std::string& text);

BenchReport run_bench(const BenchOptions& options);

}  // namespace blockpart
