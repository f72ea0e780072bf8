#pragma once

// Spread-2 partitions for size functionals that are only non-negative and
// change by at most 1 per element (no monotonicity).
//
// The table s[i, j) is extended piecewise linearly to real intervals [x, y)
// over the triangulation of {0 <= x <= y <= n} into unit right triangles.
// That extension is 1-Lipschitz in the l1 norm, and on the simplex of
// fractional cuts there is a point x* where all k interval sizes coincide.
// Rounding every coordinate of x* to the nearest integer moves each size by at
// most 1, which leaves the rounded partition with spread <= 2.
//
// The existence argument is topological, so x* is found numerically: exact
// coordinate descent on the variance of the size vector, Newton polishing on
// the active linear piece, multi-start, and an optional grid scan. The result
// is validated after rounding, never assumed.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockpart/error.hpp"
#include "blockpart/functionals.hpp"
#include "blockpart/sequence.hpp"

namespace blockpart {

class FractionalCut {
 public:
  // Requires 0 <= x_1 <= ... <= x_{k-1} <= n; violations up to 1e-12 are
  // clamped away.
  FractionalCut(double n, std::vector<double> x);

  double n() const noexcept { return n_; }
  std::size_t k() const noexcept { return x_.size() + 1; }
  const std::vector<double>& values() const noexcept { return x_; }
  // Boundary b with boundary(0) = 0 and boundary(k) = n.
  double boundary(std::size_t b) const;

 private:
  double n_;
  std::vector<double> x_;
};

class ExtendedSize {
 public:
  struct Value {
    double value = 0.0;
    double d_begin = 0.0;  // partial derivative in x on the active triangle
    double d_end = 0.0;    // partial derivative in y
  };

  // table[i][j - i] = s[i, j); needs s[i, i) = 0 and non-negative entries.
  explicit ExtendedSize(std::vector<std::vector<double>> table);
  static ExtendedSize from(const SizeFunctional& s);

  std::size_t n() const noexcept { return n_; }
  double at(std::size_t i, std::size_t j) const { return table_[i][j - i]; }

  // s[x, y) for real 0 <= x <= y <= n; ValidationError outside the domain.
  double operator()(double x, double y) const { return evaluate(x, y).value; }
  Value evaluate(double x, double y) const;

 private:
  std::size_t n_;
  std::vector<std::vector<double>> table_;
};

std::vector<double> size_vector(const ExtendedSize& es, const FractionalCut& x);

struct DiagonalOptions {
  double tol = 1e-7;
  std::size_t starts = 16;  // random starts in addition to the equal-mass start
  std::uint64_t seed = 0x5eed;
  // Scan a 1/8 grid for extra starts when k <= 3 and n <= 12.
  bool grid_fallback = true;
  std::size_t max_rounds = 200;  // descent + polish rounds per start
};

struct DiagonalResult {
  FractionalCut x;
  double spread = 0.0;
  std::size_t rounds = 0;
  std::size_t start_index = 0;  // 0 = equal-mass start, then random, then grid
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, DiagonalResult best)
      : Error(what), best_(std::move(best)) {}
  const DiagonalResult& best() const noexcept { return best_; }

 private:
  DiagonalResult best_;
};

// Throws SolverFailure when no start reaches spread <= tol.
DiagonalResult find_diagonal(const ExtendedSize& es, std::size_t k,
                             const DiagonalOptions& options = {});

// Nearest integer, halves rounded up.
CutVector round_to_blocks(const FractionalCut& x);

struct Spread2Options {
  DiagonalOptions diagonal;
  // Exhaustive fallback runs when the solver fails and there are at most
  // this many cut vectors.
  std::size_t fallback_limit = 1'000'000;
};

// Requires s to satisfy the non-negativity and unit-change conditions.
PartitionResult balance_spread2(const SizeFunctional& s, std::size_t k,
                                const Spread2Options& options = {});

}  // namespace blockpart
