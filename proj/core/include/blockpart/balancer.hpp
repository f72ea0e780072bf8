#pragma once

// Local-search balancer. Starting from any k-partition it repeatedly moves a
// single boundary element towards the minimal block closest to a fixed
// maximal block until max size <= min size + 1. Works for every size
// functional that is non-negative and grows by at most 1 per added element.
//
// The maximal block size never increases, and while the maximal block p is
// fixed the potential sum_i |i - p| * |B_i| strictly increases, so each phase
// takes fewer than k*n moves and the whole run O(k n^3).

#include <cstddef>
#include <optional>
#include <vector>

#include "blockpart/functionals.hpp"
#include "blockpart/sequence.hpp"

namespace blockpart {

struct Move {
  std::size_t from = 0;  // block that loses an element
  std::size_t to = 0;    // adjacent block that gains it
  friend bool operator==(const Move&, const Move&) = default;
};

struct BalancerState {
  CutVector cuts;
  std::vector<double> sizes;
  std::size_t p = 0;  // fixed maximal block
  std::size_t iterations = 0;
  std::optional<Move> last_move;
};

struct BalanceOptions {
  // Defaults to the prefix-threshold construction on s[0, j).
  std::optional<CutVector> init;
  double tol = kTolerance;
  // Defaults to default_iteration_cap(k, n).
  std::optional<std::size_t> iteration_cap;
};

struct TraceEntry {
  Move move;
  std::size_t p = 0;
  std::size_t potential_before = 0;
  std::size_t potential_after = 0;
  double max_before = 0.0;
  double max_after = 0.0;
};

struct BalanceTrace {
  std::vector<TraceEntry> steps;
  std::vector<std::size_t> phase_lengths;  // moves made while each p was fixed
};

// 8 k n^3 + 1000, saturating.
std::size_t default_iteration_cap(std::size_t k, std::size_t n);

// sum_i |i - p| * |B_i|.
std::size_t potential(const CutVector& cv, std::size_t p);

// Smallest-index block of maximal size.
std::size_t maximal_block(const std::vector<double>& sizes);

// Starting state for `cuts` with p fixed at the smallest maximal block.
BalancerState make_state(const CutVector& cuts, const SizeFunctional& s);

// One element move. Requires max > min + 1 + tol. Picks the minimal block q
// closest to state.p (smaller index on a tie), and moves one element from
// its neighbour h on the p side into q. Throws InvariantViolation if that
// neighbour is empty.
BalancerState balance_step(const BalancerState& state, const SizeFunctional& s,
                           double tol = kTolerance);

PartitionResult balance(const SizeFunctional& s, std::size_t k,
                        const BalanceOptions& options = {}, BalanceTrace* trace = nullptr);

// Sum functional over a unit-interval scalar sequence.
PartitionResult balance(const Sequence& seq, std::size_t k, const BalanceOptions& options = {});

// Prefix-threshold initial partition on F(j) = s[0, j): cut h is the
// smallest j with F(j) >= h F(n) / k - 1/2. Equals quick_partition for the
// sum functional.
CutVector threshold_partition(const SizeFunctional& s, std::size_t k);

}  // namespace blockpart
