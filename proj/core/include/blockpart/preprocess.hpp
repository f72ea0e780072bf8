#pragma once

// Reductions from signed sequences (a_i <= 1, total >= 0) to sequences with
// every element in [0, 1], by grouping contiguous runs.

#include <cstddef>
#include <vector>

#include "blockpart/balancer.hpp"
#include "blockpart/sequence.hpp"

namespace blockpart {

struct GroupedSequence {
  std::vector<Interval> groups;  // contiguous cover of the original positions
  std::vector<double> sizes;     // in (0, 1], or a single 0 when the total is 0
  std::size_t merges = 0;
  std::size_t original_length = 0;
};

// Repeatedly merges the leftmost adjacent pair whose product is <= 0 and
// rescans from the merge point. Requires every a_i <= 1 and total >= 0 (a
// total within 1e-12 * n of zero counts as zero).
GroupedSequence group_blocks(const Sequence& seq);

// Expands a cut vector over groups to one over the original positions.
CutVector expand_cuts(const GroupedSequence& grouped, const CutVector& group_cuts);

// Groups, balances the group sizes and re-measures the result on the
// original sequence with the sum functional.
PartitionResult balance_signed(const Sequence& seq, std::size_t k,
                               const BalanceOptions& options = {});

// Elements in [-1, 1]. Balances the negated sequence when the total is
// negative; sizes are always reported for the original sequence.
PartitionResult balance_symmetric(const Sequence& seq, std::size_t k,
                                  const BalanceOptions& options = {});

}  // namespace blockpart
