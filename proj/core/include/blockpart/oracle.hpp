#pragma once

// Brute-force ground truth: enumerates every k-block cut vector of a small
// instance. Deliberately free of dynamic programming so it cannot share a
// bug with the algorithms it checks.

#include <cstddef>
#include <functional>
#include <vector>

#include "blockpart/functionals.hpp"
#include "blockpart/sequence.hpp"

namespace blockpart {

inline constexpr std::size_t kOracleLimit = 10'000'000;

// C(n + k - 1, k - 1), saturating at SIZE_MAX.
std::size_t cut_vector_count(std::size_t n, std::size_t k);

// Visits all non-decreasing cut vectors over [0, n] in lexicographic order.
// The visitor returns false to stop early. Returns the number visited.
std::size_t for_each_cut_vector(std::size_t n, std::size_t k,
                                const std::function<bool(const std::vector<std::size_t>&)>& visit);

struct OracleReport {
  double min_spread = 0.0;
  CutVector argmin;
  std::size_t partitions_examined = 0;
};

// Exact minimum spread over all cut vectors; ties go to the lexicographically
// smallest cut vector. SizeGuardError when the count exceeds `limit`.
OracleReport min_spread(const SizeFunctional& s, std::size_t k, std::size_t limit = kOracleLimit);

// True iff every partition of spread <= 1 (sum functional) has no empty block.
bool verify_no_empty_blocks(const Sequence& seq, std::size_t k, std::size_t limit = kOracleLimit);

}  // namespace blockpart
