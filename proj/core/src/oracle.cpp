#include "blockpart/oracle.hpp"

#include <algorithm>
#include <limits>

#include "blockpart/error.hpp"

namespace blockpart {

std::size_t cut_vector_count(std::size_t n, std::size_t k) {
  if (k == 0) return 0;
  // C(n + r, r) with r = k - 1, built so every intermediate is an exact binomial.
  const std::size_t r = k - 1;
  std::size_t c = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    const std::size_t num = n + i;
    if (c > std::numeric_limits<std::size_t>::max() / num) {
      return std::numeric_limits<std::size_t>::max();
    }
    c = c * num / i;
  }
  return c;
}

std::size_t for_each_cut_vector(std::size_t n, std::size_t k,
                                const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k == 0) throw ValidationError("k must be positive");
  std::vector<std::size_t> cuts(k - 1, 0);
  std::size_t visited = 0;
  while (true) {
    ++visited;
    if (!visit(cuts)) return visited;
    // Rightmost cut that can still grow; everything after it restarts there.
    std::size_t i = cuts.size();
    while (i > 0 && cuts[i - 1] == n) --i;
    if (i == 0) return visited;
    const std::size_t v = ++cuts[i - 1];
    std::fill(cuts.begin() + static_cast<std::ptrdiff_t>(i), cuts.end(), v);
  }
}

namespace {

void guard(std::size_t n, std::size_t k, std::size_t limit) {
  const std::size_t count = cut_vector_count(n, k);
  if (count > limit) {
    throw SizeGuardError("instance has " + std::to_string(count) +
                         " cut vectors, above the oracle limit of " + std::to_string(limit));
  }
}

}  // namespace

OracleReport min_spread(const SizeFunctional& s, std::size_t k, std::size_t limit) {
  if (k == 0) throw ValidationError("k must be positive");
  const std::size_t n = s.length();
  guard(n, k, limit);

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_cuts;
  std::vector<double> sizes(k);
  const std::size_t examined = for_each_cut_vector(n, k, [&](const std::vector<std::size_t>& c) {
    std::size_t prev = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t next = i + 1 < k ? c[i] : n;
      sizes[i] = s(prev, next);
      prev = next;
    }
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    const double sp = *hi - *lo;
    if (sp < best) {
      best = sp;
      best_cuts = c;
    }
    return true;
  });
  return OracleReport{best, CutVector(n, k, std::move(best_cuts)), examined};
}

bool verify_no_empty_blocks(const Sequence& seq, std::size_t k, std::size_t limit) {
  if (k == 0) throw ValidationError("k must be positive");
  require_bound(seq.values(), BoundKind::unit_interval);
  const std::size_t n = seq.size();
  guard(n, k, limit);
  const PrefixSums sums(seq.values());

  bool ok = true;
  std::vector<double> sizes(k);
  for_each_cut_vector(n, k, [&](const std::vector<std::size_t>& c) {
    std::size_t prev = 0;
    bool has_empty = false;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t next = i + 1 < k ? c[i] : n;
      sizes[i] = sums.range(prev, next);
      has_empty = has_empty || next == prev;
      prev = next;
    }
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    if (*hi - *lo <= 1.0 + kTolerance && has_empty) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

}  // namespace blockpart
