#include "blockpart/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "blockpart/error.hpp"
#include "blockpart/functionals.hpp"

namespace blockpart {

namespace {

struct Group {
  double size;
  std::size_t begin;
  std::size_t end;
};

double zero_tolerance(std::size_t n) { return 1e-12 * static_cast<double>(std::max<std::size_t>(n, 1)); }

PartitionResult remeasure(const Sequence& seq, CutVector cuts, const PartitionResult& inner) {
  auto sizes = sum_functional(seq).sizes(cuts);
  const double sp = spread(sizes);
  return PartitionResult{std::move(cuts), std::move(sizes), sp, inner.iterations,
                         inner.termination, inner.diagnostic};
}

}  // namespace

GroupedSequence group_blocks(const Sequence& seq) {
  if (seq.is_vector()) throw ValidationError("grouping needs a scalar sequence");
  require_bound(seq.values(), BoundKind::upper_bounded);
  const auto values = seq.values();
  const std::size_t n = values.size();
  const double total = seq.total();
  if (total < -zero_tolerance(n)) {
    throw PreconditionError("sequence total " + std::to_string(total) + " is negative");
  }

  // The stack never holds an adjacent pair with product <= 0, so the next
  // violating pair is always (top, incoming) or, after a merge, (top-1, top).
  std::vector<Group> stack;
  stack.reserve(n);
  std::size_t merges = 0;
  for (std::size_t i = 0; i < n; ++i) {
    stack.push_back({values[i], i, i + 1});
    while (stack.size() >= 2) {
      const Group right = stack.back();
      Group& left = stack[stack.size() - 2];
      if (left.size * right.size > 0.0) break;
      left.size += right.size;
      left.end = right.end;
      stack.pop_back();
      ++merges;
    }
  }

  // What remains has a single strict sign. All-negative only happens when
  // the true total is zero and rounding pushed it below; collapse to (0).
  if (stack.front().size < 0.0) {
    merges += stack.size() - 1;
    stack.assign(1, Group{0.0, 0, n});
  }
  if (stack.size() == 1 && std::abs(stack.front().size) <= zero_tolerance(n)) {
    stack.front().size = 0.0;
  }

  GroupedSequence out;
  out.merges = merges;
  out.original_length = n;
  out.groups.reserve(stack.size());
  out.sizes.reserve(stack.size());
  for (const auto& g : stack) {
    out.groups.push_back({g.begin, g.end});
    out.sizes.push_back(g.size);
  }
  return out;
}

CutVector expand_cuts(const GroupedSequence& grouped, const CutVector& group_cuts) {
  if (group_cuts.n() != grouped.groups.size()) {
    throw ValidationError("cut vector does not match the number of groups");
  }
  std::vector<std::size_t> cuts;
  cuts.reserve(group_cuts.cuts().size());
  for (std::size_t c : group_cuts.cuts()) cuts.push_back(c == 0 ? 0 : grouped.groups[c - 1].end);
  return CutVector(grouped.original_length, group_cuts.k(), std::move(cuts));
}

PartitionResult balance_signed(const Sequence& seq, std::size_t k, const BalanceOptions& options) {
  if (k == 0) throw ValidationError("k must be positive");
  const GroupedSequence grouped = group_blocks(seq);

  std::vector<double> sizes = grouped.sizes;
  for (double& c : sizes) c = std::clamp(c, 0.0, 1.0);  // rounding noise only
  const Sequence reduced = Sequence::scalars(std::move(sizes), BoundKind::unit_interval);

  BalanceOptions inner_options = options;
  inner_options.init.reset();  // an init over original positions has no meaning here
  const PartitionResult inner = balance(sum_functional(reduced), k, inner_options);
  return remeasure(seq, expand_cuts(grouped, inner.cuts), inner);
}

PartitionResult balance_symmetric(const Sequence& seq, std::size_t k,
                                  const BalanceOptions& options) {
  if (seq.is_vector()) throw ValidationError("balance_symmetric needs a scalar sequence");
  require_bound(seq.values(), BoundKind::symmetric);
  if (seq.total() >= 0.0) return balance_signed(seq, k, options);

  std::vector<double> negated(seq.values().begin(), seq.values().end());
  for (double& a : negated) a = -a;
  const PartitionResult inner =
      balance_signed(Sequence::scalars(std::move(negated), BoundKind::symmetric), k, options);
  return remeasure(seq, inner.cuts, inner);
}

}  // namespace blockpart
