#include "blockpart/balancer.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "blockpart/error.hpp"

namespace blockpart {

namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

std::size_t default_iteration_cap(std::size_t k, std::size_t n) {
  std::size_t cap = saturating_mul(8, k);
  cap = saturating_mul(cap, n);
  cap = saturating_mul(cap, n);
  cap = saturating_mul(cap, n);
  return cap > std::numeric_limits<std::size_t>::max() - 1000 ? cap : cap + 1000;
}

std::size_t potential(const CutVector& cv, std::size_t p) {
  if (p >= cv.k()) throw ValidationError("block index out of range");
  std::size_t f = 0;
  for (std::size_t i = 0; i < cv.k(); ++i) f += distance(i, p) * cv.count(i);
  return f;
}

std::size_t maximal_block(const std::vector<double>& sizes) {
  if (sizes.empty()) throw ValidationError("no blocks");
  return static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
}

BalancerState make_state(const CutVector& cuts, const SizeFunctional& s) {
  BalancerState state{cuts, s.sizes(cuts), 0, 0, std::nullopt};
  state.p = maximal_block(state.sizes);
  return state;
}

BalancerState balance_step(const BalancerState& state, const SizeFunctional& s, double tol) {
  const auto& sizes = state.sizes;
  const std::size_t k = sizes.size();
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  if (!(*hi > *lo + 1.0 + tol)) {
    throw PreconditionError("balance_step called on a partition that is already balanced");
  }
  const std::size_t p = state.p;
  const double m = *lo;

  std::size_t q = k;
  for (std::size_t i = 0; i < k; ++i) {
    if (sizes[i] != m) continue;
    if (q == k || distance(i, p) < distance(q, p)) q = i;
  }
  if (q == p) throw InvariantViolation("fixed maximal block is also minimal");

  const std::size_t h = p < q ? q - 1 : q + 1;
  if (state.cuts.count(h) == 0) {
    std::ostringstream os;
    os << "block " << h << " between maximal block " << p << " and minimal block " << q
       << " is empty; the size functional does not grow by at most 1 per element";
    throw InvariantViolation(os.str());
  }

  std::vector<std::size_t> cuts = state.cuts.cuts();
  if (p < q) {
    --cuts[q - 1];  // last element of B_h joins B_q
  } else {
    ++cuts[q];  // first element of B_h joins B_q
  }

  BalancerState next{CutVector(state.cuts.n(), k, std::move(cuts)), sizes, p,
                     state.iterations + 1, Move{h, q}};
  next.sizes[h] = s(next.cuts.block(h));
  next.sizes[q] = s(next.cuts.block(q));
  return next;
}

CutVector threshold_partition(const SizeFunctional& s, std::size_t k) {
  if (k == 0) throw ValidationError("k must be positive");
  const std::size_t n = s.length();
  const double total = s(0, n);
  std::vector<std::size_t> cuts;
  cuts.reserve(k - 1);
  std::size_t j = 0;
  for (std::size_t h = 1; h < k; ++h) {
    const double threshold = static_cast<double>(h) * total / static_cast<double>(k) - 0.5;
    while (j < n && s(0, j) < threshold) ++j;
    cuts.push_back(j);
  }
  return CutVector(n, k, std::move(cuts));
}

PartitionResult balance(const SizeFunctional& s, std::size_t k, const BalanceOptions& options,
                        BalanceTrace* trace) {
  if (k == 0) throw ValidationError("k must be positive");
  const std::size_t n = s.length();
  if (n == 0) throw ValidationError("cannot partition an empty sequence");

  CutVector init = options.init ? *options.init : threshold_partition(s, k);
  if (init.n() != n || init.k() != k) {
    throw ValidationError("initial cut vector does not match n and k");
  }
  const std::size_t cap = options.iteration_cap.value_or(default_iteration_cap(k, n));

  BalancerState state = make_state(init, s);
  BalancerState best = state;
  double best_spread = spread(state.sizes);
  std::size_t phase = 0;

  auto finish = [&](const BalancerState& st, Termination t, std::string diagnostic) {
    if (trace) trace->phase_lengths.push_back(phase);
    const double sp = spread(st.sizes);
    return PartitionResult{st.cuts, st.sizes, sp, state.iterations, t, std::move(diagnostic)};
  };

  while (true) {
    const auto [lo, hi] = std::minmax_element(state.sizes.begin(), state.sizes.end());
    if (*hi <= *lo + 1.0 + options.tol) return finish(state, Termination::converged, {});
    if (state.iterations >= cap) {
      std::ostringstream os;
      os << "iteration cap " << cap << " reached with spread " << (*hi - *lo)
         << "; the functional may violate the unit-growth condition";
      return finish(best, Termination::iteration_cap, os.str());
    }

    const double max_before = *hi;
    const std::size_t pot_before = trace ? potential(state.cuts, state.p) : 0;
    BalancerState next = balance_step(state, s, options.tol);
    ++phase;
    if (trace) {
      trace->steps.push_back(TraceEntry{*next.last_move, state.p, pot_before,
                                        potential(next.cuts, state.p), max_before,
                                        *std::max_element(next.sizes.begin(), next.sizes.end())});
    }

    state = std::move(next);
    const double sp = spread(state.sizes);
    if (sp < best_spread) {
      best_spread = sp;
      best = state;
    }
    if (state.last_move->from == state.p) {
      // B_p shrank: go back to choosing a maximal block.
      if (trace) trace->phase_lengths.push_back(phase);
      phase = 0;
      state.p = maximal_block(state.sizes);
    }
  }
}

PartitionResult balance(const Sequence& seq, std::size_t k, const BalanceOptions& options) {
  if (seq.is_vector()) throw ValidationError("use an lp functional for vector sequences");
  require_bound(seq.values(), BoundKind::unit_interval);
  return balance(sum_functional(seq), k, options);
}

}  // namespace blockpart
