#include "blockpart/streaming.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blockpart/balancer.hpp"
#include "blockpart/error.hpp"
#include "blockpart/functionals.hpp"

namespace blockpart {

std::string_view to_string(StreamBranch b) {
  switch (b) {
    case StreamBranch::trivial_zero:
      return "trivial_zero";
    case StreamBranch::constructive:
      return "constructive";
    case StreamBranch::exhausted:
      return "exhausted";
  }
  return "unknown";
}

std::string_view to_string(HorizonRule r) {
  switch (r) {
    case HorizonRule::at_least:
      return "at_least";
    case HorizonRule::at_most:
      return "at_most";
  }
  return "unknown";
}

namespace {

// S[j] has reached the threshold for horizon k under `rule`.
bool reached(double partial, double a, std::size_t k, HorizonRule rule) {
  const double ka = static_cast<double>(k) * a;
  return rule == HorizonRule::at_least ? partial >= ka : partial > ka - 1.0;
}

std::size_t horizon_in(const std::vector<double>& sums, double a, std::size_t k,
                       HorizonRule rule) {
  for (std::size_t j = 0; j < sums.size(); ++j) {
    if (reached(sums[j], a, k, rule)) return j;
  }
  std::ostringstream os;
  os << "partial sums reach " << sums.back() << " but horizon k=" << k << " needs "
     << (rule == HorizonRule::at_least ? ">= " : "> ")
     << (rule == HorizonRule::at_least ? static_cast<double>(k) * a
                                        : static_cast<double>(k) * a - 1.0);
  throw HorizonExhausted(os.str());
}

void require_target(double a) {
  if (!std::isfinite(a) || a < 0.0) throw ValidationError("target size must be finite and >= 0");
}

class UnitBuffer {
 public:
  explicit UnitBuffer(ElementSource& source) : source_(source) {}

  bool pull() {
    auto v = source_.next();
    if (!v) return false;
    const double x = *v;
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) throw BoundError(values_.size(), x, "[0,1]");
    values_.push_back(x);
    sums_.push_back(sums_.back() + x);
    return true;
  }

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& sums() const { return sums_; }

 private:
  ElementSource& source_;
  std::vector<double> values_;
  std::vector<double> sums_{0.0};
};

}  // namespace

std::size_t choose_horizon(const PrefixSums& sums, double a, std::size_t k, HorizonRule rule) {
  require_target(a);
  if (k == 0) throw ValidationError("k must be positive");
  if (rule == HorizonRule::at_most && !(static_cast<double>(k) * a > 1.0)) {
    throw PreconditionError("the at-most horizon rule needs k * a > 1");
  }
  return horizon_in(sums.data(), a, k, rule);
}

StreamPlan stream_partition(ElementSource& source, double a, const StreamOptions& options,
                            const BlockSink& sink) {
  require_target(a);
  if (options.k_max == 0) throw ValidationError("k_max must be positive");

  UnitBuffer buffer(source);
  StreamPlan plan;
  plan.target = a;
  std::size_t emitted = 0;
  auto emit = [&](EmittedBlock b) {
    sink(b);
    ++emitted;
    return options.emit_limit != 0 && emitted >= options.emit_limit;
  };
  auto finish = [&]() {
    plan.consumed = buffer.values().size();
    return plan;
  };

  if (a == 0.0) {
    plan.branch = StreamBranch::trivial_zero;
    if (emit({0, 0, 0.0})) return finish();
    while (buffer.pull()) {
      const std::size_t i = buffer.values().size() - 1;
      if (emit({i, i + 1, buffer.values()[i]})) break;
    }
    return finish();
  }

  plan.branch = StreamBranch::exhausted;
  for (std::size_t k = 1; k <= options.k_max; ++k) {
    if (options.rule == HorizonRule::at_most && !(static_cast<double>(k) * a > 1.0)) continue;
    while (!reached(buffer.sums().back(), a, k, options.rule)) {
      if (!buffer.pull()) horizon_in(buffer.sums(), a, k, options.rule);  // throws
    }
    const std::size_t n_k = horizon_in(buffer.sums(), a, k, options.rule);
    const std::vector<double> prefix(buffer.values().begin(), buffer.values().begin() + n_k);
    const PartitionResult part = balance(Sequence::scalars(prefix, BoundKind::unit_interval), k);

    plan.horizon = n_k;
    plan.horizon_cuts = part.cuts;
    plan.prefix_sizes = part.sizes;
    if (*std::min_element(part.sizes.begin(), part.sizes.end()) <= a + options.tol) {
      plan.branch = StreamBranch::constructive;
      plan.k_found = k;
      break;
    }
  }

  if (!plan.horizon_cuts) return finish();
  const CutVector& cuts = *plan.horizon_cuts;
  for (std::size_t i = 0; i < cuts.k(); ++i) {
    const Interval b = cuts.block(i);
    if (emit({b.begin, b.end, plan.prefix_sizes[i]})) return finish();
  }
  if (plan.branch != StreamBranch::constructive) return finish();

  const double cap =
      *std::min_element(plan.prefix_sizes.begin(), plan.prefix_sizes.end()) + 1.0 + options.tol;
  std::size_t begin = plan.horizon;
  std::size_t pos = plan.horizon;
  double size = 0.0;
  while (true) {
    if (pos == buffer.values().size() && !buffer.pull()) break;
    const double v = buffer.values()[pos];
    if (pos > begin && size + v > cap) {
      if (emit({begin, pos, size})) break;
      begin = pos;
      size = 0.0;
    }
    size += v;
    ++pos;
  }
  return finish();
}

namespace {

// Yields group sizes in (0, 1]: each group ends at the first position where
// the running sum since the previous group end becomes positive.
class GroupingSource final : public ElementSource {
 public:
  explicit GroupingSource(ElementSource& source) : source_(source) {}

  std::optional<double> next() override {
    if (pending_) {
      auto v = pending_;
      pending_.reset();
      return v;
    }
    return pull_group();
  }

  bool prime() {
    pending_ = pull_group();
    return pending_.has_value();
  }

  // Original start position of group g (g may equal the number of groups).
  std::size_t start(std::size_t g) const { return g == 0 ? 0 : ends_[g - 1]; }
  std::size_t consumed() const { return consumed_; }

 private:
  std::optional<double> pull_group() {
    double running = 0.0;
    while (auto v = source_.next()) {
      const double x = *v;
      if (!std::isfinite(x) || x > 1.0) throw BoundError(consumed_, x, "(-inf,1]");
      ++consumed_;
      running += x;
      if (running > 0.0) {
        ends_.push_back(consumed_);
        return std::min(running, 1.0);
      }
    }
    return std::nullopt;
  }

  ElementSource& source_;
  std::optional<double> pending_;
  std::vector<std::size_t> ends_;
  std::size_t consumed_ = 0;
};

}  // namespace

StreamPlan stream_signed(ElementSource& source, double a, const StreamOptions& options,
                         const BlockSink& sink) {
  require_target(a);
  GroupingSource groups(source);
  if (!groups.prime()) {
    throw HorizonExhausted("partial sums never become positive within the available prefix");
  }
  StreamPlan plan = stream_partition(groups, a, options, [&](const EmittedBlock& b) {
    sink(EmittedBlock{groups.start(b.begin), groups.start(b.end), b.size});
  });
  if (plan.horizon_cuts) {
    std::vector<std::size_t> cuts;
    for (std::size_t c : plan.horizon_cuts->cuts()) cuts.push_back(groups.start(c));
    plan.horizon_cuts =
        CutVector(groups.start(plan.horizon), plan.horizon_cuts->k(), std::move(cuts));
    plan.horizon = groups.start(plan.horizon);
  }
  plan.consumed = groups.consumed();
  return plan;
}

StreamResult stream_partition(std::span<const double> values, double a,
                              const StreamOptions& options) {
  SpanSource source(values);
  StreamResult out;
  out.plan = stream_partition(source, a, options,
                              [&](const EmittedBlock& b) { out.blocks.push_back(b); });
  return out;
}

StreamResult stream_signed(std::span<const double> values, double a,
                           const StreamOptions& options) {
  SpanSource source(values);
  StreamResult out;
  out.plan = stream_signed(source, a, options,
                           [&](const EmittedBlock& b) { out.blocks.push_back(b); });
  return out;
}

}  // namespace blockpart
