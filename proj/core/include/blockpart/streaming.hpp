#pragma once

// Partitioning of long (conceptually infinite) streams with divergent
// partial sums into blocks whose sizes satisfy
//
//   inf b <= a <= sup b <= inf b + 1
//
// for a target a >= 0. For k = 1, 2, ... the prefix up to the horizon n(k)
// (smallest index with k a <= S[n(k)] < k a + 1) is balanced into k blocks.
// Once some k gives a block of size <= a, those k blocks are emitted and the
// rest of the stream is cut greedily into maximal blocks of size
// <= min + 1. If no k up to k_max qualifies the plan reports `exhausted`
// instead of running the (non-constructive) limit argument.

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "blockpart/sequence.hpp"

namespace blockpart {

// Pull-based element source. next() returns std::nullopt at end of data.
class ElementSource {
 public:
  virtual ~ElementSource() = default;
  virtual std::optional<double> next() = 0;
};

class SpanSource final : public ElementSource {
 public:
  explicit SpanSource(std::span<const double> values) : values_(values) {}
  std::optional<double> next() override {
    if (pos_ >= values_.size()) return std::nullopt;
    return values_[pos_++];
  }

 private:
  std::span<const double> values_;
  std::size_t pos_ = 0;
};

enum class HorizonRule {
  at_least,  // k a <= S[n(k)] < k a + 1
  at_most,   // k a - 1 < S[n(k)] <= k a, only for k a > 1
};

enum class StreamBranch { trivial_zero, constructive, exhausted };

std::string_view to_string(StreamBranch b);
std::string_view to_string(HorizonRule r);

struct EmittedBlock {
  std::size_t begin = 0;
  std::size_t end = 0;
  double size = 0.0;
};

struct StreamPlan {
  double target = 0.0;
  std::optional<std::size_t> k_found;
  std::optional<CutVector> horizon_cuts;  // partition of the prefix [0, n(k))
  std::vector<double> prefix_sizes;
  std::size_t horizon = 0;  // n(k) of the last balanced prefix
  StreamBranch branch = StreamBranch::trivial_zero;
  std::size_t consumed = 0;  // elements pulled from the source
};

struct StreamOptions {
  std::size_t k_max = 64;
  // Stop after this many emitted blocks (0 = until the source ends).
  std::size_t emit_limit = 0;
  HorizonRule rule = HorizonRule::at_least;
  double tol = kTolerance;
};

using BlockSink = std::function<void(const EmittedBlock&)>;

// n(k) for the given rule over S[0..]. Throws HorizonExhausted if the prefix
// never reaches the threshold.
std::size_t choose_horizon(const PrefixSums& sums, double a, std::size_t k,
                           HorizonRule rule = HorizonRule::at_least);

// Elements must lie in [0, 1]. Closed blocks are passed to `sink` as soon as
// they are known; an incomplete trailing block is never emitted.
StreamPlan stream_partition(ElementSource& source, double a, const StreamOptions& options,
                            const BlockSink& sink);

// Elements <= 1. First groups the stream greedily into blocks of size in
// (0, 1] (cut at the first index where the running sum turns positive), then
// partitions the group sizes. Emitted positions refer to the original stream.
StreamPlan stream_signed(ElementSource& source, double a, const StreamOptions& options,
                         const BlockSink& sink);

struct StreamResult {
  StreamPlan plan;
  std::vector<EmittedBlock> blocks;
};

StreamResult stream_partition(std::span<const double> values, double a,
                              const StreamOptions& options = {});
StreamResult stream_signed(std::span<const double> values, double a,
                           const StreamOptions& options = {});

}  // namespace blockpart
