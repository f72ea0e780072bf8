#include "blockpart/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "blockpart/error.hpp"

namespace blockpart {

namespace {

std::string describe_position(std::size_t index, double value) {
  std::ostringstream os;
  os << "element " << index << " = " << value;
  return os.str();
}

bool within(double v, BoundKind kind) {
  if (!std::isfinite(v)) return false;
  switch (kind) {
    case BoundKind::unit_interval:
      return v >= 0.0 && v <= 1.0;
    case BoundKind::upper_bounded:
      return v <= 1.0;
    case BoundKind::symmetric:
      return v >= -1.0 && v <= 1.0;
    case BoundKind::unbounded:
      return true;
  }
  return false;
}

std::string bound_text(BoundKind kind) {
  switch (kind) {
    case BoundKind::unit_interval:
      return "[0,1]";
    case BoundKind::upper_bounded:
      return "(-inf,1]";
    case BoundKind::symmetric:
      return "[-1,1]";
    case BoundKind::unbounded:
      return "finite";
  }
  return "?";
}

}  // namespace

BoundError::BoundError(std::size_t index, double value, std::string bound)
    : Error(describe_position(index, value) + " violates bound " + bound),
      index_(index),
      value_(value),
      bound_(std::move(bound)) {}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::unit_interval:
      return "unit-interval";
    case BoundKind::upper_bounded:
      return "upper-bounded";
    case BoundKind::symmetric:
      return "symmetric";
    case BoundKind::unbounded:
      return "unbounded";
  }
  return "unknown";
}

std::optional<BoundKind> parse_bound_kind(std::string_view name) {
  for (auto kind : {BoundKind::unit_interval, BoundKind::upper_bounded,
                    BoundKind::symmetric, BoundKind::unbounded}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

void require_bound(std::span<const double> values, BoundKind kind) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!within(values[i], kind)) throw BoundError(i, values[i], bound_text(kind));
  }
}

Sequence Sequence::scalars(std::vector<double> values, BoundKind bound) {
  if (values.empty()) throw ValidationError("sequence must have at least one element");
  require_bound(values, bound);
  Sequence seq;
  seq.length_ = values.size();
  seq.bound_ = bound;
  seq.scalars_ = std::move(values);
  return seq;
}

Sequence Sequence::vectors(std::vector<std::vector<double>> values, double p) {
  if (values.empty()) throw ValidationError("sequence must have at least one element");
  if (!(p >= 1.0)) throw ValidationError("l_p exponent must be >= 1");
  const std::size_t d = values.front().size();
  if (d == 0) throw ValidationError("vector elements need dimension >= 1");

  Sequence seq;
  seq.length_ = values.size();
  seq.dim_ = d;
  seq.norm_p_ = p;
  seq.bound_ = BoundKind::unit_interval;
  seq.coords_.reserve(values.size() * d);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& v = values[i];
    if (v.size() != d) {
      throw ValidationError("element " + std::to_string(i) + " has dimension " +
                            std::to_string(v.size()) + ", expected " + std::to_string(d));
    }
    double acc = 0.0;
    for (double c : v) {
      if (!std::isfinite(c) || c < 0.0) throw BoundError(i, c, "coordinates >= 0");
      acc += std::pow(c, p);
    }
    const double norm = std::pow(acc, 1.0 / p);
    if (norm > 1.0 + 1e-12) throw BoundError(i, norm, "l_p norm <= 1");
    seq.coords_.insert(seq.coords_.end(), v.begin(), v.end());
  }
  return seq;
}

std::span<const double> Sequence::vector(std::size_t i) const {
  if (!is_vector() || i >= length_) throw ValidationError("vector element out of range");
  return std::span<const double>(coords_).subspan(i * dim_, dim_);
}

double Sequence::total() const {
  return std::accumulate(scalars_.begin(), scalars_.end(), 0.0);
}

CutVector::CutVector(std::size_t n, std::size_t k, std::vector<std::size_t> cuts)
    : n_(n), k_(k), cuts_(std::move(cuts)) {
  if (k_ == 0) throw ValidationError("k must be positive");
  if (cuts_.size() != k_ - 1) {
    throw ValidationError("cut vector for k=" + std::to_string(k_) + " needs " +
                          std::to_string(k_ - 1) + " cuts, got " +
                          std::to_string(cuts_.size()));
  }
  std::size_t prev = 0;
  for (std::size_t c : cuts_) {
    if (c < prev || c > n_) {
      throw ValidationError("cuts must be non-decreasing within [0, " + std::to_string(n_) +
                            "]");
    }
    prev = c;
  }
}

CutVector CutVector::all_in_first(std::size_t n, std::size_t k) {
  if (k == 0) throw ValidationError("k must be positive");
  return CutVector(n, k, std::vector<std::size_t>(k - 1, n));
}

std::size_t CutVector::boundary(std::size_t b) const {
  if (b == 0) return 0;
  if (b == k_) return n_;
  return cuts_.at(b - 1);
}

Interval CutVector::block(std::size_t i) const {
  if (i >= k_) throw ValidationError("block index out of range");
  return {boundary(i), boundary(i + 1)};
}

std::vector<Interval> cut_to_blocks(std::size_t n, const CutVector& cv) {
  if (cv.n() != n) throw ValidationError("cut vector length does not match the sequence");
  std::vector<Interval> blocks;
  blocks.reserve(cv.k());
  for (std::size_t i = 0; i < cv.k(); ++i) blocks.push_back(cv.block(i));
  return blocks;
}

PrefixSums::PrefixSums(std::span<const double> values) : sums_(values.size() + 1, 0.0) {
  for (std::size_t j = 0; j < values.size(); ++j) sums_[j + 1] = sums_[j] + values[j];
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::converged:
      return "converged";
    case Termination::iteration_cap:
      return "iteration_cap";
    case Termination::solver_fallback:
      return "solver_fallback";
  }
  return "unknown";
}

double spread(std::span<const double> sizes) {
  if (sizes.empty()) throw ValidationError("spread of an empty size list");
  const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
  return *hi - *lo;
}

PartitionResult quick_partition(const Sequence& seq, std::size_t k) {
  if (k == 0) throw ValidationError("k must be positive");
  if (seq.is_vector()) throw ValidationError("quick_partition needs a scalar sequence");
  require_bound(seq.values(), BoundKind::unit_interval);

  const PrefixSums sums(seq.values());
  const std::size_t n = seq.size();
  const double total = sums.total();

  std::vector<std::size_t> cuts;
  cuts.reserve(k - 1);
  std::size_t j = 0;
  for (std::size_t h = 1; h < k; ++h) {
    const double threshold = static_cast<double>(h) * total / static_cast<double>(k) - 0.5;
    while (j < n && sums[j] < threshold) ++j;
    cuts.push_back(j);
  }

  CutVector cv(n, k, std::move(cuts));
  std::vector<double> sizes;
  sizes.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto b = cv.block(i);
    sizes.push_back(sums.range(b.begin, b.end));
  }
  const double s = spread(sizes);
  return PartitionResult{std::move(cv), std::move(sizes), s, 0, Termination::converged, {}};
}

}  // namespace blockpart
