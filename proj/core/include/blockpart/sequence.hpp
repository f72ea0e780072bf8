#pragma once

// Core value types: sequences, blocks, cut vectors, partition results.
//
// Positions follow the half-open interval convention: element e (0-based)
// occupies [e, e+1), and a cut value c sits between element c-1 and element
// c. A cut vector (c_1, ..., c_{k-1}) with implicit c_0 = 0 and c_k = n
// describes blocks [c_{i-1}, c_i). These cut values coincide with the
// 1-based "block i = (c_{i-1}, c_i]" reading, so no conversion is needed
// when moving between the two conventions.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blockpart {

inline constexpr double kTolerance = 1e-9;

enum class BoundKind {
  unit_interval,  // a in [0, 1]
  upper_bounded,  // a <= 1
  symmetric,      // a in [-1, 1]
  unbounded,
};

std::string_view to_string(BoundKind kind);
std::optional<BoundKind> parse_bound_kind(std::string_view name);

// Throws BoundError naming the first element outside `kind`.
void require_bound(std::span<const double> values, BoundKind kind);

class Sequence {
 public:
  // Scalar sequence; every element is validated against `bound`.
  static Sequence scalars(std::vector<double> values,
                          BoundKind bound = BoundKind::unit_interval);

  // Vectors of dimension d >= 1 with non-negative coordinates and
  // l_p norm at most 1 (p >= 1).
  static Sequence vectors(std::vector<std::vector<double>> values, double p);

  std::size_t size() const noexcept { return length_; }
  bool is_vector() const noexcept { return dim_ > 0; }
  std::size_t dim() const noexcept { return dim_; }
  BoundKind bound() const noexcept { return bound_; }
  double norm_p() const noexcept { return norm_p_; }

  // Scalar elements; empty for vector sequences.
  std::span<const double> values() const noexcept { return scalars_; }
  double operator[](std::size_t i) const { return scalars_.at(i); }

  // Coordinates of vector element i.
  std::span<const double> vector(std::size_t i) const;

  double total() const;

 private:
  Sequence() = default;

  std::size_t length_ = 0;
  std::size_t dim_ = 0;
  BoundKind bound_ = BoundKind::unbounded;
  double norm_p_ = 0.0;
  std::vector<double> scalars_;
  std::vector<double> coords_;  // row-major, length_ * dim_
};

// Half-open index interval [begin, end).
struct Interval {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - begin; }
  bool empty() const noexcept { return begin == end; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

class CutVector {
 public:
  // Validates 0 <= cuts[0] <= ... <= cuts[k-2] <= n and cuts.size() == k-1.
  CutVector(std::size_t n, std::size_t k, std::vector<std::size_t> cuts);

  // The k-partition that puts every element in block 0.
  static CutVector all_in_first(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  const std::vector<std::size_t>& cuts() const noexcept { return cuts_; }

  // Boundary b with boundary(0) == 0 and boundary(k) == n.
  std::size_t boundary(std::size_t b) const;
  Interval block(std::size_t i) const;
  std::size_t count(std::size_t i) const { return block(i).length(); }

  friend bool operator==(const CutVector&, const CutVector&) = default;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<std::size_t> cuts_;
};

std::vector<Interval> cut_to_blocks(std::size_t n, const CutVector& cv);

class PrefixSums {
 public:
  explicit PrefixSums(std::span<const double> values);

  // S[j] = a_0 + ... + a_{j-1}; S[0] = 0.
  double operator[](std::size_t j) const { return sums_[j]; }
  double range(std::size_t begin, std::size_t end) const {
    return sums_[end] - sums_[begin];
  }
  std::size_t length() const noexcept { return sums_.size() - 1; }
  double total() const noexcept { return sums_.back(); }
  const std::vector<double>& data() const noexcept { return sums_; }

 private:
  std::vector<double> sums_;
};

enum class Termination { converged, iteration_cap, solver_fallback };

std::string_view to_string(Termination t);

struct PartitionResult {
  CutVector cuts;
  std::vector<double> sizes;
  double spread = 0.0;
  std::size_t iterations = 0;
  Termination termination = Termination::converged;
  std::string diagnostic;
};

// max - min; throws ValidationError on an empty list.
double spread(std::span<const double> sizes);

// Prefix-sum construction with every block size in [S/k - 1, S/k + 1].
// Cut h is the smallest j with S[j] >= h*S/k - 1/2. Elements must lie in
// [0, 1].
PartitionResult quick_partition(const Sequence& seq, std::size_t k);

}  // namespace blockpart
