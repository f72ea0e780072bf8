#pragma once

// Block-size functionals s[i, j) defined on index intervals, and an
// exhaustive checker for the three regularity conditions the partitioning
// algorithms rely on:
//
//   nonnegative  s[i,i) = 0 and s[i,j) >= 0
//   unit_growth  s(B1) <= s(B2) <= s(B1) + 1 when B2 extends B1 by one element
//   unit_change  |s(B1) - s(B2)| <= 1 when B1 and B2 differ by one element
//
// The balancer needs nonnegative + unit_growth; the spread-2 solver needs
// nonnegative + unit_change.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blockpart/sequence.hpp"

namespace blockpart {

struct Conditions {
  bool nonnegative = false;
  bool unit_growth = false;
  bool unit_change = false;

  friend bool operator==(const Conditions&, const Conditions&) = default;
};

class SizeFunctional {
 public:
  using Evaluator = std::function<double(std::size_t, std::size_t)>;

  SizeFunctional(std::string label, std::size_t n, Evaluator evaluator, Conditions declared);

  // s[begin, end); requires begin <= end <= n.
  double operator()(std::size_t begin, std::size_t end) const;
  double operator()(Interval b) const { return (*this)(b.begin, b.end); }

  std::size_t length() const noexcept { return n_; }
  const std::string& label() const noexcept { return label_; }
  const Conditions& declared() const noexcept { return declared_; }

  std::vector<double> sizes(const CutVector& cv) const;

 private:
  std::string label_;
  std::size_t n_;
  Evaluator evaluator_;
  Conditions declared_;
};

// S[j] - S[i]. Declares all three conditions when the elements lie in
// [0, 1], none otherwise (signed sums can go negative).
SizeFunctional sum_functional(const Sequence& seq);

// ||sum of the block's vectors||_p from per-coordinate prefix sums.
SizeFunctional lp_norm_functional(const Sequence& seq, double p);
// Uses the exponent the sequence was validated with.
SizeFunctional lp_norm_functional(const Sequence& seq);

// |S[j] - S[i]|; requires |a_i| <= 1.
SizeFunctional abs_sum_functional(const Sequence& seq);

// Backed by an explicit table: table[i][j - i] = s[i, j). Used for tests and
// for functionals that are not derived from a sequence.
SizeFunctional table_functional(std::string label,
                                std::vector<std::vector<double>> table,
                                Conditions declared = {});

// Parses "sum", "abs-sum", "lp:<p>". Returns std::nullopt on anything else.
struct FunctionalSpec {
  enum class Kind { sum, abs_sum, lp } kind = Kind::sum;
  double p = 1.0;
};
std::optional<FunctionalSpec> parse_functional(const std::string& label);
SizeFunctional make_functional(const FunctionalSpec& spec, const Sequence& seq);

struct ConditionWitness {
  Interval first;
  Interval second;
  double first_size = 0.0;
  double second_size = 0.0;
};

struct ConditionReport {
  Conditions holds;
  std::optional<ConditionWitness> nonnegative_witness;
  std::optional<ConditionWitness> unit_growth_witness;
  std::optional<ConditionWitness> unit_change_witness;
  std::size_t blocks_tested = 0;
  std::size_t pairs_tested = 0;
  // First violation in enumeration order, whichever condition it breaks.
  std::optional<ConditionWitness> witness;
};

// Exhaustive over all (n+1)(n+2)/2 intervals and all n(n+1) pairs that
// differ by moving one endpoint by one position. Tolerance 1e-9.
ConditionReport check_conditions(const SizeFunctional& s, double tol = kTolerance);

}  // namespace blockpart
