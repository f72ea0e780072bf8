#include "blockpart/functionals.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "blockpart/error.hpp"

namespace blockpart {

SizeFunctional::SizeFunctional(std::string label, std::size_t n, Evaluator evaluator,
                               Conditions declared)
    : label_(std::move(label)), n_(n), evaluator_(std::move(evaluator)), declared_(declared) {
  if (!evaluator_) throw ValidationError("size functional needs an evaluator");
}

double SizeFunctional::operator()(std::size_t begin, std::size_t end) const {
  if (begin > end || end > n_) {
    throw ValidationError("interval [" + std::to_string(begin) + ", " + std::to_string(end) +
                          ") outside [0, " + std::to_string(n_) + "]");
  }
  return evaluator_(begin, end);
}

std::vector<double> SizeFunctional::sizes(const CutVector& cv) const {
  if (cv.n() != n_) throw ValidationError("cut vector length does not match the functional");
  std::vector<double> out;
  out.reserve(cv.k());
  for (std::size_t i = 0; i < cv.k(); ++i) out.push_back((*this)(cv.block(i)));
  return out;
}

SizeFunctional sum_functional(const Sequence& seq) {
  if (seq.is_vector()) throw ValidationError("sum functional needs a scalar sequence");
  auto sums = std::make_shared<const PrefixSums>(seq.values());
  const auto values = seq.values();
  const bool unit = std::all_of(values.begin(), values.end(),
                                [](double a) { return a >= 0.0 && a <= 1.0; });
  Conditions declared;
  if (unit) declared = {true, true, true};
  return SizeFunctional(
      "sum", seq.size(), [sums](std::size_t i, std::size_t j) { return sums->range(i, j); },
      declared);
}

namespace {

struct CoordinatePrefix {
  std::size_t dim;
  std::vector<double> sums;  // (n+1) x dim

  double diff(std::size_t i, std::size_t j, std::size_t c) const {
    // Coordinates are non-negative, so any negative difference is rounding.
    return std::max(0.0, sums[j * dim + c] - sums[i * dim + c]);
  }
};

}  // namespace

SizeFunctional lp_norm_functional(const Sequence& seq, double p) {
  if (!seq.is_vector()) throw ValidationError("lp functional needs a vector sequence");
  if (!(p >= 1.0)) throw ValidationError("l_p exponent must be >= 1");
  const std::size_t d = seq.dim();
  const std::size_t n = seq.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (double c : seq.vector(i)) acc += std::pow(c, p);
    const double norm = std::pow(acc, 1.0 / p);
    if (norm > 1.0 + 1e-12) throw BoundError(i, norm, "l_p norm <= 1");
  }

  auto table = std::make_shared<CoordinatePrefix>();
  table->dim = d;
  table->sums.assign((n + 1) * d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = seq.vector(i);
    for (std::size_t c = 0; c < d; ++c) table->sums[(i + 1) * d + c] = table->sums[i * d + c] + v[c];
  }
  std::shared_ptr<const CoordinatePrefix> shared = std::move(table);

  std::string label = "lp:";
  {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), p);
    label.append(buf, ptr);
  }
  return SizeFunctional(
      std::move(label), n,
      [shared, p](std::size_t i, std::size_t j) {
        if (p == 1.0) {
          double acc = 0.0;
          for (std::size_t c = 0; c < shared->dim; ++c) acc += shared->diff(i, j, c);
          return acc;
        }
        double acc = 0.0;
        for (std::size_t c = 0; c < shared->dim; ++c) acc += std::pow(shared->diff(i, j, c), p);
        return std::pow(acc, 1.0 / p);
      },
      Conditions{true, true, true});
}

SizeFunctional lp_norm_functional(const Sequence& seq) {
  return lp_norm_functional(seq, seq.norm_p());
}

SizeFunctional abs_sum_functional(const Sequence& seq) {
  if (seq.is_vector()) throw ValidationError("abs-sum functional needs a scalar sequence");
  require_bound(seq.values(), BoundKind::symmetric);
  auto sums = std::make_shared<const PrefixSums>(seq.values());
  return SizeFunctional(
      "abs-sum", seq.size(),
      [sums](std::size_t i, std::size_t j) { return std::abs(sums->range(i, j)); },
      Conditions{true, false, true});
}

SizeFunctional table_functional(std::string label, std::vector<std::vector<double>> table,
                                Conditions declared) {
  if (table.empty()) throw ValidationError("size table needs at least one row");
  const std::size_t n = table.size() - 1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (table[i].size() != n - i + 1) {
      throw ValidationError("size table row " + std::to_string(i) + " must have " +
                            std::to_string(n - i + 1) + " entries");
    }
  }
  auto shared = std::make_shared<const std::vector<std::vector<double>>>(std::move(table));
  return SizeFunctional(
      std::move(label), n,
      [shared](std::size_t i, std::size_t j) { return (*shared)[i][j - i]; }, declared);
}

std::optional<FunctionalSpec> parse_functional(const std::string& label) {
  if (label == "sum") return FunctionalSpec{FunctionalSpec::Kind::sum, 1.0};
  if (label == "abs-sum") return FunctionalSpec{FunctionalSpec::Kind::abs_sum, 1.0};
  if (label.rfind("lp:", 0) == 0) {
    const std::string rest = label.substr(3);
    char* end = nullptr;
    const double p = std::strtod(rest.c_str(), &end);
    if (rest.empty() || end != rest.c_str() + rest.size() || !(p >= 1.0) || !std::isfinite(p)) {
      return std::nullopt;
    }
    return FunctionalSpec{FunctionalSpec::Kind::lp, p};
  }
  return std::nullopt;
}

SizeFunctional make_functional(const FunctionalSpec& spec, const Sequence& seq) {
  switch (spec.kind) {
    case FunctionalSpec::Kind::sum:
      return sum_functional(seq);
    case FunctionalSpec::Kind::abs_sum:
      return abs_sum_functional(seq);
    case FunctionalSpec::Kind::lp:
      return lp_norm_functional(seq, spec.p);
  }
  throw ValidationError("unknown functional");
}

ConditionReport check_conditions(const SizeFunctional& s, double tol) {
  ConditionReport report;
  report.holds = {true, true, true};
  const std::size_t n = s.length();

  auto record = [&](std::optional<ConditionWitness>& slot, bool& flag, ConditionWitness w) {
    if (!slot) slot = w;
    if (!report.witness) report.witness = w;
    flag = false;
  };

  auto check_pair = [&](Interval smaller, Interval larger) {
    ++report.pairs_tested;
    const double a = s(smaller);
    const double b = s(larger);
    const ConditionWitness w{smaller, larger, a, b};
    if (b < a - tol || b > a + 1.0 + tol) {
      record(report.unit_growth_witness, report.holds.unit_growth, w);
    }
    if (std::abs(b - a) > 1.0 + tol) {
      record(report.unit_change_witness, report.holds.unit_change, w);
    }
  };

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i; j <= n; ++j) {
      ++report.blocks_tested;
      const Interval b{i, j};
      const double v = s(b);
      const bool ok = (i == j) ? std::abs(v) <= tol : v >= -tol;
      if (!ok) record(report.nonnegative_witness, report.holds.nonnegative, {b, b, v, v});
      if (j < n) check_pair(b, {i, j + 1});
      if (i > 0) check_pair(b, {i - 1, j});
    }
  }
  return report;
}

}  // namespace blockpart
