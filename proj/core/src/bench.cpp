#include "blockpart/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "blockpart/balancer.hpp"
#include "blockpart/error.hpp"
#include "blockpart/functionals.hpp"

namespace blockpart {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t cubic_bound(std::size_t n, std::size_t k) { return 8 * k * n * n * n; }

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t k, std::size_t trial) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ n);
  h = splitmix64(h ^ k);
  return splitmix64(h ^ trial);
}

std::vector<double> uniform_sequence(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (double& v : out) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return out;
}

std::optional<double> loglog_slope(const std::vector<std::pair<double, double>>& points) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0 && y > 0.0)) continue;
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  if (m < 2) return std::nullopt;
  const double denom = static_cast<double>(m) * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (static_cast<double>(m) * sxy - sx * sy) / denom;
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>> parse_grid(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  auto parse_uint = [](std::string_view s, std::size_t& v) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
  };
  while (start <= text.size()) {
    const auto comma = std::min(text.find(',', start), text.size());
    const std::string_view item(text.data() + start, comma - start);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    std::size_t n = 0, k = 0;
    if (!parse_uint(item.substr(0, colon), n) || !parse_uint(item.substr(colon + 1), k)) {
      return std::nullopt;
    }
    if (n == 0 || k == 0) return std::nullopt;
    out.emplace_back(n, k);
    start = comma + 1;
  }
  return out;
}

BenchReport run_bench(const BenchOptions& options) {
  if (options.trials == 0) throw ValidationError("bench needs at least one trial");
  BenchReport report;
  report.seed = options.seed;
  report.trials = options.trials;
  report.init = options.init;

  for (const auto& [n, k] : options.grid) {
    if (n == 0 || k == 0) throw ValidationError("bench grid needs n, k >= 1");
    BenchCell cell{n, k, 0.0, 0, cubic_bound(n, k)};
    double total = 0.0;
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
      const std::uint64_t ts = trial_seed(options.seed, n, k, trial);
      auto values = uniform_sequence(ts, n);
      const Sequence seq = Sequence::scalars(values, BoundKind::unit_interval);
      BalanceOptions bo;
      if (options.init == BenchInit::first_block) bo.init = CutVector::all_in_first(n, k);
      const PartitionResult r = balance(sum_functional(seq), k, bo);
      total += static_cast<double>(r.iterations);
      cell.max_iterations = std::max(cell.max_iterations, r.iterations);

      std::string reason;
      if (r.termination != Termination::converged) {
        reason = "balancer stopped with " + std::string(to_string(r.termination));
      } else if (r.iterations > cell.bound) {
        reason = "iterations exceed 8 k n^3";
      } else if (r.spread > 1.0 + kTolerance) {
        reason = "spread above 1";
      }
      if (!reason.empty() && !report.violation) {
        report.violation = BenchViolation{n, k, trial, ts, std::move(values), r.iterations, reason};
      }
    }
    cell.mean_iterations = total / static_cast<double>(options.trials);
    report.cells.push_back(cell);
  }

  std::map<std::size_t, std::vector<std::pair<double, double>>> by_k;
  for (const auto& c : report.cells) {
    by_k[c.k].emplace_back(static_cast<double>(c.n), c.mean_iterations);
  }
  for (const auto& [k, pts] : by_k) {
    if (auto slope = loglog_slope(pts)) {
      report.exponent_by_k[k] = *slope;
      report.max_exponent = std::max(report.max_exponent.value_or(*slope), *slope);
    }
  }
  return report;
}

}  // namespace blockpart
