#include "blockpart/pl_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "blockpart/oracle.hpp"

namespace blockpart {

namespace {

constexpr double kDomainSlack = 1e-12;

}  // namespace

FractionalCut::FractionalCut(double n, std::vector<double> x) : n_(n), x_(std::move(x)) {
  if (!std::isfinite(n_) || n_ < 0.0) throw ValidationError("fractional cut needs n >= 0");
  double prev = 0.0;
  for (double& v : x_) {
    if (!std::isfinite(v) || v < prev - kDomainSlack || v > n_ + kDomainSlack) {
      throw ValidationError("fractional cut must be non-decreasing within [0, n]");
    }
    v = std::clamp(v, prev, n_);
    prev = v;
  }
}

double FractionalCut::boundary(std::size_t b) const {
  if (b == 0) return 0.0;
  if (b == k()) return n_;
  return x_.at(b - 1);
}

ExtendedSize::ExtendedSize(std::vector<std::vector<double>> table) : table_(std::move(table)) {
  if (table_.size() < 2) throw ValidationError("size table needs n >= 1");
  n_ = table_.size() - 1;
  for (std::size_t i = 0; i <= n_; ++i) {
    if (table_[i].size() != n_ - i + 1) throw ValidationError("size table row has wrong length");
    if (table_[i][0] != 0.0) throw ValidationError("size of an empty block must be 0");
    for (double v : table_[i]) {
      if (!std::isfinite(v) || v < 0.0) throw ValidationError("block sizes must be non-negative");
    }
  }
}

ExtendedSize ExtendedSize::from(const SizeFunctional& s) {
  const std::size_t n = s.length();
  std::vector<std::vector<double>> table(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    table[i].reserve(n - i + 1);
    for (std::size_t j = i; j <= n; ++j) table[i].push_back(s(i, j));
  }
  return ExtendedSize(std::move(table));
}

ExtendedSize::Value ExtendedSize::evaluate(double x, double y) const {
  const double n = static_cast<double>(n_);
  if (!(x >= -kDomainSlack && y <= n + kDomainSlack && x <= y + kDomainSlack)) {
    std::ostringstream os;
    os << "interval [" << x << ", " << y << ") outside 0 <= x <= y <= " << n_;
    throw ValidationError(os.str());
  }
  x = std::clamp(x, 0.0, n);
  y = std::clamp(y, 0.0, n);
  if (x > y) x = y;

  const std::size_t i0 = std::min(static_cast<std::size_t>(x), n_ - 1);
  const std::size_t j0 = std::min(static_cast<std::size_t>(y), n_ - 1);
  const double fx = x - static_cast<double>(i0);
  const double fy = y - static_cast<double>(j0);
  const double v00 = at(i0, j0);
  const double v11 = at(i0 + 1, j0 + 1);

  if (i0 < j0 && fx >= fy) {
    // Triangle (i0, j0), (i0+1, j0), (i0+1, j0+1).
    const double v10 = at(i0 + 1, j0);
    return {(1.0 - fx) * v00 + (fx - fy) * v10 + fy * v11, v10 - v00, v11 - v10};
  }
  // Triangle (i0, j0), (i0, j0+1), (i0+1, j0+1).
  const double v01 = at(i0, j0 + 1);
  return {(1.0 - fy) * v00 + (fy - fx) * v01 + fx * v11, v11 - v01, v01 - v00};
}

std::vector<double> size_vector(const ExtendedSize& es, const FractionalCut& x) {
  if (x.n() != static_cast<double>(es.n())) {
    throw ValidationError("fractional cut length does not match the size table");
  }
  std::vector<double> out;
  out.reserve(x.k());
  for (std::size_t i = 0; i < x.k(); ++i) out.push_back(es(x.boundary(i), x.boundary(i + 1)));
  return out;
}

namespace {

// Search state over the raw coordinates; x has k - 1 entries.
class DiagonalSearch {
 public:
  DiagonalSearch(const ExtendedSize& es, std::size_t k) : es_(es), k_(k), n_(static_cast<double>(es.n())) {}

  double boundary(const std::vector<double>& x, std::size_t b) const {
    if (b == 0) return 0.0;
    if (b == k_) return n_;
    return x[b - 1];
  }

  std::vector<double> sizes(const std::vector<double>& x) const {
    std::vector<double> out(k_);
    for (std::size_t i = 0; i < k_; ++i) out[i] = es_(boundary(x, i), boundary(x, i + 1));
    return out;
  }

  static double variance_sum(const std::vector<double>& s) {
    double mean = 0.0;
    for (double v : s) mean += v;
    mean /= static_cast<double>(s.size());
    double acc = 0.0;
    for (double v : s) acc += (v - mean) * (v - mean);
    return acc;
  }

  static double gap(const std::vector<double>& s) {
    const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
    return *hi - *lo;
  }

  void project(std::vector<double>& x) const {
    double prev = 0.0;
    for (double& v : x) {
      v = std::clamp(v, prev, n_);
      prev = v;
    }
  }

  // Exact minimisation of the variance along coordinate c. On every piece
  // between breakpoints both affected sizes are linear in the coordinate, so
  // the variance is a quadratic minimised in closed form.
  void coordinate_step(std::vector<double>& x, std::size_t c) const {
    const double lo = boundary(x, c);
    const double hi = boundary(x, c + 2);
    if (hi <= lo) {
      x[c] = lo;
      return;
    }
    const std::vector<double> current = sizes(x);
    double others = 0.0;
    double others_sq = 0.0;
    for (std::size_t i = 0; i < k_; ++i) {
      if (i == c || i == c + 1) continue;
      others += current[i];
      others_sq += current[i] * current[i];
    }
    const double kk = static_cast<double>(k_);
    auto variance_at = [&](double left, double right) {
      const double total = others + left + right;
      return others_sq + left * left + right * right - total * total / kk;
    };

    std::vector<double> points{lo, hi};
    const double frac_lo = lo - std::floor(lo);
    const double frac_hi = hi - std::floor(hi);
    for (double m = std::floor(lo); m <= std::ceil(hi); m += 1.0) {
      for (double p : {m, m + frac_lo, m + frac_hi}) {
        if (p > lo && p < hi) points.push_back(p);
      }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    double best_t = x[c];
    double best_v = variance_at(current[c], current[c + 1]);
    auto consider = [&](double t) {
      const double left = es_(lo, t);
      const double right = es_(t, hi);
      const double v = variance_at(left, right);
      if (v < best_v) {
        best_v = v;
        best_t = t;
      }
    };

    for (std::size_t p = 0; p + 1 < points.size(); ++p) {
      const double t0 = points[p];
      const double t1 = points[p + 1];
      const double l0 = es_(lo, t0);
      const double r0 = es_(t0, hi);
      const double l1 = es_(lo, t1) - l0;
      const double r1 = es_(t1, hi) - r0;
      consider(t0);
      const double quad = l1 * l1 + r1 * r1 - (l1 + r1) * (l1 + r1) / kk;
      const double lin = l0 * l1 + r0 * r1 - (others + l0 + r0) * (l1 + r1) / kk;
      if (quad > 0.0) {
        const double tau = -lin / quad;
        if (tau > 0.0 && tau < 1.0) consider(t0 + tau * (t1 - t0));
      }
    }
    consider(points.back());
    x[c] = best_t;
  }

  // Newton steps on the active linear piece of S: solve S + J dx = t e.
  void polish(std::vector<double>& x, std::size_t max_steps) const {
    const std::size_t dims = k_ - 1;
    for (std::size_t step = 0; step < max_steps; ++step) {
      std::vector<double> s(k_);
      std::vector<std::vector<double>> a(k_, std::vector<double>(k_, 0.0));
      for (std::size_t i = 0; i < k_; ++i) {
        const auto ev = es_.evaluate(boundary(x, i), boundary(x, i + 1));
        s[i] = ev.value;
        if (i >= 1) a[i][i - 1] += ev.d_begin;
        if (i < dims) a[i][i] += ev.d_end;
        a[i][dims] = -1.0;
      }
      const double v0 = variance_sum(s);
      if (v0 == 0.0) return;

      std::vector<double> rhs(k_);
      for (std::size_t i = 0; i < k_; ++i) rhs[i] = -s[i];
      std::vector<double> z;
      if (!solve(a, rhs, z)) return;

      bool improved = false;
      for (double alpha = 1.0; alpha > 1e-4; alpha *= 0.5) {
        std::vector<double> trial = x;
        for (std::size_t j = 0; j < dims; ++j) trial[j] += alpha * z[j];
        project(trial);
        if (variance_sum(sizes(trial)) < v0) {
          x = std::move(trial);
          improved = true;
          break;
        }
      }
      if (!improved) return;
    }
  }

  // Least-squares solve of a z = b (square), damped when near singular.
  static bool solve(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                    std::vector<double>& z) {
    const std::size_t m = a.size();
    // Normal equations with a tiny ridge keep singular pieces (flat blocks)
    // solvable; the ridge is far below the solver tolerance.
    std::vector<std::vector<double>> g(m, std::vector<double>(m + 1, 0.0));
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) acc += a[i][r] * a[i][c];
        g[r][c] = acc + (r == c ? 1e-14 : 0.0);
      }
      double acc = 0.0;
      for (std::size_t i = 0; i < m; ++i) acc += a[i][r] * b[i];
      g[r][m] = acc;
    }
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < m; ++r) {
        if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
      }
      if (std::abs(g[piv][col]) < 1e-300) return false;
      std::swap(g[piv], g[col]);
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col) continue;
        const double f = g[r][col] / g[col][col];
        if (f == 0.0) continue;
        for (std::size_t c = col; c <= m; ++c) g[r][c] -= f * g[col][c];
      }
    }
    z.assign(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) z[r] = g[r][m] / g[r][r];
    return std::all_of(z.begin(), z.end(), [](double v) { return std::isfinite(v); });
  }

  // Runs descent rounds from `x`; returns the rounds used.
  std::size_t descend(std::vector<double>& x, double tol, std::size_t max_rounds) const {
    double v = variance_sum(sizes(x));
    for (std::size_t round = 0; round < max_rounds; ++round) {
      if (gap(sizes(x)) <= tol) return round;
      for (std::size_t c = 0; c + 1 < k_; ++c) coordinate_step(x, c);
      polish(x, 8);
      const double next = variance_sum(sizes(x));
      if (!(next < v * (1.0 - 1e-12))) return round + 1;
      v = next;
    }
    return max_rounds;
  }

  std::vector<double> equal_mass_start() const {
    // F(t) = s[0, t) is linear between integers along the x = 0 edge.
    const std::size_t n = es_.n();
    const double total = es_.at(0, n);
    std::vector<double> x(k_ - 1, 0.0);
    double prev = 0.0;
    for (std::size_t h = 1; h < k_; ++h) {
      const double target = static_cast<double>(h) * total / static_cast<double>(k_);
      double t = n_;
      for (std::size_t j = 1; j <= n; ++j) {
        const double fj = es_.at(0, j);
        if (fj >= target) {
          const double fp = es_.at(0, j - 1);
          const double w = fj > fp ? (target - fp) / (fj - fp) : 0.0;
          t = static_cast<double>(j - 1) + std::clamp(w, 0.0, 1.0);
          break;
        }
      }
      prev = std::max(prev, t);
      x[h - 1] = prev;
    }
    return x;
  }

  std::vector<std::vector<double>> grid_starts(std::size_t keep) const {
    const double step = 0.125;
    const std::size_t ticks = static_cast<std::size_t>(std::llround(n_ / step));
    std::vector<std::pair<double, std::vector<double>>> scored;
    for_each_cut_vector(ticks, k_, [&](const std::vector<std::size_t>& c) {
      std::vector<double> x(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) x[i] = static_cast<double>(c[i]) * step;
      scored.emplace_back(gap(sizes(x)), std::move(x));
      return true;
    });
    const std::size_t m = std::min(keep, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(m), scored.end());
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < m; ++i) out.push_back(std::move(scored[i].second));
    return out;
  }

 private:
  const ExtendedSize& es_;
  std::size_t k_;
  double n_;
};

}  // namespace

DiagonalResult find_diagonal(const ExtendedSize& es, std::size_t k, const DiagonalOptions& options) {
  if (k == 0) throw ValidationError("k must be positive");
  const double n = static_cast<double>(es.n());
  if (k == 1) return DiagonalResult{FractionalCut(n, {}), 0.0, 0, 0};

  const DiagonalSearch search(es, k);
  std::vector<std::vector<double>> starts;
  starts.push_back(search.equal_mass_start());
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, n);
  for (std::size_t s = 0; s < options.starts; ++s) {
    std::vector<double> x(k - 1);
    for (double& v : x) v = unif(rng);
    std::sort(x.begin(), x.end());
    starts.push_back(std::move(x));
  }

  std::optional<DiagonalResult> best;
  std::size_t total_rounds = 0;
  auto run = [&](std::vector<double> x, std::size_t index) -> bool {
    total_rounds += search.descend(x, options.tol, options.max_rounds);
    const double g = DiagonalSearch::gap(search.sizes(x));
    if (!best || g < best->spread || (g == best->spread && x < best->x.values())) {
      best = DiagonalResult{FractionalCut(n, std::move(x)), g, total_rounds, index};
    }
    return g <= options.tol;
  };

  std::size_t index = 0;
  for (auto& x : starts) {
    if (run(std::move(x), index++)) {
      best->rounds = total_rounds;
      return *best;
    }
  }
  if (options.grid_fallback && k <= 3 && es.n() <= 12) {
    for (auto& x : search.grid_starts(8)) {
      if (run(std::move(x), index++)) {
        best->rounds = total_rounds;
        return *best;
      }
    }
  }
  best->rounds = total_rounds;
  std::ostringstream os;
  os << "no diagonal point within tolerance " << options.tol << " after " << index
     << " starts; best spread " << best->spread;
  throw SolverFailure(os.str(), *best);
}

CutVector round_to_blocks(const FractionalCut& x) {
  const double n = x.n();
  const auto nn = static_cast<std::size_t>(std::llround(n));
  std::vector<std::size_t> cuts;
  cuts.reserve(x.values().size());
  for (double v : x.values()) {
    const double r = std::clamp(std::floor(v + 0.5), 0.0, n);
    const auto y = static_cast<std::size_t>(r);
    if (!cuts.empty() && y < cuts.back()) {
      throw InvariantViolation("rounding a monotone fractional cut broke monotonicity");
    }
    cuts.push_back(y);
  }
  return CutVector(nn, x.k(), std::move(cuts));
}

PartitionResult balance_spread2(const SizeFunctional& s, std::size_t k,
                                const Spread2Options& options) {
  if (k == 0) throw ValidationError("k must be positive");
  const std::size_t n = s.length();
  if (n == 0) throw ValidationError("cannot partition an empty sequence");
  const ExtendedSize es = ExtendedSize::from(s);
  const double bound = 2.0 + 2.0 * options.diagonal.tol;

  std::string diagnostic;
  std::size_t rounds = 0;
  try {
    const DiagonalResult d = find_diagonal(es, k, options.diagonal);
    rounds = d.rounds;
    CutVector cuts = round_to_blocks(d.x);
    auto sizes = s.sizes(cuts);
    const double sp = spread(sizes);
    if (sp <= bound) {
      return PartitionResult{std::move(cuts), std::move(sizes), sp, rounds,
                             Termination::converged, {}};
    }
    std::ostringstream os;
    os << "rounded partition has spread " << sp
       << "; the functional may change by more than 1 per element";
    diagnostic = os.str();
  } catch (const SolverFailure& e) {
    rounds = e.best().rounds;
    diagnostic = e.what();
  }

  if (cut_vector_count(n, k) > options.fallback_limit) {
    throw SolverFailure(diagnostic + "; instance too large for the exhaustive fallback",
                        DiagonalResult{FractionalCut(static_cast<double>(n),
                                                     std::vector<double>(k - 1, 0.0)),
                                       std::numeric_limits<double>::infinity(), rounds, 0});
  }
  std::optional<CutVector> found;
  for_each_cut_vector(n, k, [&](const std::vector<std::size_t>& c) {
    CutVector cv(n, k, c);
    if (spread(s.sizes(cv)) <= 2.0) {
      found = std::move(cv);
      return false;
    }
    return true;
  });
  if (!found) {
    throw InvariantViolation("no partition with spread <= 2 exists; the functional violates "
                             "the unit-change condition");
  }
  auto sizes = s.sizes(*found);
  const double sp = spread(sizes);
  return PartitionResult{std::move(*found), std::move(sizes), sp, rounds,
                         Termination::solver_fallback, diagnostic};
}

}  // namespace blockpart
