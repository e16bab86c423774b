#include "erlab/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>

#include "erlab/error.hpp"

namespace erlab {

namespace {

constexpr long double kTie = 1e-12L;

long double quad_value(const std::vector<long double>& a, int r, const std::vector<long double>& x) {
  long double total = 0;
  for (int i = 0; i < r; ++i) {
    if (x[i] == 0) continue;
    long double row = 0;
    for (int j = 0; j < r; ++j) row += a[i * r + j] * x[j];
    total += x[i] * row;
  }
  return total;
}

// Solves m x = b in place by Gaussian elimination with partial pivoting,
// followed by one step of residual refinement. False when (near) singular.
bool solve_dense(std::vector<long double> m, std::vector<long double> b, int n, std::vector<long double>& x) {
  const std::vector<long double> m0 = m;
  const std::vector<long double> b0 = b;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  long double scale = 0;
  for (long double v : m) scale = std::max(scale, std::fabs(v));
  const long double eps = 1e-13L * std::max(scale, 1.0L);

  std::vector<long double> lu = m;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int row = col + 1; row < n; ++row)
      if (std::fabs(lu[row * n + col]) > std::fabs(lu[piv * n + col])) piv = row;
    if (std::fabs(lu[piv * n + col]) < eps) return false;
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(lu[piv * n + k], lu[col * n + k]);
      std::swap(perm[piv], perm[col]);
    }
    for (int row = col + 1; row < n; ++row) {
      long double f = lu[row * n + col] / lu[col * n + col];
      lu[row * n + col] = f;
      for (int k = col + 1; k < n; ++k) lu[row * n + k] -= f * lu[col * n + k];
    }
  }
  auto lu_solve = [&](const std::vector<long double>& rhs) {
    std::vector<long double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      long double v = rhs[perm[i]];
      for (int k = 0; k < i; ++k) v -= lu[i * n + k] * y[k];
      y[i] = v;
    }
    for (int i = n - 1; i >= 0; --i) {
      long double v = y[i];
      for (int k = i + 1; k < n; ++k) v -= lu[i * n + k] * y[k];
      y[i] = v / lu[i * n + i];
    }
    return y;
  };
  x = lu_solve(b0);
  std::vector<long double> res(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    long double v = b0[i];
    for (int k = 0; k < n; ++k) v -= m0[i * n + k] * x[k];
    res[i] = v;
  }
  std::vector<long double> dx = lu_solve(res);
  for (int i = 0; i < n; ++i) x[i] += dx[i];
  return true;
}

// Euclidean projection onto the simplex.
void project_simplex(std::vector<long double>& x) {
  std::vector<long double> u = x;
  std::sort(u.begin(), u.end(), std::greater<>());
  long double cumulative = 0, theta = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    long double t = (cumulative - 1) / static_cast<long double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  for (long double& v : x) v = std::max(v - theta, 0.0L);
}

// Supports by decreasing size, then lexicographically by member list.
const std::vector<std::uint32_t>& support_order(int r) {
  static std::array<std::once_flag, kMaxWeightDimension + 1> once;
  static std::array<std::vector<std::uint32_t>, kMaxWeightDimension + 1> orders;
  std::call_once(once[r], [r] {
    auto& masks = orders[r];
    for (std::uint32_t m = 1; m < (1U << r); ++m) masks.push_back(m);
    auto lex_key = [](std::uint32_t m) {
      std::vector<int> v;
      for (std::uint32_t b = m; b; b &= b - 1) v.push_back(std::countr_zero(b));
      return v;
    };
    std::stable_sort(masks.begin(), masks.end(), [&](std::uint32_t x, std::uint32_t y) {
      int px = std::popcount(x), py = std::popcount(y);
      if (px != py) return px > py;
      return lex_key(x) < lex_key(y);
    });
  });
  return orders[r];
}

long double cross_check(const std::vector<long double>& a, int r, int points, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<long double> expo(1.0L);
  std::vector<long double> best(static_cast<std::size_t>(r), 1.0L / r);
  long double best_value = quad_value(a, r, best);
  std::vector<long double> x(static_cast<std::size_t>(r));
  for (int p = 0; p < points; ++p) {
    long double total = 0;
    for (auto& v : x) total += (v = expo(rng));
    for (auto& v : x) v /= total;
    long double val = quad_value(a, r, x);
    if (val > best_value) {
      best_value = val;
      best = x;
    }
  }
  // Projected gradient ascent from the best sample.
  long double step = 0.1L;
  for (int it = 0; it < 2000; ++it) {
    std::vector<long double> next = best;
    for (int i = 0; i < r; ++i) {
      long double g = 0;
      for (int j = 0; j < r; ++j) g += 2 * a[i * r + j] * best[j];
      next[i] += step * g;
    }
    project_simplex(next);
    long double val = quad_value(a, r, next);
    if (val > best_value) {
      best_value = val;
      best = next;
    } else {
      step *= 0.5L;
      if (step < 1e-12L) break;
    }
  }
  return best_value;
}

}  // namespace

std::vector<long double> log_matrix(const ColourPattern& pattern) {
  const int r = pattern.r();
  std::vector<long double> a(static_cast<std::size_t>(r * r), 0.0L);
  for (int j = 1; j < r; ++j)
    for (int i = 0; i < j; ++i) {
      int t = pattern.at(i, j).size();
      long double v = t > 1 ? std::log2(static_cast<long double>(t)) : 0.0L;
      a[i * r + j] = a[j * r + i] = v;
    }
  return a;
}

QuadraticMax maximize_quadratic(const std::vector<long double>& a, int r) {
  if (r < 1 || r > kMaxWeightDimension) throw Error(Errc::DimensionTooLarge, "quadratic dimension out of range");
  QuadraticMax best;
  best.alpha.assign(static_cast<std::size_t>(r), 0.0L);
  if (r == 1) {
    best.alpha[0] = 1;
    best.support = 1;
    return best;
  }
  bool have = false;
  auto consider = [&](const std::vector<long double>& x, std::uint32_t mask) {
    long double v = quad_value(a, r, x);
    if (!have || v > best.value + kTie) {
      have = true;
      best.value = v;
      best.alpha = x;
      best.support = mask;
    }
  };

  // A later candidate must win by more than the tie tolerance.
  const std::vector<std::uint32_t>& masks = support_order(r);

  std::vector<long double> uniform(static_cast<std::size_t>(r), 1.0L / r);
  consider(uniform, (1U << r) - 1);

  std::vector<int> idx;
  std::vector<long double> sys, rhs, sol;
  for (std::uint32_t mask : masks) {
    idx.clear();
    for (std::uint32_t b = mask; b; b &= b - 1) idx.push_back(std::countr_zero(b));
    const int m = static_cast<int>(idx.size());
    std::vector<long double> x(static_cast<std::size_t>(r), 0.0L);
    if (m == 1) {
      x[idx[0]] = 1;
      consider(x, mask);
      continue;
    }
    const int n = m + 1;
    sys.assign(static_cast<std::size_t>(n * n), 0.0L);
    rhs.assign(static_cast<std::size_t>(n), 0.0L);
    for (int p = 0; p < m; ++p) {
      for (int q = 0; q < m; ++q) sys[p * n + q] = a[idx[p] * r + idx[q]];
      sys[p * n + m] = -1;
      sys[m * n + p] = 1;
    }
    rhs[m] = 1;
    if (!solve_dense(sys, rhs, n, sol)) continue;
    bool ok = true;
    for (int p = 0; p < m; ++p) {
      if (sol[p] <= 1e-12L) {
        ok = false;
        break;
      }
      x[idx[p]] = sol[p];
    }
    if (!ok) continue;
    consider(x, mask);
  }
  return best;
}

std::optional<Weighting> snap_to_rational(const ColourPattern& pattern, const std::vector<long double>& alpha) {
  const int r = pattern.r();
  std::vector<Rational> exact;
  exact.reserve(alpha.size());
  for (long double v : alpha) {
    if (v == 0) {
      exact.emplace_back(0);
      continue;
    }
    auto q = rationalize(v, 100000, 1e-9L);
    if (!q || *q <= 0) return std::nullopt;
    exact.push_back(*q);
  }
  Rational total = std::accumulate(exact.begin(), exact.end(), Rational(0));
  if (total != 1) return std::nullopt;
  Weighting w = Weighting::exact(exact);
  std::optional<LogForm> common;
  for (int i = 0; i < r; ++i) {
    if (exact[i] == 0) continue;
    LogForm qi = q_contrib_form(pattern, w, i);
    if (!common) common = qi;
    else if (!(qi == *common)) return std::nullopt;
  }
  return w;
}

WeightOptimum optimize_weights(const ColourPattern& pattern, const ColourSeq& k, const WeightOptions& options) {
  if (pattern.r() > kMaxWeightDimension) {
    throw Error(Errc::DimensionTooLarge, "support enumeration is limited to r <= 16");
  }
  if (!is_feasible(pattern, k, 0).feasible) throw Error(Errc::InfeasiblePattern, "pattern is not feasible for k");
  const int r = pattern.r();
  const std::vector<long double> a = log_matrix(pattern);
  QuadraticMax best = maximize_quadratic(a, r);

  WeightOptimum out;
  out.cross_check_value = best.value;
  if (options.cross_check && r > 1) {
    out.cross_check_value = cross_check(a, r, options.random_points, options.seed);
    out.cross_check_ok = best.value >= out.cross_check_value - 1e-9L;
  }

  std::optional<Weighting> exact;
  if (options.snap_exact) exact = snap_to_rational(pattern, best.alpha);
  if (exact) {
    out.weighting = *exact;
  } else {
    long double total = std::accumulate(best.alpha.begin(), best.alpha.end(), 0.0L);
    for (auto& v : best.alpha) v /= total;
    out.weighting = Weighting::numeric(best.alpha);
  }
  out.value = q_value(pattern, out.weighting);
  out.support = out.weighting.support();
  long double q = out.value.value;
  for (int i : out.support) {
    out.stationarity_residual = std::max(out.stationarity_residual, std::fabs(q_contrib(pattern, out.weighting, i) - q));
  }
  return out;
}

StationarityReport verify_stationarity(const FeasibleTriple& triple, long double tolerance) {
  StationarityReport rep;
  const auto& p = triple.pattern;
  const auto& w = triple.weighting;
  QBreakdown q = q_value(p, w);
  rep.q = q.value;
  rep.exact = w.is_exact();
  LogForm qf;
  if (rep.exact) qf = q.form();
  for (int i = 0; i < p.r(); ++i) {
    long double qi = q_contrib(p, w, i);
    long double res = std::fabs(qi - rep.q);
    rep.contributions.push_back(qi);
    rep.residuals.push_back(res);
    if (!w.positive(i)) continue;
    rep.max_residual = std::max(rep.max_residual, res);
    if (res > tolerance) rep.holds = false;
    if (rep.exact && !(q_contrib_form(p, w, i) == qf)) rep.exact = false;
  }
  return rep;
}

}  // namespace erlab
