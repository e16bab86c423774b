#include "erlab/lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "erlab/error.hpp"
#include "erlab/search.hpp"

namespace erlab {

std::string TkConstraint::label() const {
  std::string out = "T=";
  for (std::size_t i = 0; i < T.size(); ++i) out += (i ? "," : "") + std::to_string(T[i]);
  return out + ":cap=" + std::to_string(cap);
}

TkConstraint parse_constraint(const std::string& text) {
  auto colon = text.find(':');
  if (text.rfind("T=", 0) != 0 || colon == std::string::npos || text.compare(colon + 1, 4, "cap=") != 0) {
    throw Error(Errc::InvalidInput, "constraint must look like T=3,4:cap=3");
  }
  TkConstraint c;
  std::stringstream list(text.substr(2, colon - 2));
  std::string item;
  try {
    while (std::getline(list, item, ',')) c.T.push_back(std::stoi(item));
    c.cap = std::stoi(text.substr(colon + 5));
  } catch (const std::exception&) {
    throw Error(Errc::InvalidInput, "constraint entries must be integers: " + text);
  }
  std::sort(c.T.begin(), c.T.end());
  c.T.erase(std::unique(c.T.begin(), c.T.end()), c.T.end());
  return c;
}

LPInstance::LPInstance(ColourSeq seq, std::vector<TkConstraint> extra) : k(std::move(seq)), constraints(std::move(extra)) {
  for (auto& c : constraints) {
    std::sort(c.T.begin(), c.T.end());
    c.T.erase(std::unique(c.T.begin(), c.T.end()), c.T.end());
    if (c.T.empty()) throw Error(Errc::InvalidInput, "constraint set T is empty");
    if (c.T.front() < 2 || c.T.back() > k.s()) throw Error(Errc::InvalidInput, "constraint set T must lie in [2, s]");
    if (c.cap < 3) throw Error(Errc::InvalidInput, "constraint clique order must be at least 3");
  }
}

Rational LPInstance::budget() const {
  Rational b = 0;
  for (int c = 0; c < k.s(); ++c) b += Rational(1) - Rational(1, k[c] - 1);
  return b;
}

namespace {

struct Row {
  std::vector<Rational> a;
  Rational b;
  std::string label;
};

std::vector<Row> build_rows(const LPInstance& inst) {
  const int n = inst.k.s() - 1;
  std::vector<Row> rows;
  Row budget{std::vector<Rational>(static_cast<std::size_t>(n)), inst.budget(), "budget"};
  for (int t = 2; t <= inst.k.s(); ++t) budget.a[t - 2] = t;
  rows.push_back(budget);
  for (const auto& c : inst.constraints) {
    Row r{std::vector<Rational>(static_cast<std::size_t>(n)), c.bound(), c.label()};
    for (int t : c.T) r.a[t - 2] = 1;
    rows.push_back(r);
  }
  for (int t = 2; t <= inst.k.s(); ++t) {
    Row lo{std::vector<Rational>(static_cast<std::size_t>(n)), 0, "d_" + std::to_string(t) + ">=0"};
    lo.a[t - 2] = -1;
    Row hi{std::vector<Rational>(static_cast<std::size_t>(n)), 1, "d_" + std::to_string(t) + "<=1"};
    hi.a[t - 2] = 1;
    rows.push_back(lo);
    rows.push_back(hi);
  }
  return rows;
}

// Solves the square system; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(rhs[pivot], rhs[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return x;
}

LogForm objective(const std::vector<Rational>& d) {
  LogForm total;
  for (std::size_t i = 0; i < d.size(); ++i) total += LogForm::log2_of(i + 2) * d[i];
  return total;
}

}  // namespace

LPSolution solve_L(const LPInstance& instance) {
  const int n = instance.k.s() - 1;
  if (n > 5) throw Error(Errc::TooLarge, "Problem L is limited to s <= 6");
  auto rows = build_rows(instance);
  const int m = static_cast<int>(rows.size());

  std::vector<std::vector<Rational>> vertices;
  std::vector<int> pick;
  std::function<void(int)> choose = [&](int from) {
    if (static_cast<int>(pick.size()) == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (int idx : pick) {
        a.push_back(rows[idx].a);
        b.push_back(rows[idx].b);
      }
      auto x = solve_square(a, b);
      if (!x) return;
      for (const auto& row : rows) {
        Rational lhs = 0;
        for (int i = 0; i < n; ++i) lhs += row.a[i] * (*x)[i];
        if (lhs > row.b) return;
      }
      if (std::find(vertices.begin(), vertices.end(), *x) == vertices.end()) vertices.push_back(*x);
      return;
    }
    for (int i = from; i < m; ++i) {
      pick.push_back(i);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);
  if (vertices.empty()) throw Error(Errc::Infeasible, "Problem L has no feasible vertex");
  std::sort(vertices.begin(), vertices.end());

  LPSolution sol;
  sol.vertices = vertices.size();
  std::optional<LogForm> best;
  for (const auto& v : vertices) {
    LogForm value = objective(v);
    int cmp = best ? compare(value, *best) : 1;
    if (cmp > 0) {
      best = value;
      sol.optima = {v};
    } else if (cmp == 0) {
      sol.optima.push_back(v);
    }
  }
  sol.d = sol.optima.front();
  sol.value = *best;
  sol.unique = sol.optima.size() == 1;
  for (const auto& row : rows) {
    Rational lhs = 0;
    for (int i = 0; i < n; ++i) lhs += row.a[i] * sol.d[i];
    if (lhs == row.b) sol.active.push_back(row.label);
  }
  return sol;
}

ValidityReport constraint_validity_scan(const TkConstraint& constraint, const ColourSeq& k, int r_max) {
  const int limit = k.s() <= 3 ? 6 : (k.s() == 4 ? 4 : 0);
  if (r_max < 1 || r_max > limit) {
    throw Error(Errc::InvalidInput, "validity scans are limited to the exhaustive search range");
  }
  LPInstance check(k, {constraint});
  std::uint32_t sizes = 0;
  for (int t : check.constraints.front().T) sizes |= 1U << t;
  const int cap = constraint.cap;
  ValidityReport rep;
  rep.r_max = r_max;
  const int r_top = std::min<int>(r_max, static_cast<int>(ramsey_upper_bound(k)) - 1);
  for (int r = 1; r <= r_max; ++r) {
    std::uint64_t seen = 0;
    if (r <= r_top && !rep.counterexample) {
      auto stats = enumerate_patterns(r, k, [&](const ColourPattern& p) {
        ++seen;
        SimpleGraph h = p.multiplicity_graph(sizes);
        VertexMask witness = 0;
        if (has_clique(h.rows(), low_mask(r), cap, &witness)) {
          rep.passed = false;
          rep.counterexample = p;
          rep.clique = mask_vertices(witness);
          return false;
        }
        return true;
      });
      rep.exhaustive = rep.exhaustive && (stats.complete || rep.counterexample.has_value());
    }
    rep.patterns_per_r.push_back(seen);
  }
  return rep;
}

std::vector<TkConstraint> standard_constraints(const ColourSeq& k) {
  if (k.s() == 2 && k[0] > k[1]) return {TkConstraint{{2}, k[1]}};
  if (k == ColourSeq({3, 3, 3, 3})) return {TkConstraint{{3, 4}, 3}};
  return {};
}

std::string_view verdict_name(CertificateVerdict v) {
  switch (v) {
    case CertificateVerdict::Exact: return "EXACT";
    case CertificateVerdict::Gap: return "GAP";
    case CertificateVerdict::Conflict: return "CONFLICT";
  }
  return "?";
}

SandwichCertificate sandwich_certificate(const ColourSeq& k, const FeasibleTriple& construction,
                                         const LPInstance& instance) {
  if (!(instance.k == k)) throw Error(Errc::InvalidInput, "LP instance is for a different sequence");
  if (construction.pattern.s() != k.s() || construction.r() != construction.weighting.size() ||
      !is_feasible(construction.pattern, k, 2).feasible) {
    throw Error(Errc::InfeasiblePattern, "construction is not level-2 feasible for k");
  }
  SandwichCertificate cert;
  cert.lower = q_value(construction);
  cert.upper = solve_L(instance);
  if (cert.lower.exact) {
    cert.symbolic = true;
    int cmp = compare(cert.lower.form(), cert.upper.value);
    cert.verdict = cmp == 0 ? CertificateVerdict::Exact : (cmp < 0 ? CertificateVerdict::Gap : CertificateVerdict::Conflict);
  } else {
    long double gap = cert.upper.value.value() - cert.lower.value;
    cert.verdict = std::fabs(gap) <= 1e-12L ? CertificateVerdict::Exact
                                            : (gap > 0 ? CertificateVerdict::Gap : CertificateVerdict::Conflict);
    cert.note = "numeric comparison at 1e-12";
  }
  if (cert.verdict == CertificateVerdict::Conflict) cert.note = "construction exceeds the LP bound; a constraint is invalid";
  return cert;
}

}  // namespace erlab
