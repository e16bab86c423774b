#include <doctest.h>

#include <random>

#include "erlab/error.hpp"
#include "erlab/lp.hpp"
#include "erlab/search.hpp"
#include "test_support.hpp"

using namespace erlab;
using namespace testing_support;

namespace {

Rational R(long long a, long long b = 1) { return Rational(a, b); }

bool lp_feasible(const LPInstance& inst, const std::vector<Rational>& d) {
  Rational lhs = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 0 || d[i] > 1) return false;
    lhs += d[i] * static_cast<int>(i + 2);
  }
  if (lhs > inst.budget()) return false;
  for (const auto& c : inst.constraints) {
    Rational sum = 0;
    for (int t : c.T) sum += d[t - 2];
    if (sum > c.bound()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("Problem L examples") {
  for (int k = 3; k <= 6; ++k) {
    auto sol = solve_L(LPInstance(ColourSeq({k, k, k})));
    CHECK(sol.unique);
    CHECK(sol.d == std::vector<Rational>{R(0), R(1) - R(1, k - 1)});
    CHECK(sol.value == LogForm::log2_of(3) * R(k - 2, k - 1));
  }
  auto four = solve_L(LPInstance(ColourSeq({3, 3, 3, 3}), {TkConstraint{{3, 4}, 3}}));
  CHECK(four.unique);
  CHECK(four.d == std::vector<Rational>{R(1, 4), R(1, 2), R(0)});
  CHECK(four.value.to_string() == "1/4 + 1/2·log2(3)");

  auto plane = solve_L(LPInstance(ColourSeq({4, 4, 4, 4})));
  CHECK(plane.unique);
  CHECK(plane.d == std::vector<Rational>{R(0), R(8, 9), R(0)});
  CHECK(plane.value == LogForm::log2_of(3) * R(8, 9));

  for (int k = 3; k <= 6; ++k) {
    auto two = solve_L(LPInstance(ColourSeq({k, k})));
    CHECK(two.unique);
    CHECK(two.value == LogForm::constant(R(1) - R(1, k - 1)));
    for (int l = 3; l < k; ++l) {
      ColourSeq seq({k, l});
      auto loose = solve_L(LPInstance(seq));
      auto tight = solve_L(LPInstance(seq, standard_constraints(seq)));
      CHECK(compare(loose.value, tight.value) > 0);
      CHECK(tight.value == LogForm::constant(R(1) - R(1, l - 1)));
      CHECK(tight.unique);
    }
  }
  // Without the extra constraint (3,3,3,3) is not pinned down.
  auto raw = solve_L(LPInstance(ColourSeq({3, 3, 3, 3})));
  CHECK(compare(raw.value, four.value) > 0);
}

TEST_CASE("non-unique optimum is detected") {
  // d_2 and d_4 earn log2 t / t = 1/2 per unit of budget, so once d_3 is capped
  // the remaining budget can go to either.
  ColourSeq k({3, 3, 3, 3});
  LPInstance inst(k, {TkConstraint{{3}, 3}});
  auto sol = solve_L(inst);
  CHECK_FALSE(sol.unique);
  CHECK(sol.optima == std::vector<std::vector<Rational>>{{R(0), R(1, 2), R(1, 8)}, {R(1, 4), R(1, 2), R(0)}});
  for (const auto& v : sol.optima) CHECK(lp_feasible(inst, v));
}

TEST_CASE("constraint parsing") {
  auto c = parse_constraint("T=4,3:cap=3");
  CHECK(c.T == std::vector<int>{3, 4});
  CHECK(c.cap == 3);
  CHECK(c.label() == "T=3,4:cap=3");
  CHECK_THROWS_AS(parse_constraint("T=3"), Error);
  CHECK_THROWS_AS(parse_constraint("T=a:cap=3"), Error);
  CHECK_THROWS_AS(LPInstance(ColourSeq({3, 3}), {TkConstraint{{3}, 3}}), Error);
  CHECK_THROWS_AS(LPInstance(ColourSeq({3, 3}), {TkConstraint{{2}, 2}}), Error);
}

TEST_CASE("LP optimum beats a rational grid") {
  // Independent check for two and three variables: no grid point on a 1/48
  // lattice that satisfies the constraints has a larger objective.
  for (auto [kv, extra] : std::vector<std::pair<std::vector<int>, std::vector<TkConstraint>>>{
           {{4, 4, 4}, {}}, {{5, 4, 3}, {}}, {{3, 3, 3, 3}, {TkConstraint{{3, 4}, 3}}}, {{4, 4, 4, 4}, {}},
           {{5, 5, 3}, {TkConstraint{{3}, 4}}}}) {
    LPInstance inst{ColourSeq(kv), extra};
    auto sol = solve_L(inst);
    REQUIRE(lp_feasible(inst, sol.d));
    const int n = inst.k.s() - 1;
    const int steps = 48;
    std::vector<int> g(static_cast<std::size_t>(n), 0);
    int better = 0;
    for (;;) {
      std::vector<Rational> d;
      for (int v : g) d.emplace_back(v, steps);
      if (lp_feasible(inst, d)) {
        LogForm val;
        for (int i = 0; i < n; ++i) val += LogForm::log2_of(static_cast<std::uint64_t>(i + 2)) * d[i];
        if (compare(val, sol.value) > 0) ++better;
      }
      int pos = 0;
      while (pos < n && ++g[pos] > steps) g[pos++] = 0;
      if (pos == n) break;
    }
    CHECK(better == 0);
  }
}

TEST_CASE("realised d-vectors satisfy the base and valid constraints") {
  std::mt19937_64 rng(23);
  for (auto kv : std::vector<std::vector<int>>{{3, 3}, {5, 3}, {4, 4, 4}, {5, 4, 3}, {3, 3, 3, 3}, {4, 4, 4, 4}}) {
    ColourSeq k(kv);
    LPInstance base(k);
    LPInstance with(k, standard_constraints(k));
    int failures = 0;
    for (int trial = 0; trial < 300; ++trial) {
      int r = 2 + static_cast<int>(rng() % 6);
      auto p = random_feasible_pattern(rng, r, k, 0.6);
      auto w = random_rational_weighting(rng, r);
      auto q = q_value(p, w);
      std::vector<Rational> d;
      for (int t = 2; t <= k.s(); ++t) d.push_back(q.d_exact(t));
      if (!lp_feasible(base, d)) ++failures;
      // the standard constraints only hold on level-2 patterns
      if (p.min_multiplicity() >= 2 && !lp_feasible(with, d)) ++failures;
    }
    CAPTURE(k.to_string());
    CHECK(failures == 0);
  }
}

TEST_CASE("adding constraints never raises the LP value") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    int s = 2 + static_cast<int>(rng() % 4);
    std::vector<int> kv;
    for (int c = 0; c < s; ++c) kv.push_back(3 + static_cast<int>(rng() % 4));
    ColourSeq k(kv);
    std::vector<TkConstraint> extra;
    LogForm previous = solve_L(LPInstance(k)).value;
    for (int m = 0; m < 3; ++m) {
      TkConstraint c;
      for (int t = 2; t <= s; ++t)
        if (rng() % 2) c.T.push_back(t);
      if (c.T.empty()) c.T.push_back(s);
      c.cap = 3 + static_cast<int>(rng() % 4);
      extra.push_back(c);
      LogForm now = solve_L(LPInstance(k, extra)).value;
      CHECK(compare(now, previous) <= 0);
      previous = now;
    }
  }
}

TEST_CASE("LP value bounds every searched triple") {
  for (auto kv : std::vector<std::vector<int>>{{3, 3}, {4, 3}, {5, 5}, {3, 3, 3}, {4, 4, 3}, {3, 3, 3, 3}}) {
    ColourSeq k(kv);
    auto lp = solve_L(LPInstance(k));
    int r_max = std::min<int>(k.s() == 4 ? 4 : 5, static_cast<int>(ramsey_upper_bound(k)) - 1);
    auto res = solve_Q2(k, r_max);
    CAPTURE(k.to_string());
    CHECK(res.best_value.value <= lp.value.value() + 1e-12L);
    for (int r = 2; r <= std::min(r_max, 4); ++r)
      for (const auto& p : enumerate_patterns(r, k)) CHECK(q_value(p, Weighting::uniform(r)).value <= lp.value.value() + 1e-12L);
  }
}

TEST_CASE("constraint validity scans") {
  auto a = constraint_validity_scan(TkConstraint{{3, 4}, 3}, ColourSeq({3, 3, 3, 3}), 4);
  CHECK(a.passed);
  CHECK(a.exhaustive);
  auto b = constraint_validity_scan(TkConstraint{{2}, 3}, ColourSeq({3, 3}), 4);
  CHECK(b.passed);
  CHECK(b.patterns_per_r == std::vector<std::uint64_t>{1, 1, 0, 0});
  auto c = constraint_validity_scan(TkConstraint{{2, 3}, 3}, ColourSeq({4, 4, 4}), 3);
  CHECK_FALSE(c.passed);
  REQUIRE(c.counterexample.has_value());
  CHECK(c.counterexample->r() == 3);
  CHECK(c.clique.size() == 3);
  for (int k = 4; k <= 6; ++k)
    for (int l = 3; l < k; ++l) {
      ColourSeq seq({k, l});
      for (const auto& con : standard_constraints(seq)) {
        CHECK(constraint_validity_scan(con, seq, std::min<int>(6, static_cast<int>(ramsey_upper_bound(seq)) - 1)).passed);
      }
    }
  CHECK_THROWS_AS(constraint_validity_scan(TkConstraint{{3}, 3}, ColourSeq({3, 3, 3, 3}), 5), Error);
}

TEST_CASE("sandwich certificates") {
  ColourSeq k4({3, 3, 3, 3});
  auto a = sandwich_certificate(k4, *known_construction(k4), LPInstance(k4, standard_constraints(k4)));
  CHECK(a.verdict == CertificateVerdict::Exact);
  CHECK(a.symbolic);
  CHECK(a.upper.value.to_string() == "1/4 + 1/2·log2(3)");

  ColourSeq k44({4, 4, 4, 4});
  auto b = sandwich_certificate(k44, *known_construction(k44), LPInstance(k44));
  CHECK(b.verdict == CertificateVerdict::Exact);
  CHECK(b.upper.value == LogForm::log2_of(3) * R(8, 9));

  ColourSeq k2({4, 4});
  auto c = sandwich_certificate(k2, *known_construction(k2), LPInstance(k2));
  CHECK(c.verdict == CertificateVerdict::Exact);
  CHECK(c.upper.value == LogForm::constant(R(2, 3)));

  auto gap = sandwich_certificate(k4, *known_construction(k4), LPInstance(k4));
  CHECK(gap.verdict == CertificateVerdict::Gap);

  // A construction above an invalid constraint exposes it.
  auto bad = sandwich_certificate(k44, *known_construction(k44), LPInstance(k44, {TkConstraint{{3}, 3}}));
  CHECK(bad.verdict == CertificateVerdict::Conflict);
}
