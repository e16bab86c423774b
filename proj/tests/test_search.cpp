#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "erlab/search.hpp"
#include "erlab/weights.hpp"
#include "test_support.hpp"

using namespace erlab;
using namespace testing_support;

namespace {

// Brute-force count of isomorphism classes of level-2 feasible patterns:
// every labelled pattern, reduced to the maximum code over all vertex and
// admissible colour permutations.
std::size_t brute_class_count(int r, const ColourSeq& k) {
  const int s = k.s();
  std::vector<std::uint32_t> sets;
  for (std::uint32_t b = 0; b < (1U << s); ++b)
    if (std::popcount(b) >= 2) sets.push_back(b);
  std::vector<std::vector<int>> colour_perms;
  std::vector<int> cp(static_cast<std::size_t>(s));
  for (int c = 0; c < s; ++c) cp[c] = c;
  do {
    bool ok = true;
    for (int c = 0; c < s; ++c) ok = ok && k[cp[c]] == k[c];
    if (ok) colour_perms.push_back(cp);
  } while (std::next_permutation(cp.begin(), cp.end()));
  std::vector<int> vp(static_cast<std::size_t>(r));
  std::vector<std::vector<int>> vertex_perms;
  for (int i = 0; i < r; ++i) vp[i] = i;
  do vertex_perms.push_back(vp);
  while (std::next_permutation(vp.begin(), vp.end()));

  const int pairs = r * (r - 1) / 2;
  std::set<std::vector<std::uint32_t>> classes;
  std::vector<int> digit(static_cast<std::size_t>(pairs), 0);
  for (;;) {
    ColourPattern p(r, s);
    for (int idx = 0, j = 1; j < r; ++j)
      for (int i = 0; i < j; ++i, ++idx) p.set(i, j, ColourSet(sets[digit[idx]]));
    bool feasible = true;
    for (int c = 0; c < s && feasible; ++c)
      if (brute_has_clique(p, c, k[c])) feasible = false;
    if (feasible) {
      std::vector<std::uint32_t> best;
      for (const auto& pi : colour_perms)
        for (const auto& sigma : vertex_perms) {
          std::vector<std::uint32_t> code;
          for (int j = 1; j < r; ++j)
            for (int i = 0; i < j; ++i) {
              std::uint32_t v = p.at(sigma[i], sigma[j]).bits(), img = 0;
              for (int c = 0; c < s; ++c)
                if (v >> c & 1) img |= 1U << pi[c];
              code.push_back(img);
            }
          best = std::max(best, code);
        }
      classes.insert(best);
    }
    int pos = 0;
    while (pos < pairs && ++digit[pos] == static_cast<int>(sets.size())) digit[pos++] = 0;
    if (pos == pairs) break;
  }
  return classes.size();
}

}  // namespace

TEST_CASE("enumeration examples") {
  auto two = enumerate_patterns(2, ColourSeq({3, 3}));
  REQUIRE(two.size() == 1);
  CHECK(two[0].at(0, 1) == ColourSet::of({0, 1}));
  CHECK(enumerate_patterns(3, ColourSeq({3, 3})).empty());
  auto four = enumerate_patterns(3, ColourSeq({4, 4}));
  REQUIRE(four.size() == 1);
  CHECK(four[0] == ColourPattern::uniform(3, 2, ColourSet::of({0, 1})));
  for (int r = 3; r <= 5; ++r) CHECK(enumerate_patterns(r, ColourSeq({3, 3})).empty());
}

TEST_CASE("enumeration matches brute-force class counts") {
  for (auto [r, k] : std::vector<std::pair<int, std::vector<int>>>{
           {2, {3, 3, 3}}, {3, {3, 3, 3}}, {4, {3, 3, 3}}, {3, {4, 4, 4}}, {4, {4, 4, 4}},
           {4, {4, 3, 3}}, {3, {3, 3, 3, 3}}, {4, {5, 4, 4}}, {5, {4, 4}}, {4, {5, 5, 3}}}) {
    ColourSeq seq(k);
    auto got = enumerate_patterns(r, seq);
    CAPTURE(r);
    CAPTURE(seq.to_string());
    CHECK(got.size() == brute_class_count(r, seq));
    std::set<Code> codes;
    for (const auto& p : got) {
      CHECK(is_feasible(p, seq, 2).feasible);
      codes.insert(canonical_pattern(p, seq).canonical_code);
    }
    CHECK(codes.size() == got.size());
  }
}

TEST_CASE("canonical codes are relabelling invariant on 1000 random patterns") {
  std::mt19937_64 rng(77);
  int failures = 0;
  ColourSeq k({4, 4, 3});
  for (int trial = 0; trial < 1000; ++trial) {
    int r = 2 + static_cast<int>(rng() % 6);
    auto p = random_pattern(rng, r, 3);
    auto perm = random_permutation(rng, r);
    std::vector<int> colours = rng() % 2 ? std::vector<int>{1, 0, 2} : std::vector<int>{0, 1, 2};
    auto q = p.relabelled(perm, colours);
    if (canonical_pattern(p, k).canonical_code != canonical_pattern(q, k).canonical_code) ++failures;
    // the canonical representative is itself canonical
    if (!is_canonical_pattern(canonical_pattern(p, k).pattern, k)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("colour permutations respect equal orders") {
  CHECK(colour_value_maps(ColourSeq({3, 3, 3})).size() == 6);
  CHECK(colour_value_maps(ColourSeq({5, 3, 3})).size() == 2);
  CHECK(colour_value_maps(ColourSeq({5, 4, 3})).size() == 1);
  CHECK(colour_value_maps(ColourSeq({4, 4, 4, 4})).size() == 24);
}

TEST_CASE("solve_Q2 examples") {
  auto a = solve_Q2(ColourSeq({3, 3}), 5);
  CHECK(a.exhaustive());
  CHECK(a.best_value.form() == LogForm::constant(Rational(1, 2)));
  REQUIRE(a.optima.size() == 1);
  CHECK(a.optima[0].r() == 2);
  CHECK(a.optima[0].weighting.exact_values() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  auto b = solve_Q2(ColourSeq({4, 4}), 5);
  CHECK(b.best_value.form() == LogForm::constant(Rational(2, 3)));
  REQUIRE(b.optima.size() == 1);
  CHECK(b.optima[0].r() == 3);

  auto c = solve_Q2(ColourSeq({3, 3, 3}), 4);
  CHECK(c.best_value.form() == LogForm::log2_of(3) * Rational(1, 2));
  REQUIRE(c.optima.size() == 1);
  CHECK(c.optima[0].pattern.at(0, 1) == ColourSet::full(3));
}

TEST_CASE("pruning is admissible") {
  for (auto k : {ColourSeq({3, 3}), ColourSeq({4, 4}), ColourSeq({3, 3, 3}), ColourSeq({4, 4, 4}), ColourSeq({5, 4, 3})}) {
    SearchOptions off;
    off.prune = false;
    auto with = solve_Q2(k, 4);
    auto without = solve_Q2(k, 4, off);
    CHECK(with.best_value.value == doctest::Approx(without.best_value.value).epsilon(1e-12));
    CHECK(with.optima.size() == without.optima.size());
  }
}

TEST_CASE("search is bounded below by the constructions") {
  for (auto k : {ColourSeq({3, 3}), ColourSeq({5, 5}), ColourSeq({4, 4, 4}), ColourSeq({3, 3, 3, 3}), ColourSeq({6, 4})}) {
    auto construction = known_construction(k);
    REQUIRE(construction.has_value());
    int r_max = std::min<int>(k.s() == 4 ? 4 : 5, static_cast<int>(ramsey_upper_bound(k)) - 1);
    auto res = solve_Q2(k, r_max);
    CHECK(res.best_value.value >= q_value(*construction).value - 1e-12L);
  }
}

TEST_CASE("budget exhaustion is reported, not thrown") {
  SearchOptions tiny;
  tiny.budget = 50;
  auto res = solve_Q2(ColourSeq({4, 4, 4}), 5, tiny);
  CHECK_FALSE(res.exhaustive());
  CHECK(res.rows.back().exhaustive == false);
}

TEST_CASE("candidate verification") {
  ColourPattern p(2, 2);
  p.set(0, 1, ColourSet::of({0, 1}));
  ColourSeq k33({3, 3});
  auto claim = QBreakdown::from_exact({Rational(0), Rational(1, 2)});
  CHECK(verify_candidate(FeasibleTriple{p, Weighting::uniform(2), 2}, k33, claim).passed());

  auto bad = verify_candidate(FeasibleTriple{p, Weighting::exact({Rational(1, 3), Rational(2, 3)}), 2}, k33, claim);
  CHECK_FALSE(bad.passed());
  CHECK(bad.value.d_exact(2) == Rational(4, 9));

  auto plane_claim = QBreakdown::from_exact({Rational(0), Rational(0), Rational(8, 9), Rational(0)});
  auto plane = verify_candidate(FeasibleTriple{affine_plane_pattern(), Weighting::uniform(9), 2},
                                ColourSeq({4, 4, 4, 4}), plane_claim);
  CHECK(plane.passed());
}

TEST_CASE("built-in constructions agree with the test fixtures") {
  CHECK(canonical_pattern(matching_pattern(), ColourSeq({3, 3, 3, 3})).canonical_code ==
        canonical_pattern(fixture_matchings(), ColourSeq({3, 3, 3, 3})).canonical_code);
  CHECK(affine_plane_pattern() == fixture_affine_plane());
  auto plane = affine_plane_pattern();
  for (int c = 0; c < 4; ++c) {
    auto g = plane.colour_graph(c);
    std::vector<VertexMask> parts;
    CHECK(is_complete_multipartite(g, &parts));
    CHECK(parts.size() == 3);
    CHECK(g.edge_count() == 27);
  }
  CHECK_FALSE(known_construction(ColourSeq({3, 3, 3, 3, 3})).has_value());
}
