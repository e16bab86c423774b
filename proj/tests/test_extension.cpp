#include <doctest.h>

#include <random>
#include <set>

#include "erlab/capacity.hpp"
#include "erlab/error.hpp"
#include "erlab/extension.hpp"
#include "erlab/search.hpp"
#include "test_support.hpp"

using namespace erlab;
using namespace testing_support;

namespace {

Attachment att(std::initializer_list<ColourSet> values) { return Attachment{std::vector<ColourSet>(values)}; }

// Every profile in (2^[s])^r, filtered by explicit feasibility of the extended pattern.
std::vector<Attachment> brute_attachments(const FeasibleTriple& t, const ColourSeq& k) {
  const int r = t.r(), s = k.s();
  const long double Q = q_value(t).value;
  std::vector<Attachment> out;
  std::vector<std::uint32_t> digit(static_cast<std::size_t>(r), 0);
  for (;;) {
    Attachment a;
    for (auto d : digit) a.profile.emplace_back(d);
    auto ext = t.pattern.extended(a.profile);
    bool ok = true;
    for (int c = 0; c < s && ok; ++c) ok = !brute_has_clique(ext, c, k[c]);
    if (ok && std::fabs(ext_value(t.weighting, a) - Q) <= 1e-9L) out.push_back(a);
    int pos = 0;
    while (pos < r && ++digit[pos] == (1U << s)) digit[pos++] = 0;
    if (pos == r) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("optimal attachments for two colours") {
  ColourSeq k33({3, 3});
  auto t = *known_construction(k33);
  auto a = enumerate_optimal_attachments(t, k33, q_value(t));
  auto both = ColourSet::of({0, 1});
  CHECK(a == std::vector<Attachment>{att({ColourSet(), both}), att({both, ColourSet()})});

  ColourSeq k53({5, 3});
  auto u = *known_construction(k53);
  auto b = enumerate_optimal_attachments(u, k53, q_value(u));
  auto one = ColourSet::of({0});
  CHECK(b == std::vector<Attachment>{att({ColourSet(), both}), att({one, both}), att({both, ColourSet()}),
                                     att({both, one})});
}

TEST_CASE("attachment scan is complete against brute force") {
  for (auto kv : std::vector<std::vector<int>>{{3, 3}, {4, 4}, {5, 3}, {5, 5}, {6, 4}, {3, 3, 3}, {4, 4, 4}, {3, 3, 3, 3}}) {
    ColourSeq k(kv);
    auto t = *known_construction(k);
    CAPTURE(k.to_string());
    auto fast = scan_optimal_attachments(t, k, q_value(t));
    CHECK(fast.attachments == brute_attachments(t, k));
    AttachmentOptions loose;
    loose.tight_bound = false;
    auto slow = scan_optimal_attachments(t, k, q_value(t), loose);
    CHECK(slow.attachments == fast.attachments);
    CHECK(slow.nodes >= fast.nodes);
  }
}

TEST_CASE("extension verdicts") {
  auto v33 = check_extension_property({*known_construction(ColourSeq({3, 3}))}, ColourSeq({3, 3}));
  CHECK(v33.holds);
  CHECK(v33.strong_holds);
  CHECK(v33.witnesses.empty());

  auto v53 = check_extension_property({*known_construction(ColourSeq({5, 3}))}, ColourSeq({5, 3}));
  CHECK(v53.holds);
  CHECK_FALSE(v53.strong_holds);

  auto v4 = check_extension_property({*known_construction(ColourSeq({3, 3, 3, 3}))}, ColourSeq({3, 3, 3, 3}));
  CHECK(v4.holds);
  CHECK(v4.strong_holds);

  for (const auto& k : in_scope_sequences()) {
    CAPTURE(k.to_string());
    auto v = check_extension_property({*known_construction(k)}, k);
    CHECK(v.holds);
    CHECK(v.strong_holds == (k[0] == k[1]));
  }
}

TEST_CASE("verdicts over the searched optimum set carry the exhaustive flag") {
  for (auto kv : std::vector<std::vector<int>>{{3, 3}, {4, 4}, {4, 3}, {3, 3, 3}, {4, 4, 4}}) {
    ColourSeq k(kv);
    auto res = solve_Q2(k, std::min<int>(5, static_cast<int>(ramsey_upper_bound(k)) - 1));
    ExtensionOptions opts;
    opts.opt_set_exhaustive = res.exhaustive();
    opts.provenance = "search";
    auto v = check_extension_property(res.optima, k, opts);
    CHECK(v.opt_set_exhaustive);
    CHECK(v.holds);
    CHECK(v.strong_holds == (k[0] == k[1]));
  }
}

TEST_CASE("extension errors") {
  CHECK_THROWS_AS(check_extension_property({}, ColourSeq({3, 3})), Error);
  try {
    check_extension_property({}, ColourSeq({3, 3}));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyOptSet);
  }
  ColourPattern p(2, 2);
  p.set(0, 1, ColourSet::of({0, 1}));
  FeasibleTriple skewed{p, Weighting::exact({Rational(1, 3), Rational(2, 3)}), 2};
  try {
    enumerate_optimal_attachments(skewed, ColourSeq({3, 3}), q_value(skewed));
    FAIL("expected NotBasicOptimal");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotBasicOptimal);
  }
}

TEST_CASE("numcheck certificates") {
  auto a = numcheck_certificate(*known_construction(ColourSeq({3, 3})), ColourSeq({3, 3}));
  CHECK(a.holds);
  CHECK(a.target == 2);
  CHECK(a.solutions == std::vector<std::vector<int>>{{1, 2}});

  auto b = numcheck_certificate(*known_construction(ColourSeq({4, 4, 4, 4})), ColourSeq({4, 4, 4, 4}));
  CHECK(b.holds);
  CHECK(b.target == 6561);
  CHECK(b.solutions == std::vector<std::vector<int>>{{1, 3, 3, 3, 3, 3, 3, 3, 3}});

  auto c = numcheck_certificate(*known_construction(ColourSeq({3, 3, 3, 3})), ColourSeq({3, 3, 3, 3}));
  CHECK(c.holds);
  CHECK(c.target == 18);
  CHECK(c.solutions == std::vector<std::vector<int>>{{1, 2, 3, 3}});

  for (int k = 3; k <= 6; ++k) {
    auto two = numcheck_certificate(*known_construction(ColourSeq({k, k})), ColourSeq({k, k}));
    CHECK(two.holds);
    CHECK(two.target == BigInt(1) << (k - 2));
  }
  for (int k = 3; k <= 5; ++k) {
    auto three = numcheck_certificate(*known_construction(ColourSeq({k, k, k})), ColourSeq({k, k, k}));
    CHECK(three.holds);
    CHECK(three.target == boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(k - 2)));
  }
  try {
    numcheck_certificate(*known_construction(ColourSeq({5, 3})), ColourSeq({5, 3}));
    FAIL("expected NotApplicable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotApplicable);
  }
}

TEST_CASE("numcheck agrees with the attachment scan") {
  for (const auto& k : in_scope_sequences()) {
    auto t = *known_construction(k);
    try {
      auto cert = numcheck_certificate(t, k);
      if (cert.holds) CHECK(check_extension_property({t}, k).strong_holds);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotApplicable);
    }
  }
}

TEST_CASE("char decomposition") {
  ColourSeq k53({5, 3});
  auto star = *known_construction(k53);
  auto both = ColourSet::of({0, 1});
  auto one = ColourSet::of({0});
  // Part 0 = {0,1,2}, part 1 = {3}.
  auto blow = [&](ColourSet inside) {
    ColourPattern p(4, 2);
    for (int i = 0; i < 3; ++i) p.set(i, 3, both);
    p.set(0, 1, inside);
    p.set(0, 2, inside);
    p.set(1, 2, inside);
    return FeasibleTriple{p, Weighting::exact({Rational(1, 6), Rational(1, 6), Rational(1, 6), Rational(1, 2)}), 0};
  };
  auto empty_inside = char_decompose(blow(ColourSet()), star, k53);
  CHECK(empty_inside.found);
  CHECK(empty_inside.parts == std::vector<std::vector<int>>{{0, 1, 2}, {3}});

  auto triangle = char_decompose(blow(one), star, k53);
  CHECK(triangle.found);
  CHECK(triangle.clique_orders == std::vector<int>{3, 1});

  // A colour-1 K_4 inside one part overshoots the allowed total, which for two
  // colours already closes a colour-1 K_5.
  ColourPattern big(5, 2);
  for (int i = 0; i < 4; ++i) big.set(i, 4, both);
  for (int j = 1; j < 4; ++j)
    for (int i = 0; i < j; ++i) big.set(i, j, one);
  FeasibleTriple k4{big, Weighting::exact({Rational(1, 8), Rational(1, 8), Rational(1, 8), Rational(1, 8), Rational(1, 2)}), 0};
  auto over = char_decompose(k4, star, k53);
  CHECK_FALSE(over.found);
  CHECK(over.failed == "feasibility");

  // A colour-2 pair inside a part closes a colour-2 triangle through the other part.
  auto other = blow(ColourSet());
  other.pattern.set(0, 1, ColourSet::of({1}));
  CHECK(char_decompose(other, star, k53).failed == "feasibility");

  // Colour-1 pairs inside parts are excluded when k_1 = k_2.
  ColourSeq k33({3, 3});
  ColourPattern three(3, 2);
  three.set(0, 2, both);
  three.set(1, 2, both);
  three.set(0, 1, one);
  auto equal = char_decompose(FeasibleTriple{three, Weighting::exact({Rational(1, 4), Rational(1, 4), Rational(1, 2)}), 0},
                              *known_construction(k33), k33);
  CHECK_FALSE(equal.found);

  auto low = char_decompose(FeasibleTriple{star.pattern, Weighting::exact({Rational(1, 3), Rational(2, 3)}), 0}, star, k53);
  CHECK_FALSE(low.found);
  CHECK(low.failed == "q");
}

TEST_CASE("char decomposition recovers random blow-ups of the optima") {
  std::mt19937_64 rng(5);
  for (const auto& k : in_scope_sequences()) {
    auto star = *known_construction(k);
    const int r = star.r();
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> owner;
      std::vector<int> count(static_cast<std::size_t>(r));
      for (int j = 0; j < r; ++j) {
        count[j] = 1 + static_cast<int>(rng() % 3);
        owner.insert(owner.end(), static_cast<std::size_t>(count[j]), j);
      }
      std::shuffle(owner.begin(), owner.end(), rng);
      const int n = static_cast<int>(owner.size());
      ColourPattern p(n, k.s());
      std::vector<Rational> w;
      for (int a = 0; a < n; ++a) {
        w.push_back(star.weighting.exact_values()[owner[a]] / count[owner[a]]);
        for (int b = a + 1; b < n; ++b)
          if (owner[a] != owner[b]) p.set(a, b, star.pattern.at(owner[a], owner[b]));
      }
      auto dec = char_decompose(FeasibleTriple{p, Weighting::exact(w), 0}, star, k);
      REQUIRE(dec.found);
      // the returned parts satisfy the weight and pattern conditions
      for (int j = 0; j < r; ++j) {
        Rational sum = 0;
        for (int v : dec.parts[j]) sum += w[v];
        CHECK(sum == star.weighting.exact_values()[j]);
        for (int i = 0; i < j; ++i)
          for (int x : dec.parts[i])
            for (int y : dec.parts[j]) CHECK(p.at(x, y) == star.pattern.at(i, j));
      }
    }
  }
}

TEST_CASE("ext never exceeds Q on 10000 random attachments per optimum") {
  std::mt19937_64 rng(11);
  for (const auto& k : in_scope_sequences()) {
    auto t = *known_construction(k);
    const long double Q = q_value(t).value;
    int violations = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      auto a = random_feasible_attachment(rng, t, k);
      REQUIRE(is_feasible(t.pattern.extended(a.profile), k, 0).feasible);
      if (ext_value(t.weighting, a) > Q + 1e-9L) ++violations;
    }
    CAPTURE(k.to_string());
    CHECK(violations == 0);
  }
}

TEST_CASE("structural consequences of the verdicts") {
  for (const auto& k : in_scope_sequences()) {
    CAPTURE(k.to_string());
    auto t = *known_construction(k);
    auto v = check_extension_property({t}, k);
    if (v.strong_holds) {
      for (int c = 0; c < k.s(); ++c) CHECK(capacity(t.pattern.colour_graph(c), k[c]).kind == CapacityKind::OnlyOnes);
    }
    for (const auto& ca : v.clone_targets) {
      if (ca.status == CloneStatus::Clone) CHECK(ca.attachment.profile[ca.target] == ColourSet::of({0}));
    }
    // every optimum weight is at least 1/r
    for (int i = 0; i < t.r(); ++i) CHECK(t.weighting.exact_values()[i] * t.r() >= 1);
  }
}

TEST_CASE("measured non-clone gaps are positive") {
  for (const auto& k : in_scope_sequences()) {
    auto t = *known_construction(k);
    auto best = best_nonclone_ext(t, k);
    REQUIRE(best.has_value());
    CHECK(*best < q_value(t).value - 1e-9L);
  }
}
