#include <doctest.h>

#include <cmath>
#include <random>

#include "erlab/error.hpp"
#include "erlab/weights.hpp"
#include "test_support.hpp"

using namespace erlab;
using namespace testing_support;

namespace {

// Exhaustive grid over the simplex at step 1/steps.
double grid_max(const ColourPattern& p, int steps) {
  const int r = p.r();
  std::vector<long double> x(static_cast<std::size_t>(r));
  double best = 0;
  std::vector<int> c(static_cast<std::size_t>(r), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == r - 1) {
      c[i] = left;
      for (int j = 0; j < r; ++j) x[j] = static_cast<long double>(c[j]) / steps;
      best = std::max(best, direct_q(p, x));
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, steps);
  return best;
}

}  // namespace

TEST_CASE("optimum for the all-double clique") {
  auto p = ColourPattern::uniform(3, 2, ColourSet::of({0, 1}));
  auto opt = optimize_weights(p, ColourSeq({4, 4}));
  REQUIRE(opt.weighting.is_exact());
  CHECK(opt.weighting.exact_values() == std::vector<Rational>(3, Rational(1, 3)));
  CHECK(opt.value.form() == LogForm::constant(Rational(2, 3)));
  CHECK(opt.cross_check_ok);
}

TEST_CASE("two-vertex optimum") {
  ColourPattern p(2, 2);
  p.set(0, 1, ColourSet::of({0, 1}));
  auto opt = optimize_weights(p, ColourSeq({3, 3}));
  CHECK(opt.weighting.exact_values() == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(opt.value.value == doctest::Approx(0.5));
}

TEST_CASE("a path with an empty pair has a face of optima") {
  ColourPattern p(3, 2);
  p.set(0, 1, ColourSet::of({0, 1}));
  p.set(0, 2, ColourSet::of({0, 1}));
  auto opt = optimize_weights(p, ColourSeq({3, 3}));
  CHECK(opt.value.value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(opt.support.size() == 2);
  CHECK(opt.support[0] == 0);
  CHECK(opt.weighting[0] == doctest::Approx(0.5));
  // independent oracle
  CHECK(grid_max(p, 200) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("degenerate single vertex and dimension limit") {
  auto opt = optimize_weights(ColourPattern(1, 2), ColourSeq({3, 3}));
  CHECK(opt.value.value == 0);
  CHECK(opt.weighting.size() == 1);
  try {
    optimize_weights(ColourPattern(17, 2), ColourSeq({3, 3}));
    FAIL("expected DimensionTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DimensionTooLarge);
  }
  try {
    optimize_weights(ColourPattern::uniform(3, 2, ColourSet::of({0, 1})), ColourSeq({3, 3}));
    FAIL("expected InfeasiblePattern");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InfeasiblePattern);
  }
}

TEST_CASE("stationarity checks") {
  ColourPattern p(2, 2);
  p.set(0, 1, ColourSet::of({0, 1}));
  auto ok = verify_stationarity(FeasibleTriple{p, Weighting::uniform(2), 2}, 1e-9L);
  CHECK(ok.holds);
  CHECK(ok.exact);
  auto bad = verify_stationarity(FeasibleTriple{p, Weighting::exact({Rational(1, 4), Rational(3, 4)}), 2}, 1e-9L);
  CHECK_FALSE(bad.holds);
  CHECK(bad.contributions[0] == doctest::Approx(0.75));
  CHECK(bad.contributions[1] == doctest::Approx(0.25));
  CHECK(bad.q == doctest::Approx(0.375));

  auto plane = verify_stationarity(FeasibleTriple{fixture_affine_plane(), Weighting::uniform(9), 2}, 1e-9L);
  CHECK(plane.holds);
  CHECK(plane.exact);
}

TEST_CASE("four-colour optima are exact") {
  auto opt = optimize_weights(fixture_matchings(), ColourSeq({3, 3, 3, 3}));
  REQUIRE(opt.weighting.is_exact());
  CHECK(opt.weighting.exact_values() == std::vector<Rational>(4, Rational(1, 4)));
  auto plane = optimize_weights(fixture_affine_plane(), ColourSeq({4, 4, 4, 4}));
  REQUIRE(plane.weighting.is_exact());
  CHECK(plane.value.form() == LogForm::log2_of(3) * Rational(8, 9));
}

TEST_CASE("optimiser matches a grid oracle on small patterns") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int r = 2 + static_cast<int>(rng() % 3);
    int s = 2 + static_cast<int>(rng() % 2);
    auto p = random_pattern(rng, r, s);
    if (p.min_multiplicity() < 1) continue;
    std::vector<int> ks(static_cast<std::size_t>(s), 3 + static_cast<int>(rng() % 2));
    ColourSeq k(ks);
    if (!is_feasible(p, k, 1).feasible) continue;
    WeightOptions o;
    o.random_points = 500;
    auto opt = optimize_weights(p, k, o);
    double grid = grid_max(p, r == 4 ? 50 : 100);
    CHECK(opt.value.value >= grid - 1e-12);
    CHECK(std::fabs(static_cast<double>(opt.value.value) - grid) <= 5e-3);
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("optimiser outputs are stationary on 1000 random patterns") {
  std::mt19937_64 rng(123);
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int r = 1 + static_cast<int>(rng() % 7);
    int s = 2 + static_cast<int>(rng() % 3);
    auto p = random_pattern(rng, r, s);
    WeightOptions o;
    o.cross_check = trial % 10 == 0;
    o.random_points = 2000;
    auto opt = optimize_weights(p, ColourSeq(std::vector<int>(static_cast<std::size_t>(s), 8)), o);
    // residual over the support and KKT inequality off it
    if (opt.stationarity_residual > 1e-8L) ++failures;
    auto rep = verify_stationarity(FeasibleTriple{p, opt.weighting, 0}, 1e-8L);
    if (!rep.holds) ++failures;
    for (int i = 0; i < r; ++i)
      if (!opt.weighting.positive(i) && rep.contributions[i] > rep.q + 1e-8L) ++failures;
    long double uniform = q_value(p, Weighting::uniform(r)).value;
    if (opt.value.value < uniform - 1e-12L) ++failures;
    if (!opt.cross_check_ok) ++failures;
  }
  CHECK(failures == 0);
}
