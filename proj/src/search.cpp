#include "erlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "erlab/error.hpp"
#include "erlab/weights.hpp"

namespace erlab {

ValueMaps colour_value_maps(const ColourSeq& k) {
  const int s = k.s();
  // Blocks of equal clique order (entries are sorted, so blocks are contiguous).
  std::vector<std::pair<int, int>> blocks;
  for (int c = 0; c < s;) {
    int e = c;
    while (e < s && k[e] == k[c]) ++e;
    blocks.emplace_back(c, e);
    c = e;
  }
  std::vector<std::vector<int>> perms{std::vector<int>(static_cast<std::size_t>(s))};
  for (int c = 0; c < s; ++c) perms[0][c] = c;
  for (auto [lo, hi] : blocks) {
    std::vector<std::vector<int>> next;
    for (const auto& base : perms) {
      std::vector<int> block(base.begin() + lo, base.begin() + hi);
      std::sort(block.begin(), block.end());
      do {
        auto p = base;
        std::copy(block.begin(), block.end(), p.begin() + lo);
        next.push_back(std::move(p));
      } while (std::next_permutation(block.begin(), block.end()));
    }
    perms = std::move(next);
  }
  ValueMaps maps;
  const std::uint32_t values = 1U << s;
  for (const auto& p : perms) {
    std::vector<std::uint16_t> map(values + 1, 0);
    for (std::uint32_t bits = 0; bits < values; ++bits) {
      std::uint32_t image = 0;
      for (int c = 0; c < s; ++c)
        if ((bits >> c) & 1U) image |= 1U << p[c];
      map[bits + 1] = static_cast<std::uint16_t>(image + 1);
    }
    maps.push_back(std::move(map));
  }
  return maps;
}

Code pattern_code(const ColourPattern& pattern) {
  Code code;
  code.reserve(pattern.pair_values().size());
  for (ColourSet v : pattern.pair_values()) code.push_back(static_cast<std::uint16_t>(v.bits() + 1));
  return code;
}

ColourPattern pattern_from_code(const Code& code, int r, int s) {
  ColourPattern p(r, s);
  for (int j = 1; j < r; ++j)
    for (int i = 0; i < j; ++i) {
      std::uint16_t v = code[static_cast<std::size_t>(ColourPattern::pair_index(i, j))];
      if (v > 0) p.set(i, j, ColourSet(v - 1U));
    }
  return p;
}

CanonicalPattern canonical_pattern(const ColourPattern& pattern, const ColourSeq& k) {
  if (pattern.s() != k.s()) throw Error(Errc::InvalidInput, "pattern and sequence disagree on s");
  CanonicalLabel label = canonical_label(pattern_code(pattern), pattern.r(), colour_value_maps(k));
  return {pattern_from_code(label.code, pattern.r(), pattern.s()), label.code};
}

bool is_canonical_pattern(const ColourPattern& pattern, const ColourSeq& k) {
  return is_canonical(pattern_code(pattern), pattern.r(), colour_value_maps(k));
}

namespace {

struct OrderlyDfs {
  int r, s;
  const ColourSeq& k;
  ValueMaps maps;
  std::vector<std::uint32_t> choices;
  std::vector<std::pair<int, int>> pairs;
  Code code;
  std::vector<std::vector<VertexMask>> rows;
  const std::function<bool(const ColourPattern&)>& visit;
  const std::function<bool(int, const ColourPattern&)>& filter;
  std::uint64_t budget;
  EnumerationStats stats;
  bool stop = false;

  OrderlyDfs(int r_, const ColourSeq& k_, const std::function<bool(const ColourPattern&)>& v,
             const std::function<bool(int, const ColourPattern&)>& f, std::uint64_t b)
      : r(r_), s(k_.s()), k(k_), maps(colour_value_maps(k_)), visit(v), filter(f), budget(b) {
    for (std::uint32_t bits = 0; bits < (1U << s); ++bits)
      if (std::popcount(bits) >= 2) choices.push_back(bits);
    std::sort(choices.begin(), choices.end(), [](std::uint32_t a, std::uint32_t b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa > pb : a > b;
    });
    for (int j = 1; j < r; ++j)
      for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
    code.assign(pairs.size(), 0);
    rows.assign(static_cast<std::size_t>(s), std::vector<VertexMask>(static_cast<std::size_t>(r), 0));
  }

  bool creates_clique(int i, int j, std::uint32_t bits) const {
    for (std::uint32_t b = bits; b; b &= b - 1) {
      int c = std::countr_zero(b);
      VertexMask common = rows[c][i] & rows[c][j];
      int need = k[c] - 2;
      if (popcount(common) >= need && has_clique(rows[c], common, need)) return true;
    }
    return false;
  }

  void toggle(int i, int j, std::uint32_t bits) {
    for (std::uint32_t b = bits; b; b &= b - 1) {
      int c = std::countr_zero(b);
      rows[c][i] ^= bit(j);
      rows[c][j] ^= bit(i);
    }
  }

  void run(std::size_t idx) {
    auto [i, j] = pairs[idx];
    for (std::uint32_t bits : choices) {
      if (stats.nodes >= budget) {
        stats.complete = false;
        stop = true;
        return;
      }
      ++stats.nodes;
      if (creates_clique(i, j, bits)) continue;
      code[idx] = static_cast<std::uint16_t>(bits + 1);
      toggle(i, j, bits);
      if (i == j - 1) {
        if (is_canonical(code, j + 1, maps)) {
          if (j == r - 1) {
            ++stats.patterns;
            if (!visit(pattern_from_code(code, r, s))) stop = true;
          } else if (!filter || filter(j, pattern_from_code(code, r, s))) {
            run(idx + 1);
          }
        }
      } else {
        run(idx + 1);
      }
      toggle(i, j, bits);
      code[idx] = 0;
      if (stop) return;
    }
  }
};

}  // namespace

EnumerationStats enumerate_patterns(int r, const ColourSeq& k, const std::function<bool(const ColourPattern&)>& visit,
                                    std::uint64_t budget,
                                    const std::function<bool(int, const ColourPattern&)>& column_filter) {
  if (r < 1) throw Error(Errc::InvalidInput, "r must be at least 1");
  if (r > kMaxGraphVertices) throw Error(Errc::TooLarge, "r too large");
  EnumerationStats stats;
  if (r == 1) {
    stats.patterns = 1;
    visit(ColourPattern(1, k.s()));
    return stats;
  }
  OrderlyDfs dfs(r, k, visit, column_filter, budget);
  dfs.run(0);
  return dfs.stats;
}

std::vector<ColourPattern> enumerate_patterns(int r, const ColourSeq& k) {
  std::vector<ColourPattern> out;
  enumerate_patterns(r, k, [&](const ColourPattern& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

bool SearchResult::exhaustive() const {
  return std::all_of(rows.begin(), rows.end(), [](const SearchRow& row) { return row.exhaustive; });
}

SearchResult solve_Q2(const ColourSeq& k, int r_max, const SearchOptions& options) {
  if (r_max < 1) throw Error(Errc::InvalidInput, "r_max must be at least 1");
  if (static_cast<std::uint64_t>(r_max) >= ramsey_upper_bound(k)) {
    throw Error(Errc::InvalidInput, "r_max must stay below the Ramsey bound");
  }
  if (options.budget == 0) throw Error(Errc::InvalidInput, "budget must be positive");
  constexpr long double kOptTol = 1e-9L;
  const int s = k.s();
  const long double full = std::log2(static_cast<long double>(s));

  struct Candidate {
    ColourPattern pattern;
    std::vector<long double> alpha;
    long double value;
  };
  std::vector<Candidate> candidates;
  long double incumbent = -std::numeric_limits<long double>::infinity();
  auto offer = [&](const ColourPattern& p, const QuadraticMax& m) {
    if (m.value > incumbent) {
      incumbent = m.value;
      std::erase_if(candidates, [&](const Candidate& c) { return c.value < incumbent - kOptTol; });
    }
    if (m.value >= incumbent - kOptTol && m.support == (1U << p.r()) - 1) {
      candidates.push_back({p, m.alpha, m.value});
    }
  };

  SearchResult result{k, r_max, {}, {}, {}};
  std::uint64_t used = 0;
  for (int r = 1; r <= r_max; ++r) {
    SearchRow row;
    row.r = r;
    if (used >= options.budget) {
      row.exhaustive = false;
      result.rows.push_back(row);
      continue;
    }
    std::function<bool(int, const ColourPattern&)> filter;
    if (options.prune) {
      filter = [&](int j, const ColourPattern& partial) {
        std::vector<long double> a = log_matrix(partial);
        for (int b = j + 1; b < r; ++b)
          for (int x = 0; x < r; ++x)
            if (x != b) a[x * r + b] = a[b * r + x] = full;
        return maximize_quadratic(a, r).value >= incumbent - kOptTol;
      };
    }
    auto stats = enumerate_patterns(
        r, k,
        [&](const ColourPattern& p) {
          QuadraticMax m = maximize_quadratic(log_matrix(p), r);
          if (!row.best || m.value > *row.best) row.best = m.value;
          offer(p, m);
          return true;
        },
        options.budget - used, filter);
    used += stats.nodes;
    row.nodes = stats.nodes;
    row.patterns = stats.patterns;
    row.exhaustive = stats.complete;
    result.rows.push_back(row);
  }

  for (const Candidate& c : candidates) {
    if (c.value < incumbent - kOptTol) continue;
    std::optional<Weighting> exact = snap_to_rational(c.pattern, c.alpha);
    Weighting w = exact ? *exact : Weighting::numeric(c.alpha);
    result.optima.push_back(FeasibleTriple{c.pattern, w, 2});
  }
  if (!result.optima.empty()) {
    result.best_value = q_value(result.optima.front());
  } else {
    result.best_value = QBreakdown::from_exact(std::vector<Rational>(static_cast<std::size_t>(s), Rational(0)));
  }
  return result;
}

bool CandidateCertificate::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.passed; });
}

CandidateCertificate verify_candidate(const FeasibleTriple& triple, const ColourSeq& k, const QBreakdown& claimed) {
  CandidateCertificate cert;
  const auto& p = triple.pattern;
  const auto& w = triple.weighting;
  if (p.s() != k.s() || p.r() != w.size()) {
    cert.checks.push_back({"shape", false, "pattern, weighting and sequence sizes disagree"});
    return cert;
  }
  auto feas = is_feasible(p, k, 2);
  std::string why;
  if (feas.colour) {
    why = "colour " + std::to_string(*feas.colour + 1) + " spans K_" + std::to_string(k[*feas.colour]);
  } else if (feas.low_pair) {
    why = "pair " + std::to_string(feas.low_pair->first + 1) + "," + std::to_string(feas.low_pair->second + 1) +
          " has fewer than 2 colours";
  }
  cert.checks.push_back({"feasible_level_2", feas.feasible, why});

  bool positive = true;
  for (int i = 0; i < w.size(); ++i) positive = positive && w.positive(i);
  cert.checks.push_back({"positive_weights", positive, positive ? "" : "some weight is zero"});

  cert.value = q_value(p, w);
  bool match;
  std::string detail;
  if (cert.value.exact && claimed.exact) {
    match = true;
    for (int t = 2; t <= std::max(cert.value.s, claimed.s); ++t) {
      Rational a = t <= cert.value.s ? cert.value.d_exact(t) : Rational(0);
      Rational b = t <= claimed.s ? claimed.d_exact(t) : Rational(0);
      if (a != b) match = false;
    }
    detail = "q = " + cert.value.form().to_string() + ", claimed " + claimed.form().to_string();
  } else {
    match = std::fabs(cert.value.value - claimed.value) <= 1e-9L;
    detail = "q = " + format_decimal(cert.value.value) + ", claimed " + format_decimal(claimed.value);
  }
  cert.checks.push_back({"value_matches_claim", match, detail});

  auto stat = verify_stationarity(triple, 1e-8L);
  cert.checks.push_back({"stationary", stat.holds, "max residual " + format_decimal(stat.max_residual, 12)});
  return cert;
}

ColourPattern matching_pattern() {
  // The three perfect matchings of K_4; each colour uses the union of two.
  const std::pair<int, int> matchings[3][2] = {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}, {{0, 3}, {1, 2}}};
  const int colour_matchings[4][2] = {{1, 2}, {1, 2}, {0, 1}, {0, 2}};
  ColourPattern p(4, 4);
  for (int c = 0; c < 4; ++c)
    for (int m : colour_matchings[c])
      for (auto [a, b] : matchings[m]) p.set(a, b, p.at(a, b).with(c));
  return p;
}

ColourPattern affine_plane_pattern() {
  // Points (x, y) of Z_3^2; colour c avoids the lines of direction dirs[c].
  const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, 2}};
  ColourPattern p(9, 4);
  for (int a = 0; a < 9; ++a)
    for (int b = a + 1; b < 9; ++b) {
      int dx = (b / 3 - a / 3 + 3) % 3;
      int dy = (b % 3 - a % 3 + 3) % 3;
      for (int c = 0; c < 4; ++c) {
        // (dx, dy) parallel to dirs[c] iff the 2x2 determinant vanishes mod 3
        if ((dx * dirs[c][1] - dy * dirs[c][0] + 9) % 3 != 0) p.set(a, b, p.at(a, b).with(c));
      }
    }
  return p;
}

std::optional<FeasibleTriple> known_construction(const ColourSeq& k) {
  const int s = k.s();
  const auto& e = k.entries();
  bool all_equal = std::all_of(e.begin(), e.end(), [&](int v) { return v == e[0]; });
  if (s == 2 || (s == 3 && all_equal)) {
    int r = k.min_entry() - 1;
    auto p = ColourPattern::uniform(r, s, ColourSet::full(s));
    return make_triple(p, Weighting::uniform(r), k, 2);
  }
  if (s == 4 && all_equal && e[0] == 3) return make_triple(matching_pattern(), Weighting::uniform(4), k, 2);
  if (s == 4 && all_equal && e[0] == 4) return make_triple(affine_plane_pattern(), Weighting::uniform(9), k, 2);
  return std::nullopt;
}

}  // namespace erlab
