#include "erlab/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "erlab/error.hpp"

namespace erlab {

// ---------------------------------------------------------------- ColourSeq

ColourSeq::ColourSeq(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(Errc::EmptySequence, "colour sequence is empty");
  for (int k : entries_) {
    if (k < 3) {
      throw Error(Errc::EntryBelowThree,
                  "clique order " + std::to_string(k) + " < 3 (k_c = 2 just forbids colour c)");
    }
  }
  if (entries_.size() < 2) throw Error(Errc::SingleColour, "at least two colours are required");
  if (entries_.size() > static_cast<std::size_t>(kMaxColours)) {
    throw Error(Errc::TooLarge, "at most 8 colours are supported");
  }
  std::sort(entries_.begin(), entries_.end(), std::greater<>());
}

std::string ColourSeq::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i]);
  }
  return out;
}

ColourSeq validate_sequence(std::span<const int> raw) {
  return ColourSeq(std::vector<int>(raw.begin(), raw.end()));
}

ColourSeq parse_sequence(const std::string& text) {
  std::vector<int> raw;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      raw.push_back(v);
    } catch (const std::exception&) {
      throw Error(Errc::InvalidInput, "bad clique order '" + item + "'");
    }
  }
  return ColourSeq(std::move(raw));
}

// ---------------------------------------------------------------- ColourSet

ColourSet ColourSet::of(std::initializer_list<int> colours) {
  std::uint32_t bits = 0;
  for (int c : colours) bits |= 1U << c;
  return ColourSet(bits);
}

std::vector<int> ColourSet::members() const {
  std::vector<int> out;
  for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

// ------------------------------------------------------------ ColourPattern

ColourPattern::ColourPattern(int r, int s) : r_(r), s_(s) {
  if (r < 1 || r > kMaxGraphVertices) throw Error(Errc::InvalidInput, "pattern order must lie in [1, 64]");
  if (s < 1 || s > kMaxColours) throw Error(Errc::InvalidInput, "colour count must lie in [1, 8]");
  pairs_.assign(static_cast<std::size_t>(r * (r - 1) / 2), ColourSet());
}

ColourPattern ColourPattern::uniform(int r, int s, ColourSet value) {
  ColourPattern p(r, s);
  std::fill(p.pairs_.begin(), p.pairs_.end(), value);
  return p;
}

void ColourPattern::check_pair(int i, int j) const {
  if (i < 0 || j < 0 || i >= r_ || j >= r_) throw Error(Errc::IndexOutOfRange, "vertex index out of range");
  if (i == j) throw Error(Errc::EqualIndices, "a pair needs two distinct vertices");
}

ColourSet ColourPattern::at(int i, int j) const {
  check_pair(i, j);
  return pairs_[static_cast<std::size_t>(pair_index(i, j))];
}

void ColourPattern::set(int i, int j, ColourSet value) {
  check_pair(i, j);
  if (!value.subset_of(ColourSet::full(s_))) throw Error(Errc::InvalidInput, "colour outside [s]");
  pairs_[static_cast<std::size_t>(pair_index(i, j))] = value;
}

std::vector<VertexMask> ColourPattern::colour_rows(int c) const {
  std::vector<VertexMask> rows(static_cast<std::size_t>(r_), 0);
  for (int j = 1; j < r_; ++j)
    for (int i = 0; i < j; ++i)
      if (pairs_[static_cast<std::size_t>(pair_index(i, j))].contains(c)) {
        rows[i] |= bit(j);
        rows[j] |= bit(i);
      }
  return rows;
}

SimpleGraph ColourPattern::colour_graph(int c) const {
  SimpleGraph g(r_);
  for (int j = 1; j < r_; ++j)
    for (int i = 0; i < j; ++i)
      if (at(i, j).contains(c)) g.add_edge(i, j);
  return g;
}

SimpleGraph ColourPattern::multiplicity_graph(std::uint32_t sizes) const {
  SimpleGraph g(r_);
  for (int j = 1; j < r_; ++j)
    for (int i = 0; i < j; ++i)
      if ((sizes >> at(i, j).size()) & 1U) g.add_edge(i, j);
  return g;
}

int ColourPattern::min_multiplicity() const {
  int m = s_;
  for (ColourSet v : pairs_) m = std::min(m, v.size());
  return m;
}

ColourPattern ColourPattern::relabelled(std::span<const int> vertex_map, std::span<const int> colour_map) const {
  if (static_cast<int>(vertex_map.size()) != r_) throw Error(Errc::InvalidInput, "vertex map has wrong length");
  ColourPattern out(r_, s_);
  for (int q = 1; q < r_; ++q)
    for (int p = 0; p < q; ++p) {
      ColourSet old = at(vertex_map[p], vertex_map[q]);
      if (!colour_map.empty()) {
        std::uint32_t bits = 0;
        for (int c : old.members()) bits |= 1U << colour_map[c];
        old = ColourSet(bits);
      }
      out.pairs_[static_cast<std::size_t>(pair_index(p, q))] = old;
    }
  return out;
}

ColourPattern ColourPattern::induced(std::span<const int> vertices) const {
  ColourPattern out(static_cast<int>(vertices.size()), s_);
  for (int q = 1; q < out.r_; ++q)
    for (int p = 0; p < q; ++p) out.pairs_[static_cast<std::size_t>(pair_index(p, q))] = at(vertices[p], vertices[q]);
  return out;
}

ColourPattern ColourPattern::extended(std::span<const ColourSet> profile) const {
  if (static_cast<int>(profile.size()) != r_) throw Error(Errc::InvalidInput, "profile length must equal r");
  ColourPattern out(r_ + 1, s_);
  std::copy(pairs_.begin(), pairs_.end(), out.pairs_.begin());
  for (int i = 0; i < r_; ++i) out.set(i, r_, profile[i]);
  return out;
}

// ---------------------------------------------------------------- Weighting

Weighting Weighting::exact(std::vector<Rational> values) {
  if (values.empty()) throw Error(Errc::InvalidInput, "empty weighting");
  Rational total = 0;
  for (const Rational& v : values) {
    if (v < 0) throw Error(Errc::InvalidInput, "negative weight");
    total += v;
  }
  if (total != 1) throw Error(Errc::InvalidInput, "weights sum to " + format_rational(total) + ", not 1");
  Weighting w;
  w.numeric_.reserve(values.size());
  for (const Rational& v : values) w.numeric_.push_back(to_long_double(v));
  w.exact_ = std::move(values);
  return w;
}

Weighting Weighting::numeric(std::vector<long double> values) {
  if (values.empty()) throw Error(Errc::InvalidInput, "empty weighting");
  long double total = 0;
  for (long double& v : values) {
    if (v < -1e-12L) throw Error(Errc::InvalidInput, "negative weight");
    if (v < 0) v = 0;
    total += v;
  }
  if (std::fabs(total - 1.0L) > 1e-12L) throw Error(Errc::InvalidInput, "weights do not sum to 1");
  Weighting w;
  w.numeric_ = std::move(values);
  return w;
}

Weighting Weighting::uniform(int r) {
  return exact(std::vector<Rational>(static_cast<std::size_t>(r), Rational(1, r)));
}

const std::vector<Rational>& Weighting::exact_values() const {
  if (!exact_) throw Error(Errc::InvalidInput, "weighting is numeric, not exact");
  return *exact_;
}

bool Weighting::positive(int i) const {
  if (exact_) return (*exact_)[static_cast<std::size_t>(i)] > 0;
  return numeric_[static_cast<std::size_t>(i)] > 0;
}

std::vector<int> Weighting::support() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (positive(i)) out.push_back(i);
  return out;
}

// ------------------------------------------------------------- feasibility

FeasibilityReport is_feasible(const ColourPattern& pattern, const ColourSeq& k, int level) {
  if (pattern.s() != k.s()) throw Error(Errc::InvalidInput, "pattern and sequence disagree on s");
  FeasibilityReport report;
  const int r = pattern.r();
  for (int c = 0; c < k.s(); ++c) {
    VertexMask witness = 0;
    if (has_clique(pattern.colour_rows(c), low_mask(r), k[c], &witness)) {
      report.feasible = false;
      report.colour = c;
      report.clique = mask_vertices(witness);
      return report;
    }
  }
  for (int j = 1; j < r; ++j)
    for (int i = 0; i < j; ++i)
      if (pattern.at(i, j).size() < level) {
        report.feasible = false;
        report.low_pair = std::make_pair(i, j);
        return report;
      }
  return report;
}

FeasibleTriple make_triple(ColourPattern pattern, Weighting weighting, const ColourSeq& k, int level) {
  if (pattern.r() != weighting.size()) throw Error(Errc::InvalidInput, "weighting length differs from r");
  if (level < 0 || level > 2) throw Error(Errc::InvalidInput, "level must be 0, 1 or 2");
  FeasibilityReport rep = is_feasible(pattern, k, level);
  if (!rep.feasible) {
    std::string why = rep.colour ? "colour " + std::to_string(*rep.colour + 1) + " spans a forbidden clique"
                                 : "a pair has fewer colours than the level";
    throw Error(Errc::InfeasiblePattern, why);
  }
  return FeasibleTriple{std::move(pattern), std::move(weighting), level};
}

// ------------------------------------------------------------ q and friends

LogForm QBreakdown::form() const {
  if (!exact) throw Error(Errc::InvalidInput, "breakdown is numeric, not exact");
  LogForm f;
  for (int t = 2; t <= s; ++t) f += LogForm::log2_of(static_cast<std::uint64_t>(t)) * d[static_cast<std::size_t>(t - 1)];
  return f;
}

QBreakdown QBreakdown::from_exact(std::vector<Rational> d) {
  QBreakdown q;
  q.s = static_cast<int>(d.size());
  q.exact = true;
  q.d = std::move(d);
  for (const Rational& v : q.d) q.d_numeric.push_back(to_long_double(v));
  q.value = q.form().value();
  return q;
}

QBreakdown q_value(const ColourPattern& pattern, const Weighting& weighting) {
  if (pattern.r() != weighting.size()) throw Error(Errc::InvalidInput, "weighting length differs from r");
  const int s = pattern.s();
  const int r = pattern.r();
  if (weighting.is_exact()) {
    const auto& a = weighting.exact_values();
    std::vector<Rational> d(static_cast<std::size_t>(s), Rational(0));
    for (int j = 1; j < r; ++j)
      for (int i = 0; i < j; ++i) {
        int t = pattern.at(i, j).size();
        if (t > 0) d[static_cast<std::size_t>(t - 1)] += 2 * a[i] * a[j];
      }
    return QBreakdown::from_exact(std::move(d));
  }
  QBreakdown q;
  q.s = s;
  q.d_numeric.assign(static_cast<std::size_t>(s), 0.0L);
  for (int j = 1; j < r; ++j)
    for (int i = 0; i < j; ++i) {
      int t = pattern.at(i, j).size();
      if (t > 0) q.d_numeric[static_cast<std::size_t>(t - 1)] += 2 * weighting[i] * weighting[j];
    }
  for (int t = 2; t <= s; ++t) q.value += q.d_numeric[static_cast<std::size_t>(t - 1)] * std::log2(static_cast<long double>(t));
  return q;
}

namespace {

void check_vertex(const ColourPattern& pattern, int vertex, std::optional<VertexMask> restrict_to) {
  if (vertex < 0 || vertex >= pattern.r()) throw Error(Errc::IndexOutOfRange, "vertex index out of range");
  if (restrict_to && ((*restrict_to >> vertex) & 1U)) {
    throw Error(Errc::InvalidInput, "restriction set contains the vertex itself");
  }
}

}  // namespace

long double q_contrib(const ColourPattern& pattern, const Weighting& weighting, int vertex,
                      std::optional<VertexMask> restrict_to) {
  check_vertex(pattern, vertex, restrict_to);
  long double total = 0;
  for (int j = 0; j < pattern.r(); ++j) {
    if (j == vertex) continue;
    if (restrict_to && !((*restrict_to >> j) & 1U)) continue;
    int t = pattern.at(vertex, j).size();
    if (t > 1) total += weighting[j] * std::log2(static_cast<long double>(t));
  }
  return total;
}

LogForm q_contrib_form(const ColourPattern& pattern, const Weighting& weighting, int vertex,
                       std::optional<VertexMask> restrict_to) {
  check_vertex(pattern, vertex, restrict_to);
  const auto& a = weighting.exact_values();
  LogForm total;
  for (int j = 0; j < pattern.r(); ++j) {
    if (j == vertex) continue;
    if (restrict_to && !((*restrict_to >> j) & 1U)) continue;
    int t = pattern.at(vertex, j).size();
    if (t > 1) total += LogForm::log2_of(static_cast<std::uint64_t>(t)) * a[j];
  }
  return total;
}

std::string_view clone_status_name(CloneStatus s) {
  switch (s) {
    case CloneStatus::NotClone: return "NotClone";
    case CloneStatus::Clone: return "Clone";
    case CloneStatus::StrongClone: return "StrongClone";
  }
  return "?";
}

CloneStatus clone_status(const ColourPattern& pattern, int i, int j) {
  if (i < 0 || j < 0 || i >= pattern.r() || j >= pattern.r()) {
    throw Error(Errc::IndexOutOfRange, "vertex index out of range");
  }
  if (i == j) throw Error(Errc::EqualIndices, "clone test needs distinct vertices");
  ColourSet between = pattern.at(i, j);
  if (between.size() > 1) return CloneStatus::NotClone;
  for (int k = 0; k < pattern.r(); ++k) {
    if (k == i || k == j) continue;
    if (pattern.at(i, k) != pattern.at(j, k)) return CloneStatus::NotClone;
  }
  return between.empty() ? CloneStatus::StrongClone : CloneStatus::Clone;
}

MergeResult merge_clones(const FeasibleTriple& triple) {
  const bool exact = triple.weighting.is_exact();
  ColourPattern pattern = triple.pattern;
  std::vector<Rational> we;
  if (exact) we = triple.weighting.exact_values();
  std::vector<long double> wn = triple.weighting.values();
  std::vector<int> kept(static_cast<std::size_t>(pattern.r()));
  for (int i = 0; i < pattern.r(); ++i) kept[i] = i;

  MergeResult result;
  auto keep_only = [&](const std::vector<int>& idx) {
    pattern = pattern.induced(idx);
    std::vector<int> k2;
    std::vector<Rational> we2;
    std::vector<long double> wn2;
    for (int i : idx) {
      k2.push_back(kept[i]);
      wn2.push_back(wn[i]);
      if (exact) we2.push_back(we[i]);
    }
    kept = std::move(k2);
    wn = std::move(wn2);
    we = std::move(we2);
  };

  std::vector<int> positive;
  for (int i = 0; i < pattern.r(); ++i)
    if (exact ? we[i] > 0 : wn[i] > 0) positive.push_back(i);
  if (static_cast<int>(positive.size()) != pattern.r()) keep_only(positive);

  for (;;) {
    std::optional<std::pair<int, int>> found;
    for (int i = 0; i < pattern.r() && !found; ++i)
      for (int j = i + 1; j < pattern.r(); ++j)
        if (clone_status(pattern, i, j) != CloneStatus::NotClone) {
          found = std::make_pair(i, j);
          break;
        }
    if (!found) break;
    auto [x, y] = *found;
    if (pattern.at(x, y).size() == 1) {
      result.breakdown_preserved = false;
      result.dropped_d1_numeric += 2 * wn[x] * wn[y];
      if (exact) result.dropped_d1 += 2 * we[x] * we[y];
    }
    result.merges.emplace_back(kept[x], kept[y]);
    wn[x] += wn[y];
    if (exact) we[x] += we[y];
    std::vector<int> idx;
    for (int i = 0; i < pattern.r(); ++i)
      if (i != y) idx.push_back(i);
    keep_only(idx);
  }

  Weighting w = exact ? Weighting::exact(we) : Weighting::numeric(wn);
  int level = pattern.r() >= 2 ? std::min(2, pattern.min_multiplicity()) : 2;
  result.triple = FeasibleTriple{std::move(pattern), std::move(w), level};
  result.kept = std::move(kept);
  return result;
}

// ------------------------------------------------------------------ Ramsey

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s < a ? ~std::uint64_t{0} : s;
}

std::uint64_t ramsey_rec(std::vector<int> k, std::map<std::vector<int>, std::uint64_t>& memo) {
  std::sort(k.begin(), k.end(), std::greater<>());
  // Colours that forbid K_2 cannot be used at all.
  std::vector<int> kept;
  for (int v : k)
    if (v > 2) kept.push_back(v);
  if (kept.empty()) return 2;
  if (kept.size() == 1) return static_cast<std::uint64_t>(kept[0]);
  if (auto it = memo.find(kept); it != memo.end()) return it->second;

  static const std::map<std::vector<int>, std::uint64_t> known = {
      {{3, 3}, 6}, {{4, 3}, 9}, {{5, 3}, 14}, {{4, 4}, 18}, {{3, 3, 3}, 17}};
  std::uint64_t value;
  if (auto it = known.find(kept); it != known.end()) {
    value = it->second;
  } else {
    // R(k) <= 2 - s + Σ_c R(k - e_c).
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < kept.size(); ++c) {
      std::vector<int> smaller = kept;
      --smaller[c];
      total = saturating_add(total, ramsey_rec(smaller, memo));
    }
    std::uint64_t s = kept.size();
    value = total == ~std::uint64_t{0} ? total : total + 2 - s;
  }
  memo.emplace(kept, value);
  return value;
}

}  // namespace

std::uint64_t ramsey_upper_bound(const ColourSeq& k) {
  static std::mutex mu;
  static std::map<std::vector<int>, std::uint64_t> memo;
  std::lock_guard lock(mu);
  return ramsey_rec(k.entries(), memo);
}

}  // namespace erlab
