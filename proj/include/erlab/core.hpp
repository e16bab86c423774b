#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "erlab/graph.hpp"
#include "erlab/numeric.hpp"

namespace erlab {

inline constexpr int kMaxColours = 8;

/// Forbidden clique orders k_1 >= ... >= k_s, s >= 2, every k_c >= 3.
class ColourSeq {
 public:
  /// Sorts non-increasing and validates; throws EmptySequence,
  /// SingleColour or EntryBelowThree.
  explicit ColourSeq(std::vector<int> entries);

  int s() const { return static_cast<int>(entries_.size()); }
  int operator[](int c) const { return entries_[static_cast<std::size_t>(c)]; }
  const std::vector<int>& entries() const { return entries_; }
  int min_entry() const { return entries_.back(); }
  /// "3,3,3" style text, also the CLI flag format.
  std::string to_string() const;

  friend bool operator==(const ColourSeq&, const ColourSeq&) = default;

 private:
  std::vector<int> entries_;
};

ColourSeq validate_sequence(std::span<const int> raw);
/// Parses "5,3" (comma separated) into a validated sequence.
ColourSeq parse_sequence(const std::string& text);

/// Subset of the colours [0, s), stored as a bit mask.
class ColourSet {
 public:
  constexpr ColourSet() = default;
  constexpr explicit ColourSet(std::uint32_t bits) : bits_(bits) {}
  static ColourSet of(std::initializer_list<int> colours);
  static constexpr ColourSet full(int s) { return ColourSet((1U << s) - 1); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(int c) const { return (bits_ >> c) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  int size() const { return std::popcount(bits_); }
  constexpr ColourSet with(int c) const { return ColourSet(bits_ | (1U << c)); }
  constexpr ColourSet without(int c) const { return ColourSet(bits_ & ~(1U << c)); }
  constexpr bool subset_of(ColourSet o) const { return (bits_ & ~o.bits_) == 0; }
  std::vector<int> members() const;

  friend constexpr bool operator==(ColourSet, ColourSet) = default;
  friend constexpr auto operator<=>(ColourSet, ColourSet) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Assignment of a colour set to every unordered pair of r parts.
class ColourPattern {
 public:
  ColourPattern() = default;
  ColourPattern(int r, int s);
  /// All pairs receive the same set.
  static ColourPattern uniform(int r, int s, ColourSet value);

  int r() const { return r_; }
  int s() const { return s_; }
  int pair_count() const { return r_ * (r_ - 1) / 2; }

  ColourSet at(int i, int j) const;
  void set(int i, int j, ColourSet value);
  /// Storage order: pairs listed column by column, (0,1),(0,2),(1,2),(0,3),...
  static int pair_index(int i, int j) {
    if (i > j) std::swap(i, j);
    return j * (j - 1) / 2 + i;
  }
  const std::vector<ColourSet>& pair_values() const { return pairs_; }

  /// Adjacency rows of the colour-c graph.
  std::vector<VertexMask> colour_rows(int c) const;
  SimpleGraph colour_graph(int c) const;
  /// Graph of pairs whose multiplicity lies in the given set of sizes (bitmask over t).
  SimpleGraph multiplicity_graph(std::uint32_t sizes) const;
  int min_multiplicity() const;

  /// New pattern whose vertex p is old vertex vertex_map[p] and whose colour
  /// c' = colour_map[c] for every old colour c (colour_map may be empty).
  ColourPattern relabelled(std::span<const int> vertex_map, std::span<const int> colour_map = {}) const;
  ColourPattern induced(std::span<const int> vertices) const;
  /// Adds vertex r with pair values profile[i] towards each i < r.
  ColourPattern extended(std::span<const ColourSet> profile) const;

  friend bool operator==(const ColourPattern&, const ColourPattern&) = default;

 private:
  void check_pair(int i, int j) const;
  int r_ = 0;
  int s_ = 0;
  std::vector<ColourSet> pairs_;
};

/// Point of the simplex. Always carries a numeric view; carries an exact
/// rational view when built from rationals.
class Weighting {
 public:
  Weighting() = default;
  static Weighting exact(std::vector<Rational> values);
  static Weighting numeric(std::vector<long double> values);
  static Weighting uniform(int r);

  int size() const { return static_cast<int>(numeric_.size()); }
  bool is_exact() const { return exact_.has_value(); }
  long double operator[](int i) const { return numeric_[static_cast<std::size_t>(i)]; }
  const std::vector<long double>& values() const { return numeric_; }
  const std::vector<Rational>& exact_values() const;
  bool positive(int i) const;
  std::vector<int> support() const;

  friend bool operator==(const Weighting& a, const Weighting& b) {
    return a.exact_ == b.exact_ && a.numeric_ == b.numeric_;
  }

 private:
  std::vector<long double> numeric_;
  std::optional<std::vector<Rational>> exact_;
};

/// A triple (r, pattern, weighting) with a declared level t in {0, 1, 2}.
struct FeasibleTriple {
  ColourPattern pattern;
  Weighting weighting;
  int level = 0;

  int r() const { return pattern.r(); }
};

/// Builds a triple after checking shapes and feasibility for k at the level;
/// throws InfeasiblePattern / InvalidInput.
FeasibleTriple make_triple(ColourPattern pattern, Weighting weighting, const ColourSeq& k, int level);

struct FeasibilityReport {
  bool feasible = true;
  std::optional<int> colour;            // colour spanning a forbidden clique
  std::vector<int> clique;              // its vertices
  std::optional<std::pair<int, int>> low_pair;  // pair below the level
};

FeasibilityReport is_feasible(const ColourPattern& pattern, const ColourSeq& k, int level);

/// q(φ,α) split by multiplicity: d_t = 2 Σ_{|φ(ij)|=t} α_i α_j.
struct QBreakdown {
  int s = 0;
  bool exact = false;
  std::vector<Rational> d;            // index t-1, present when exact
  std::vector<long double> d_numeric; // index t-1
  long double value = 0;              // Σ_t d_t log2 t

  Rational d_exact(int t) const { return d[static_cast<std::size_t>(t - 1)]; }
  long double d_at(int t) const { return d_numeric[static_cast<std::size_t>(t - 1)]; }
  /// Σ_t d_t log2 t as an exact form (exact breakdowns only).
  LogForm form() const;
  /// Builds an exact breakdown from a d-vector indexed by t-1.
  static QBreakdown from_exact(std::vector<Rational> d);
};

QBreakdown q_value(const ColourPattern& pattern, const Weighting& weighting);
inline QBreakdown q_value(const FeasibleTriple& t) { return q_value(t.pattern, t.weighting); }

/// Σ over j (in restrict_to, default all others) of α_j log2|φ(vertex, j)|.
long double q_contrib(const ColourPattern& pattern, const Weighting& weighting, int vertex,
                      std::optional<VertexMask> restrict_to = std::nullopt);
/// Exact version of q_contrib; requires an exact weighting.
LogForm q_contrib_form(const ColourPattern& pattern, const Weighting& weighting, int vertex,
                       std::optional<VertexMask> restrict_to = std::nullopt);

enum class CloneStatus { NotClone, Clone, StrongClone };
std::string_view clone_status_name(CloneStatus s);

CloneStatus clone_status(const ColourPattern& pattern, int i, int j);

struct MergeResult {
  FeasibleTriple triple;
  std::vector<int> kept;           // original index of each remaining vertex
  std::vector<std::pair<int, int>> merges;  // (kept, removed) in application order
  bool breakdown_preserved = true;
  Rational dropped_d1 = 0;          // exact when the weighting is exact
  long double dropped_d1_numeric = 0;
};

/// Merges clone pairs (smallest pair first, keeping the smaller index) and
/// drops zero-weight vertices.
MergeResult merge_clones(const FeasibleTriple& triple);

/// Upper bound v with r < v for every level-2 feasible triple.
std::uint64_t ramsey_upper_bound(const ColourSeq& k);

}  // namespace erlab
