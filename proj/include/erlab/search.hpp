#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "erlab/canon.hpp"
#include "erlab/core.hpp"

namespace erlab {

/// Colour permutations that only exchange colours of equal clique order,
/// as value maps over codes (value = colour-set bits + 1). Identity first.
ValueMaps colour_value_maps(const ColourSeq& k);

Code pattern_code(const ColourPattern& pattern);
ColourPattern pattern_from_code(const Code& code, int r, int s);

struct CanonicalPattern {
  ColourPattern pattern;
  Code canonical_code;
};

/// Canonical representative under vertex relabelling and admissible colour relabelling.
CanonicalPattern canonical_pattern(const ColourPattern& pattern, const ColourSeq& k);
bool is_canonical_pattern(const ColourPattern& pattern, const ColourSeq& k);

struct EnumerationStats {
  std::uint64_t nodes = 0;
  std::uint64_t patterns = 0;
  bool complete = true;
};

/// Streams one canonical representative per isomorphism class of level-2
/// feasible patterns on r vertices. The callback returns false to stop;
/// column_filter(j, partial) may reject a subtree once vertices 0..j are decided.
EnumerationStats enumerate_patterns(
    int r, const ColourSeq& k, const std::function<bool(const ColourPattern&)>& visit,
    std::uint64_t budget = UINT64_MAX,
    const std::function<bool(int, const ColourPattern&)>& column_filter = nullptr);

std::vector<ColourPattern> enumerate_patterns(int r, const ColourSeq& k);

struct SearchOptions {
  std::uint64_t budget = 100000000;
  bool prune = true;
};

struct SearchRow {
  int r = 0;
  bool exhaustive = true;
  std::uint64_t nodes = 0;
  std::uint64_t patterns = 0;
  std::optional<long double> best;  // best q over Φ_2(r;k), if non-empty and complete
};

struct SearchResult {
  ColourSeq k;
  int r_max = 0;
  std::vector<SearchRow> rows;
  QBreakdown best_value;
  std::vector<FeasibleTriple> optima;

  bool exhaustive() const;
};

/// Branch and bound over Φ_2(r;k), r = 1..r_max.
SearchResult solve_Q2(const ColourSeq& k, int r_max, const SearchOptions& options = {});

struct CheckRecord {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CandidateCertificate {
  std::vector<CheckRecord> checks;
  QBreakdown value;
  bool passed() const;
};

CandidateCertificate verify_candidate(const FeasibleTriple& triple, const ColourSeq& k, const QBreakdown& claimed);

/// The explicit optimal triple known for k, if any: K_{k-1} with every pair
/// fully coloured for (k,k) and (k,k,k); K_{l-1} on two colours for (k,l);
/// the three-matching pattern for (3,3,3,3); the affine plane for (4,4,4,4).
std::optional<FeasibleTriple> known_construction(const ColourSeq& k);

ColourPattern matching_pattern();
ColourPattern affine_plane_pattern();

}  // namespace erlab
