#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "erlab/core.hpp"
#include "erlab/graph.hpp"

namespace erlab {

inline constexpr int kMaxCapacityVertices = 12;

enum class CapacityKind { OnlyOnes, SumBounded, ExplicitAntichain };
std::string_view capacity_kind_name(CapacityKind kind);

/// Cap(G,k): blow-up size vectors keeping the blow-up K_k-free, described by
/// its maximal elements.
struct CapacityDescription {
  CapacityKind kind = CapacityKind::OnlyOnes;
  int k = 0;
  int bound = 0;                                // k-1 for SumBounded
  std::vector<std::vector<int>> max_vectors;    // maximal elements, lexicographically sorted
  std::vector<VertexMask> maximal_cliques;
  /// Membership by the clique-sum criterion.
  bool contains(const std::vector<int>& sizes) const;
};

/// True iff every clique C of g has Σ_{i∈C} sizes_i <= k-1.
bool in_capacity(const SimpleGraph& g, int k, const std::vector<int>& sizes);

/// Throws NotKFree when g contains K_k, TooLarge when n > 12.
CapacityDescription capacity(const SimpleGraph& g, int k);

/// Graph obtained by replacing vertex i with a clique of order sizes[i].
SimpleGraph blow_up(const SimpleGraph& g, const std::vector<int>& sizes);

struct MaximalityReport {
  bool holds = false;
  bool k_free = false;
  std::vector<int> clique;                       // a K_k when not k_free
  std::optional<std::pair<int, int>> non_edge;   // addable without creating K_k
};

MaximalityReport is_maximally_kfree(const SimpleGraph& g, int k);

struct NocapClause {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct NocapReport {
  std::vector<NocapClause> clauses;
  std::vector<CapacityDescription> capacities;  // one per colour
  bool passed() const;
};

/// Structural checks on a basic optimal triple: every colour graph maximally
/// K_{k_c}-free, non-trivial capacity only for colour 1 when k_1 > k_2 and its
/// graph is complete, and r >= k_2 - 1. Throws NotBasicOptimal when the triple
/// is not level-2 feasible with positive stationary weights.
NocapReport validate_nocap(const FeasibleTriple& triple, const ColourSeq& k);

}  // namespace erlab
