#pragma once

#include <string>
#include <vector>

#include "erlab/core.hpp"
#include "erlab/graph.hpp"
#include "erlab/numeric.hpp"

namespace erlab {

/// Number of k-valid colourings of g: edge colourings with no colour-c K_{k_c}.
/// Throws TooLarge beyond 2^24 colourings for s = 2 or 10^8 otherwise.
BigInt count_valid_colourings(const SimpleGraph& g, const ColourSeq& k);

/// One canonical representative per isomorphism class of graphs on n vertices.
std::vector<SimpleGraph> enumerate_graphs(int n);
bool is_canonical_graph(const SimpleGraph& g);
SimpleGraph canonical_graph(const SimpleGraph& g);

struct GraphCount {
  SimpleGraph graph;
  BigInt count;
};

struct ExtremalResult {
  int n = 0;
  BigInt max_count;
  std::vector<SimpleGraph> maximisers;
  std::vector<GraphCount> counts;     // every class, enumeration order
  bool all_complete_multipartite = false;
  bool some_complete_multipartite = false;
};

/// Throws TooLarge for n > 7 (s = 2), n > 5 (s = 3) or n > 4 (s >= 4).
ExtremalResult extremal_search(int n, const ColourSeq& k);

/// Largest-remainder rounding of α_i n; ties go to the smaller index.
std::vector<int> part_sizes(const Weighting& weighting, int n);

/// Blow-up graph: part i has sizes[i] vertices, parts i, j are completely
/// joined iff φ(ij) is non-empty.
SimpleGraph blowup_graph(const ColourPattern& pattern, const std::vector<int>& sizes);

/// ∏ over pairs with φ(ij) non-empty of |φ(ij)|^{|X_i||X_j|}; needs exact weights, n <= 10^4.
BigInt pattern_colouring_count(const FeasibleTriple& triple, int n);

/// "K_{3,3}" style name for complete multipartite graphs ("K_n" complete, "E_n"
/// edgeless), graph6 otherwise.
std::string graph_name(const SimpleGraph& g);

}  // namespace erlab
