#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace erlab {

using VertexMask = std::uint64_t;

inline constexpr int kMaxGraphVertices = 64;

inline constexpr VertexMask bit(int i) { return VertexMask{1} << i; }
inline constexpr VertexMask low_mask(int n) {
  return n >= 64 ? ~VertexMask{0} : (VertexMask{1} << n) - 1;
}
inline int popcount(VertexMask m) { return std::popcount(m); }
inline int lowest(VertexMask m) { return std::countr_zero(m); }

std::vector<int> mask_vertices(VertexMask m);
VertexMask vertices_mask(const std::vector<int>& vs);

/// Undirected loopless graph on [0, n) stored as adjacency bit rows.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n);
  SimpleGraph(int n, const std::vector<std::pair<int, int>>& edges);

  static SimpleGraph complete(int n);
  static SimpleGraph cycle(int n);
  /// Complete multipartite graph with the given part sizes.
  static SimpleGraph complete_multipartite(const std::vector<int>& parts);
  /// Turán graph T_m(n).
  static SimpleGraph turan(int m, int n);

  int n() const { return n_; }
  const std::vector<VertexMask>& rows() const { return rows_; }
  VertexMask neighbours(int v) const { return rows_[v]; }
  bool has_edge(int u, int v) const { return (rows_[u] >> v) & 1U; }
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;
  SimpleGraph complement() const;
  SimpleGraph induced(VertexMask vertices) const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  int n_ = 0;
  std::vector<VertexMask> rows_;
};

struct CliqueResult {
  int size = 0;
  std::vector<int> vertices;
};

/// Clique number with a witness (branch and bound, greedy-colouring bound).
CliqueResult max_clique(const SimpleGraph& g);
CliqueResult max_clique(const std::vector<VertexMask>& rows, VertexMask candidates);

/// True iff the subgraph induced on candidates has a clique of the given order;
/// on success, *witness receives it.
bool has_clique(const std::vector<VertexMask>& rows, VertexMask candidates, int order,
                VertexMask* witness = nullptr);

/// All maximal cliques (Bron–Kerbosch with Tomita pivoting), as vertex masks.
std::vector<VertexMask> maximal_cliques(const SimpleGraph& g);

/// Complete multipartite test; on success, parts receives the vertex classes.
bool is_complete_multipartite(const SimpleGraph& g, std::vector<VertexMask>* parts = nullptr);

/// Standard graph6 encoding (n <= 62).
std::string to_graph6(const SimpleGraph& g);

}  // namespace erlab
