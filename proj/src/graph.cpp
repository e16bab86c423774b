#include "erlab/graph.hpp"

#include <algorithm>

#include "erlab/error.hpp"

namespace erlab {

std::vector<int> mask_vertices(VertexMask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(lowest(m));
    m &= m - 1;
  }
  return out;
}

VertexMask vertices_mask(const std::vector<int>& vs) {
  VertexMask m = 0;
  for (int v : vs) m |= bit(v);
  return m;
}

SimpleGraph::SimpleGraph(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
  if (n < 0 || n > kMaxGraphVertices) {
    throw Error(Errc::TooLarge, "graph order must lie in [0, 64]");
  }
}

SimpleGraph::SimpleGraph(int n, const std::vector<std::pair<int, int>>& edges)
    : SimpleGraph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

SimpleGraph SimpleGraph::complete(int n) {
  SimpleGraph g(n);
  for (int v = 0; v < n; ++v) g.rows_[v] = low_mask(n) & ~bit(v);
  return g;
}

SimpleGraph SimpleGraph::cycle(int n) {
  SimpleGraph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

SimpleGraph SimpleGraph::complete_multipartite(const std::vector<int>& parts) {
  int n = 0;
  for (int p : parts) n += p;
  std::vector<int> part_of;
  for (std::size_t i = 0; i < parts.size(); ++i) part_of.insert(part_of.end(), parts[i], static_cast<int>(i));
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (part_of[u] != part_of[v]) g.add_edge(u, v);
  return g;
}

SimpleGraph SimpleGraph::turan(int m, int n) {
  std::vector<int> parts(static_cast<std::size_t>(m), n / m);
  for (int i = 0; i < n % m; ++i) ++parts[i];
  return complete_multipartite(parts);
}

void SimpleGraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw Error(Errc::IndexOutOfRange, "edge endpoint out of range");
  }
  if (u == v) throw Error(Errc::InvalidInput, "loops are not allowed");
  rows_[u] |= bit(v);
  rows_[v] |= bit(u);
}

void SimpleGraph::remove_edge(int u, int v) {
  rows_[u] &= ~bit(v);
  rows_[v] &= ~bit(u);
}

int SimpleGraph::edge_count() const {
  int twice = 0;
  for (VertexMask r : rows_) twice += popcount(r);
  return twice / 2;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u)
    for (VertexMask m = rows_[u] & ~low_mask(u + 1); m; m &= m - 1) out.emplace_back(u, lowest(m));
  return out;
}

SimpleGraph SimpleGraph::complement() const {
  SimpleGraph g(n_);
  for (int v = 0; v < n_; ++v) g.rows_[v] = ~rows_[v] & low_mask(n_) & ~bit(v);
  return g;
}

SimpleGraph SimpleGraph::induced(VertexMask vertices) const {
  std::vector<int> vs = mask_vertices(vertices);
  SimpleGraph g(static_cast<int>(vs.size()));
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (has_edge(vs[a], vs[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
  return g;
}

namespace {

struct CliqueSearch {
  const std::vector<VertexMask>& rows;
  VertexMask best = 0;
  int best_size = 0;

  // Greedy sequential colouring of the candidate set gives the classic
  // upper bound: a clique uses at most one vertex per colour class.
  void expand(VertexMask current, int current_size, VertexMask candidates) {
    if (!candidates) {
      if (current_size > best_size) {
        best_size = current_size;
        best = current;
      }
      return;
    }
    std::vector<int> order;
    std::vector<int> colour_bound;
    VertexMask uncoloured = candidates;
    int colour = 0;
    while (uncoloured) {
      ++colour;
      VertexMask available = uncoloured;
      while (available) {
        int v = lowest(available);
        available &= ~bit(v) & ~rows[v];
        uncoloured &= ~bit(v);
        order.push_back(v);
        colour_bound.push_back(colour);
      }
    }
    for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
      if (current_size + colour_bound[idx] <= best_size) return;
      int v = order[idx];
      expand(current | bit(v), current_size + 1, candidates & rows[v]);
      candidates &= ~bit(v);
    }
  }
};

bool clique_dfs(const std::vector<VertexMask>& rows, VertexMask candidates, int needed,
                VertexMask chosen, VertexMask* witness) {
  if (needed == 0) {
    if (witness) *witness = chosen;
    return true;
  }
  while (popcount(candidates) >= needed) {
    int v = lowest(candidates);
    candidates &= ~bit(v);
    if (clique_dfs(rows, candidates & rows[v], needed - 1, chosen | bit(v), witness)) return true;
  }
  return false;
}

void bron_kerbosch(const std::vector<VertexMask>& rows, VertexMask r, VertexMask p, VertexMask x,
                   std::vector<VertexMask>& out) {
  if (!p && !x) {
    out.push_back(r);
    return;
  }
  VertexMask px = p | x;
  int pivot = lowest(px);
  int best = -1;
  for (VertexMask m = px; m; m &= m - 1) {
    int u = lowest(m);
    int score = popcount(p & rows[u]);
    if (score > best) {
      best = score;
      pivot = u;
    }
  }
  for (VertexMask m = p & ~rows[pivot]; m; m &= m - 1) {
    int v = lowest(m);
    bron_kerbosch(rows, r | bit(v), p & rows[v], x & rows[v], out);
    p &= ~bit(v);
    x |= bit(v);
  }
}

}  // namespace

CliqueResult max_clique(const std::vector<VertexMask>& rows, VertexMask candidates) {
  CliqueSearch search{rows};
  search.expand(0, 0, candidates);
  return {search.best_size, mask_vertices(search.best)};
}

CliqueResult max_clique(const SimpleGraph& g) { return max_clique(g.rows(), low_mask(g.n())); }

bool has_clique(const std::vector<VertexMask>& rows, VertexMask candidates, int order,
                VertexMask* witness) {
  if (order <= 0) {
    if (witness) *witness = 0;
    return true;
  }
  return clique_dfs(rows, candidates, order, 0, witness);
}

std::vector<VertexMask> maximal_cliques(const SimpleGraph& g) {
  std::vector<VertexMask> out;
  if (g.n() == 0) return out;
  bron_kerbosch(g.rows(), 0, low_mask(g.n()), 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_complete_multipartite(const SimpleGraph& g, std::vector<VertexMask>* parts) {
  // Complete multipartite iff non-adjacency is an equivalence relation, i.e.
  // every vertex's non-neighbourhood (with itself) is a clique of the complement
  // shared by all its members.
  const int n = g.n();
  const VertexMask all = low_mask(n);
  VertexMask seen = 0;
  std::vector<VertexMask> classes;
  for (int v = 0; v < n; ++v) {
    if (seen & bit(v)) continue;
    VertexMask cls = (all & ~g.neighbours(v));
    for (VertexMask m = cls; m; m &= m - 1) {
      int u = lowest(m);
      if ((all & ~g.neighbours(u)) != cls) return false;
    }
    seen |= cls;
    classes.push_back(cls);
  }
  if (parts) *parts = std::move(classes);
  return true;
}

std::string to_graph6(const SimpleGraph& g) {
  const int n = g.n();
  std::string out;
  out.push_back(static_cast<char>(63 + n));
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
  return out;
}

}  // namespace erlab
