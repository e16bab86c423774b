#include "erlab/capacity.hpp"

#include <algorithm>

#include "erlab/error.hpp"
#include "erlab/weights.hpp"

namespace erlab {

std::string_view capacity_kind_name(CapacityKind kind) {
  switch (kind) {
    case CapacityKind::OnlyOnes: return "OnlyOnes";
    case CapacityKind::SumBounded: return "SumBounded";
    case CapacityKind::ExplicitAntichain: return "ExplicitAntichain";
  }
  return "?";
}

namespace {

bool sizes_fit(const std::vector<VertexMask>& cliques, int k, const std::vector<int>& sizes) {
  for (VertexMask c : cliques) {
    int total = 0;
    for (VertexMask m = c; m; m &= m - 1) total += sizes[lowest(m)];
    if (total > k - 1) return false;
  }
  return true;
}

struct AntichainDfs {
  int n, k;
  const std::vector<VertexMask>& cliques;
  std::vector<int> sizes;
  std::vector<std::vector<int>> out;

  // Remaining room in clique c once every unassigned member is given size 1.
  int slack(VertexMask c, int assigned) const {
    int used = 0;
    for (VertexMask m = c; m; m &= m - 1) {
      int v = lowest(m);
      used += v < assigned ? sizes[v] : 1;
    }
    return k - 1 - used;
  }

  void run(int i) {
    if (i == n) {
      for (int v = 0; v < n; ++v) {
        bool tight = false;
        for (VertexMask c : cliques)
          if ((c >> v & 1U) && slack(c, n) == 0) tight = true;
        if (!tight) return;
      }
      out.push_back(sizes);
      return;
    }
    int top = k - 1;
    for (VertexMask c : cliques)
      if (c >> i & 1U) top = std::min(top, 1 + slack(c, i));
    for (int v = top; v >= 1; --v) {
      sizes[i] = v;
      run(i + 1);
    }
    sizes[i] = 1;
  }
};

}  // namespace

bool in_capacity(const SimpleGraph& g, int k, const std::vector<int>& sizes) {
  if (static_cast<int>(sizes.size()) != g.n()) throw Error(Errc::InvalidInput, "size vector length differs from n");
  for (int v : sizes)
    if (v < 0) throw Error(Errc::InvalidInput, "negative blow-up size");
  return sizes_fit(maximal_cliques(g), k, sizes);
}

bool CapacityDescription::contains(const std::vector<int>& sizes) const { return sizes_fit(maximal_cliques, k, sizes); }

CapacityDescription capacity(const SimpleGraph& g, int k) {
  const int n = g.n();
  if (n < 1) throw Error(Errc::InvalidInput, "graph must have a vertex");
  if (n > kMaxCapacityVertices) throw Error(Errc::TooLarge, "capacity is limited to n <= 12");
  if (k < 2) throw Error(Errc::InvalidInput, "clique order must be at least 2");
  CapacityDescription d;
  d.k = k;
  d.maximal_cliques = maximal_cliques(g);
  if (has_clique(g.rows(), low_mask(n), k)) throw Error(Errc::NotKFree, "graph contains K_" + std::to_string(k));

  bool only_ones = true;
  for (int v = 0; v < n && only_ones; ++v) {
    std::vector<int> bumped(static_cast<std::size_t>(n), 1);
    bumped[v] = 2;
    if (sizes_fit(d.maximal_cliques, k, bumped)) only_ones = false;
  }
  AntichainDfs dfs{n, k, d.maximal_cliques, std::vector<int>(static_cast<std::size_t>(n), 1), {}};
  if (only_ones) {
    d.kind = CapacityKind::OnlyOnes;
    d.max_vectors = {std::vector<int>(static_cast<std::size_t>(n), 1)};
    return d;
  }
  d.kind = g.edge_count() == n * (n - 1) / 2 ? CapacityKind::SumBounded : CapacityKind::ExplicitAntichain;
  if (d.kind == CapacityKind::SumBounded) d.bound = k - 1;
  dfs.run(0);
  d.max_vectors = std::move(dfs.out);
  std::sort(d.max_vectors.begin(), d.max_vectors.end());
  return d;
}

SimpleGraph blow_up(const SimpleGraph& g, const std::vector<int>& sizes) {
  std::vector<int> owner;
  for (int i = 0; i < g.n(); ++i) owner.insert(owner.end(), static_cast<std::size_t>(sizes[i]), i);
  SimpleGraph out(static_cast<int>(owner.size()));
  for (int a = 0; a < out.n(); ++a)
    for (int b = a + 1; b < out.n(); ++b)
      if (owner[a] == owner[b] || g.has_edge(owner[a], owner[b])) out.add_edge(a, b);
  return out;
}

MaximalityReport is_maximally_kfree(const SimpleGraph& g, int k) {
  MaximalityReport rep;
  const int n = g.n();
  VertexMask witness = 0;
  rep.k_free = !has_clique(g.rows(), low_mask(n), k, &witness);
  if (!rep.k_free) {
    rep.clique = mask_vertices(witness);
    return rep;
  }
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (g.has_edge(i, j)) continue;
      // adding ij creates K_k iff the common neighbourhood holds K_{k-2}
      VertexMask common = g.neighbours(i) & g.neighbours(j);
      if (!has_clique(g.rows(), common, k - 2)) {
        rep.non_edge = std::make_pair(i, j);
        return rep;
      }
    }
  rep.holds = true;
  return rep;
}

bool NocapReport::passed() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const NocapClause& c) { return c.passed; });
}

NocapReport validate_nocap(const FeasibleTriple& triple, const ColourSeq& k) {
  const auto& p = triple.pattern;
  if (p.s() != k.s() || p.r() != triple.weighting.size() || !is_feasible(p, k, 2).feasible) {
    throw Error(Errc::NotBasicOptimal, "triple is not level-2 feasible for k");
  }
  for (int i = 0; i < p.r(); ++i)
    if (!triple.weighting.positive(i)) throw Error(Errc::NotBasicOptimal, "triple has a zero weight");
  if (!verify_stationarity(triple, 1e-8L).holds) throw Error(Errc::NotBasicOptimal, "weights are not stationary");

  NocapReport rep;
  const int s = k.s();
  for (int c = 0; c < s; ++c) {
    SimpleGraph g = p.colour_graph(c);
    auto maximal = is_maximally_kfree(g, k[c]);
    std::string label = "colour " + std::to_string(c + 1);
    std::string detail;
    if (maximal.non_edge) {
      detail = "pair " + std::to_string(maximal.non_edge->first + 1) + "," +
               std::to_string(maximal.non_edge->second + 1) + " can be added";
    }
    rep.clauses.push_back({"maximally_k_free[" + label + "]", maximal.holds, detail});

    auto cap = capacity(g, k[c]);
    bool complete = g.edge_count() == g.n() * (g.n() - 1) / 2;
    bool allowed = cap.kind == CapacityKind::OnlyOnes || (c == 0 && k[0] > k[1] && complete);
    rep.clauses.push_back({"capacity[" + label + "]", allowed, std::string(capacity_kind_name(cap.kind))});
    rep.capacities.push_back(std::move(cap));
  }
  bool big_enough = p.r() >= k[1] - 1;
  rep.clauses.push_back({"r_at_least_k2_minus_1", big_enough,
                         "r = " + std::to_string(p.r()) + ", k_2 - 1 = " + std::to_string(k[1] - 1)});
  return rep;
}

}  // namespace erlab
