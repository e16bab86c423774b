#include "erlab/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "erlab/canon.hpp"
#include "erlab/error.hpp"
#include "erlab/parallel.hpp"

namespace erlab {

namespace {

struct ColouringDfs {
  const ColourSeq& k;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<VertexMask>> rows;
  std::uint64_t count = 0;

  void run(std::size_t idx) {
    if (idx == edges.size()) {
      ++count;
      return;
    }
    auto [u, v] = edges[idx];
    for (int c = 0; c < k.s(); ++c) {
      VertexMask common = rows[c][u] & rows[c][v];
      int need = k[c] - 2;
      if (popcount(common) >= need && has_clique(rows[c], common, need)) continue;
      rows[c][u] |= bit(v);
      rows[c][v] |= bit(u);
      run(idx + 1);
      rows[c][u] &= ~bit(v);
      rows[c][v] &= ~bit(u);
    }
  }
};

const ValueMaps& identity_graph_maps() {
  static const ValueMaps maps{{0, 1, 2}};
  return maps;
}

// Pair values: 1 non-edge, 2 edge.
Code graph_code(const SimpleGraph& g) {
  Code code;
  for (int j = 1; j < g.n(); ++j)
    for (int i = 0; i < j; ++i) code.push_back(g.has_edge(i, j) ? 2 : 1);
  return code;
}

SimpleGraph graph_from_code(const Code& code, int n) {
  SimpleGraph g(n);
  for (int j = 1, idx = 0; j < n; ++j)
    for (int i = 0; i < j; ++i, ++idx)
      if (code[idx] == 2) g.add_edge(i, j);
  return g;
}

void graph_dfs(int n, std::size_t idx, const std::vector<std::pair<int, int>>& pairs, Code& code,
               std::vector<SimpleGraph>& out) {
  auto [i, j] = pairs[idx];
  for (std::uint16_t v : {std::uint16_t{2}, std::uint16_t{1}}) {
    code[idx] = v;
    if (i == j - 1) {
      if (!is_canonical(code, j + 1, identity_graph_maps())) continue;
      if (j == n - 1) out.push_back(graph_from_code(code, n));
      else graph_dfs(n, idx + 1, pairs, code, out);
    } else {
      graph_dfs(n, idx + 1, pairs, code, out);
    }
  }
  code[idx] = 0;
}

}  // namespace

BigInt count_valid_colourings(const SimpleGraph& g, const ColourSeq& k) {
  const int s = k.s();
  const int e = g.edge_count();
  if (s == 2 ? e > 24 : std::pow(static_cast<long double>(s), e) > 1e8L) {
    throw Error(Errc::TooLarge, "too many colourings to enumerate");
  }
  // Edges lying in no K_{k_c} of g for any c are unconstrained.
  std::vector<std::pair<int, int>> constrained;
  int free_edges = 0;
  for (auto [u, v] : g.edges()) {
    VertexMask common = g.neighbours(u) & g.neighbours(v);
    bool bound = false;
    for (int c = 0; c < s && !bound; ++c) bound = has_clique(g.rows(), common, k[c] - 2);
    if (bound) constrained.emplace_back(u, v);
    else ++free_edges;
  }
  std::stable_sort(constrained.begin(), constrained.end(), [&](auto a, auto b) {
    return popcount(g.neighbours(a.first) & g.neighbours(a.second)) >
           popcount(g.neighbours(b.first) & g.neighbours(b.second));
  });
  ColouringDfs dfs{k, constrained,
                   std::vector<std::vector<VertexMask>>(static_cast<std::size_t>(s),
                                                        std::vector<VertexMask>(static_cast<std::size_t>(g.n()), 0))};
  dfs.run(0);
  return BigInt(dfs.count) * boost::multiprecision::pow(BigInt(s), static_cast<unsigned>(free_edges));
}

std::vector<SimpleGraph> enumerate_graphs(int n) {
  if (n < 0 || n > 10) throw Error(Errc::TooLarge, "graph enumeration is limited to n <= 10");
  if (n <= 1) return {SimpleGraph(n)};
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) pairs.emplace_back(i, j);
  Code code(pairs.size(), 0);
  std::vector<SimpleGraph> out;
  graph_dfs(n, 0, pairs, code, out);
  return out;
}

bool is_canonical_graph(const SimpleGraph& g) { return is_canonical(graph_code(g), g.n(), identity_graph_maps()); }

SimpleGraph canonical_graph(const SimpleGraph& g) {
  return graph_from_code(canonical_label(graph_code(g), g.n(), identity_graph_maps()).code, g.n());
}

ExtremalResult extremal_search(int n, const ColourSeq& k) {
  const int s = k.s();
  const int limit = s == 2 ? 7 : (s == 3 ? 5 : 4);
  if (n < 1) throw Error(Errc::InvalidInput, "n must be at least 1");
  if (n > limit) throw Error(Errc::TooLarge, "extremal search beyond n = " + std::to_string(limit));
  ExtremalResult res;
  res.n = n;
  std::vector<SimpleGraph> graphs = enumerate_graphs(n);
  std::vector<BigInt> counts(graphs.size());
  parallel_for(graphs.size(), [&](std::size_t i) { counts[i] = count_valid_colourings(graphs[i], k); });
  res.max_count = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    res.counts.push_back({graphs[i], counts[i]});
    if (counts[i] > res.max_count) res.max_count = counts[i];
  }
  res.all_complete_multipartite = true;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (counts[i] != res.max_count) continue;
    res.maximisers.push_back(graphs[i]);
    bool cm = is_complete_multipartite(graphs[i]);
    res.all_complete_multipartite = res.all_complete_multipartite && cm;
    res.some_complete_multipartite = res.some_complete_multipartite || cm;
  }
  return res;
}

std::vector<int> part_sizes(const Weighting& weighting, int n) {
  const auto& a = weighting.exact_values();
  const int r = weighting.size();
  std::vector<int> sizes(static_cast<std::size_t>(r));
  std::vector<Rational> remainder(static_cast<std::size_t>(r));
  int assigned = 0;
  for (int i = 0; i < r; ++i) {
    Rational target = a[i] * n;
    BigInt whole = boost::multiprecision::numerator(target) / boost::multiprecision::denominator(target);
    sizes[i] = static_cast<int>(whole);
    remainder[i] = target - Rational(whole);
    assigned += sizes[i];
  }
  std::vector<int> order(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return remainder[x] > remainder[y]; });
  for (int t = 0; t < n - assigned; ++t) ++sizes[order[t]];
  return sizes;
}

SimpleGraph blowup_graph(const ColourPattern& pattern, const std::vector<int>& sizes) {
  std::vector<int> owner;
  for (int i = 0; i < pattern.r(); ++i) owner.insert(owner.end(), static_cast<std::size_t>(sizes[i]), i);
  SimpleGraph g(static_cast<int>(owner.size()));
  for (int b = 1; b < g.n(); ++b)
    for (int a = 0; a < b; ++a)
      if (owner[a] != owner[b] && !pattern.at(owner[a], owner[b]).empty()) g.add_edge(a, b);
  return g;
}

BigInt pattern_colouring_count(const FeasibleTriple& triple, int n) {
  if (n < 0 || n > 10000) throw Error(Errc::InvalidInput, "n must lie in [0, 10^4]");
  if (!triple.weighting.is_exact()) throw Error(Errc::InvalidInput, "pattern counts need exact weights");
  std::vector<int> sizes = part_sizes(triple.weighting, n);
  BigInt total = 1;
  for (int j = 1; j < triple.r(); ++j)
    for (int i = 0; i < j; ++i) {
      int t = triple.pattern.at(i, j).size();
      if (t == 0) continue;
      total *= boost::multiprecision::pow(BigInt(t), static_cast<unsigned>(sizes[i] * sizes[j]));
    }
  return total;
}

std::string graph_name(const SimpleGraph& g) {
  std::vector<VertexMask> parts;
  if (g.n() > 0 && is_complete_multipartite(g, &parts)) {
    if (parts.size() == 1) return "E_" + std::to_string(g.n());
    if (static_cast<int>(parts.size()) == g.n()) return "K_" + std::to_string(g.n());
    std::vector<int> sizes;
    for (VertexMask p : parts) sizes.push_back(popcount(p));
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    std::string out = "K_{";
    for (std::size_t i = 0; i < sizes.size(); ++i) out += (i ? "," : "") + std::to_string(sizes[i]);
    return out + "}";
  }
  return to_graph6(g);
}

}  // namespace erlab
