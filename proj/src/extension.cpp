#include "erlab/extension.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "erlab/error.hpp"
#include "erlab/parallel.hpp"
#include "erlab/weights.hpp"

namespace erlab {

long double ext_value(const Weighting& weighting, const Attachment& a) {
  long double total = 0;
  for (std::size_t i = 0; i < a.profile.size(); ++i) {
    int t = a.profile[i].size();
    if (t >= 2) total += weighting[static_cast<int>(i)] * std::log2(static_cast<long double>(t));
  }
  return total;
}

LogForm ext_form(const Weighting& weighting, const Attachment& a) {
  const auto& w = weighting.exact_values();
  LogForm total;
  for (std::size_t i = 0; i < a.profile.size(); ++i) {
    int t = a.profile[i].size();
    if (t >= 2) total += LogForm::log2_of(static_cast<std::uint64_t>(t)) * w[i];
  }
  return total;
}

namespace {

constexpr long double kExtTol = 1e-9L;

void require_basic_optimal(const FeasibleTriple& triple, const ColourSeq& k, const QBreakdown& Q) {
  const auto& p = triple.pattern;
  if (p.s() != k.s() || p.r() != triple.weighting.size() || p.r() < 1) {
    throw Error(Errc::NotBasicOptimal, "triple shape does not match k");
  }
  if (!is_feasible(p, k, 2).feasible) throw Error(Errc::NotBasicOptimal, "triple is not level-2 feasible");
  for (int i = 0; i < p.r(); ++i)
    if (!triple.weighting.positive(i)) throw Error(Errc::NotBasicOptimal, "triple has a zero weight");
  if (!verify_stationarity(triple, 1e-8L).holds) throw Error(Errc::NotBasicOptimal, "weights are not stationary");
  QBreakdown q = q_value(triple);
  bool equal = q.exact && Q.exact ? q.form() == Q.form() : std::fabs(q.value - Q.value) <= kExtTol;
  if (!equal) throw Error(Errc::NotBasicOptimal, "q of the triple differs from Q");
}

// Depth-first search over attachment profiles, vertex by vertex. Colour c may
// join the new vertex to i only if the colour-c neighbourhood so far, restricted
// to the colour-c neighbours of i, has no K_{k_c-2}.
struct AttachDfs {
  const ColourPattern& pattern;
  const ColourSeq& k;
  const Weighting& weighting;
  bool tight = true;
  int r = 0;
  int s = 0;
  std::vector<std::vector<VertexMask>> rows;
  std::vector<long double> log_size;  // log2 t for t = 0..s
  std::vector<VertexMask> nbhd;
  std::vector<ColourSet> profile;
  std::uint64_t nodes = 0;

  std::function<void(long double)> on_leaf;
  std::function<long double()> threshold;  // subtrees whose bound is below it are cut
  bool strict = false;                     // also cut bounds equal to it

  AttachDfs(const ColourPattern& p, const ColourSeq& seq, const Weighting& w)
      : pattern(p), k(seq), weighting(w), r(p.r()), s(p.s()) {
    for (int c = 0; c < s; ++c) rows.push_back(p.colour_rows(c));
    for (int t = 0; t <= s; ++t) log_size.push_back(t >= 2 ? std::log2(static_cast<long double>(t)) : 0.0L);
    nbhd.assign(static_cast<std::size_t>(s), 0);
    profile.assign(static_cast<std::size_t>(r), ColourSet());
  }

  std::uint32_t addable(int i) const {
    std::uint32_t mask = 0;
    for (int c = 0; c < s; ++c) {
      VertexMask common = nbhd[c] & rows[c][i];
      if (!has_clique(rows[c], common, k[c] - 2)) mask |= 1U << c;
    }
    return mask;
  }

  long double upper(int from) const {
    long double total = 0;
    for (int i = from; i < r; ++i) total += weighting[i] * (tight ? log_size[std::popcount(addable(i))] : log_size[s]);
    return total;
  }

  std::vector<std::uint32_t> choices(int i) const {
    std::uint32_t allowed = addable(i);
    std::vector<std::uint32_t> out;
    for (std::uint32_t sub = allowed;; sub = (sub - 1) & allowed) {
      out.push_back(sub);
      if (sub == 0) break;
    }
    std::stable_sort(out.begin(), out.end(), [](std::uint32_t a, std::uint32_t b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa > pb : a > b;
    });
    return out;
  }

  void apply(int i, std::uint32_t bits, long double& partial) {
    profile[i] = ColourSet(bits);
    for (int c = 0; c < s; ++c)
      if (bits >> c & 1U) nbhd[c] |= bit(i);
    partial += weighting[i] * log_size[std::popcount(bits)];
  }

  void undo(int i, std::uint32_t bits, long double& partial) {
    for (int c = 0; c < s; ++c)
      if (bits >> c & 1U) nbhd[c] &= ~bit(i);
    partial -= weighting[i] * log_size[std::popcount(bits)];
    profile[i] = ColourSet();
  }

  void run(int i, long double partial) {
    ++nodes;
    if (i == r) {
      on_leaf(partial);
      return;
    }
    for (std::uint32_t bits : choices(i)) {
      apply(i, bits, partial);
      long double bound = partial + upper(i + 1);
      long double limit = threshold();
      bool keep = strict ? bound > limit + 1e-12L : bound >= limit - kExtTol;
      if (keep) run(i + 1, partial);
      undo(i, bits, partial);
    }
  }
};

bool is_clone_attachment(const ColourPattern& p, const Attachment& a, int j) {
  if (a.profile[j].size() > 1) return false;
  for (int i = 0; i < p.r(); ++i)
    if (i != j && a.profile[i] != p.at(i, j)) return false;
  return true;
}

}  // namespace

AttachmentScan scan_optimal_attachments(const FeasibleTriple& triple, const ColourSeq& k, const QBreakdown& Q,
                                        const AttachmentOptions& options) {
  require_basic_optimal(triple, k, Q);
  const auto& p = triple.pattern;
  const auto& w = triple.weighting;
  const bool exact = w.is_exact() && Q.exact;
  const LogForm target = exact ? Q.form() : LogForm();
  const long double q = Q.value;

  AttachDfs root(p, k, w);
  std::vector<std::uint32_t> first = root.choices(0);
  std::vector<std::vector<Attachment>> found(first.size());
  std::vector<std::uint64_t> nodes(first.size(), 0);
  parallel_for(first.size(), [&](std::size_t idx) {
    AttachDfs dfs(p, k, w);
    dfs.tight = options.tight_bound;
    dfs.threshold = [q] { return q; };
    dfs.on_leaf = [&](long double value) {
      if (std::fabs(value - q) > kExtTol) return;
      Attachment a{dfs.profile};
      if (exact && ext_form(w, a) != target) return;
      found[idx].push_back(std::move(a));
    };
    long double partial = 0;
    dfs.apply(0, first[idx], partial);
    if (partial + dfs.upper(1) >= q - kExtTol) dfs.run(1, partial);
    nodes[idx] = dfs.nodes;
  });
  AttachmentScan scan;
  for (std::size_t idx = 0; idx < first.size(); ++idx) {
    scan.nodes += nodes[idx];
    for (auto& a : found[idx]) scan.attachments.push_back(std::move(a));
  }
  std::sort(scan.attachments.begin(), scan.attachments.end());
  return scan;
}

std::vector<Attachment> enumerate_optimal_attachments(const FeasibleTriple& triple, const ColourSeq& k,
                                                      const QBreakdown& Q) {
  return scan_optimal_attachments(triple, k, Q).attachments;
}

std::optional<long double> best_nonclone_ext(const FeasibleTriple& triple, const ColourSeq& k) {
  const auto& p = triple.pattern;
  AttachDfs dfs(p, k, triple.weighting);
  std::optional<long double> best;
  dfs.strict = true;
  dfs.threshold = [&] { return best ? *best : -1.0L; };
  dfs.on_leaf = [&](long double value) {
    if (best && value <= *best) return;
    Attachment a{dfs.profile};
    for (int j = 0; j < p.r(); ++j)
      if (is_clone_attachment(p, a, j)) return;
    best = value;
  };
  dfs.run(0, 0);
  return best;
}

ExtensionVerdict check_extension_property(const std::vector<FeasibleTriple>& opt_set, const ColourSeq& k,
                                          const ExtensionOptions& options) {
  if (opt_set.empty()) throw Error(Errc::EmptyOptSet, "optimum set is empty");
  ExtensionVerdict verdict;
  verdict.Q = q_value(opt_set.front());
  verdict.opt_set_exhaustive = options.opt_set_exhaustive;
  verdict.provenance = options.provenance;
  for (std::size_t m = 0; m < opt_set.size(); ++m) {
    const auto& member = opt_set[m];
    auto scan = scan_optimal_attachments(member, k, verdict.Q, options.attachment);
    MemberVerdict mv;
    mv.member = static_cast<int>(m);
    mv.attachments = scan.attachments.size();
    mv.nodes = scan.nodes;
    for (const auto& a : scan.attachments) {
      auto extended = member.pattern.extended(a.profile);
      const int fresh = member.r();
      int target = -1;
      CloneStatus status = CloneStatus::NotClone;
      for (int j = 0; j < member.r(); ++j) {
        CloneStatus st = clone_status(extended, fresh, j);
        if (st == CloneStatus::StrongClone) {
          target = j;
          status = st;
          break;
        }
        if (st == CloneStatus::Clone && target < 0) {
          target = j;
          status = st;
        }
      }
      if (status == CloneStatus::NotClone) {
        mv.holds = false;
        mv.strong = false;
        verdict.witnesses.emplace_back(static_cast<int>(m), a);
      } else {
        if (status == CloneStatus::Clone) mv.strong = false;
        verdict.clone_targets.push_back({static_cast<int>(m), a, target, status});
      }
    }
    if (options.measure_gap) {
      auto best = best_nonclone_ext(member, k);
      if (best) mv.nonclone_gap = verdict.Q.value - *best;
    }
    verdict.holds = verdict.holds && mv.holds;
    verdict.strong_holds = verdict.strong_holds && mv.strong;
    verdict.members.push_back(mv);
  }
  verdict.strong_holds = verdict.strong_holds && verdict.holds;
  return verdict;
}

NumcheckResult numcheck_certificate(const FeasibleTriple& triple, const ColourSeq& k) {
  const auto& p = triple.pattern;
  const int r = p.r();
  const int s = k.s();
  if (p.s() != s || triple.weighting.size() != r || r < 2) throw Error(Errc::NotApplicable, "triple shape does not match k");
  const auto& w = triple.weighting;
  for (int i = 1; i < r; ++i) {
    bool same = w.is_exact() ? w.exact_values()[i] == w.exact_values()[0] : std::fabs(w[i] - w[0]) <= 1e-12L;
    if (!same) throw Error(Errc::NotApplicable, "weights are not uniform");
  }
  for (int c = 0; c < s; ++c) {
    const int parts_wanted = k[c] - 1;
    if (r % parts_wanted != 0) {
      throw Error(Errc::NotApplicable, "k_" + std::to_string(c + 1) + " - 1 does not divide r");
    }
    std::vector<VertexMask> parts;
    bool turan = is_complete_multipartite(p.colour_graph(c), &parts) && static_cast<int>(parts.size()) == parts_wanted;
    for (VertexMask part : parts) turan = turan && popcount(part) == r / parts_wanted;
    if (!turan) throw Error(Errc::NotApplicable, "colour " + std::to_string(c + 1) + " graph is not the Turán graph");
  }
  int lo = s, hi = 0;
  for (ColourSet v : p.pair_values()) {
    lo = std::min(lo, v.size());
    hi = std::max(hi, v.size());
  }
  if (hi - lo > 1) throw Error(Errc::NotApplicable, "pair multiplicities differ by more than one");

  NumcheckResult res;
  for (int i = 0; i < r; ++i) {
    BigInt prod = 1;
    for (int j = 0; j < r; ++j)
      if (j != i) prod *= p.at(i, j).size();
    if (i == 0) res.target = prod;
    else if (prod != res.target) throw Error(Errc::NotApplicable, "vertex products differ");
  }

  std::vector<int> t;
  std::function<void(int, const BigInt&)> dfs = [&](int low, const BigInt& rest) {
    if (static_cast<int>(t.size()) == r) {
      if (rest == 1) res.solutions.push_back(t);
      return;
    }
    for (int v = low; v <= s; ++v) {
      if (rest % v != 0) continue;
      t.push_back(v);
      dfs(v, rest / v);
      t.pop_back();
    }
  };
  dfs(1, res.target);
  res.holds = std::all_of(res.solutions.begin(), res.solutions.end(),
                          [](const std::vector<int>& sol) { return std::count(sol.begin(), sol.end(), 1) == 1; });
  return res;
}

namespace {

bool weights_equal(const Weighting& a, const std::vector<int>& group, const Weighting& b, int j) {
  if (a.is_exact() && b.is_exact()) {
    Rational sum = 0;
    for (int v : group) sum += a.exact_values()[v];
    return sum == b.exact_values()[j];
  }
  long double sum = 0;
  for (int v : group) sum += a[v];
  return std::fabs(sum - b[j]) <= 1e-9L;
}

}  // namespace

CharDecomposition char_decompose(const FeasibleTriple& triple, const FeasibleTriple& opt_star, const ColourSeq& k) {
  CharDecomposition out;
  const auto& p = triple.pattern;
  const auto& star = opt_star.pattern;
  auto fail = [&](std::string which, std::string why) {
    out.found = false;
    out.failed = std::move(which);
    out.reason = std::move(why);
    return out;
  };
  if (p.s() != k.s() || star.s() != k.s() || !is_feasible(p, k, 0).feasible || !is_feasible(star, k, 2).feasible) {
    return fail("feasibility", "triples are not feasible for k");
  }
  QBreakdown q = q_value(triple), Q = q_value(opt_star);
  bool equal = q.exact && Q.exact ? q.form() == Q.form() : std::fabs(q.value - Q.value) <= kExtTol;
  if (!equal) return fail("q", "q = " + format_decimal(q.value) + " differs from Q = " + format_decimal(Q.value));

  // Pairs with at most one colour cannot cross parts, so the parts are the
  // connected components of those pairs among positive-weight vertices.
  std::vector<int> live = triple.weighting.support();
  std::vector<int> comp(static_cast<std::size_t>(p.r()), -1);
  std::vector<std::vector<int>> groups;
  for (int v : live) {
    if (comp[v] >= 0) continue;
    std::vector<int> stack{v}, members;
    comp[v] = static_cast<int>(groups.size());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      members.push_back(x);
      for (int y : live)
        if (comp[y] < 0 && y != x && p.at(x, y).size() <= 1) {
          comp[y] = comp[v];
          stack.push_back(y);
        }
    }
    std::sort(members.begin(), members.end());
    groups.push_back(std::move(members));
  }
  const int m = static_cast<int>(groups.size());
  if (m != star.r()) {
    return fail("partition", std::to_string(m) + " classes joined by at most one colour, optimum has " +
                                 std::to_string(star.r()) + " vertices");
  }
  ColourPattern quotient(m, p.s());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      ColourSet value = p.at(groups[a][0], groups[b][0]);
      for (int x : groups[a])
        for (int y : groups[b])
          if (p.at(x, y) != value) return fail("ii", "pairs between two classes carry different colour sets");
      quotient.set(a, b, value);
    }

  // Match classes to optimum vertices.
  std::vector<int> assign(static_cast<std::size_t>(m), -1);
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  bool pattern_match = false;
  std::function<bool(int)> match = [&](int a) {
    if (a == m) {
      pattern_match = true;
      for (int b = 0; b < m; ++b)
        if (!weights_equal(triple.weighting, groups[b], opt_star.weighting, assign[b])) return false;
      return true;
    }
    for (int j = 0; j < m; ++j) {
      if (used[j]) continue;
      bool ok = true;
      for (int b = 0; b < a && ok; ++b) ok = quotient.at(b, a) == star.at(assign[b], j);
      if (!ok) continue;
      used[j] = true;
      assign[a] = j;
      if (match(a + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  if (!match(0)) {
    return pattern_match ? fail("i", "no class matching reproduces the optimum weights")
                         : fail("ii", "class pattern is not a relabelling of the optimum");
  }
  out.parts.assign(static_cast<std::size_t>(m), {});
  for (int a = 0; a < m; ++a) out.parts[assign[a]] = groups[a];

  bool any_inside = false;
  for (const auto& part : out.parts) {
    VertexMask mask = vertices_mask(part);
    for (std::size_t x = 0; x < part.size(); ++x)
      for (std::size_t y = x + 1; y < part.size(); ++y) {
        ColourSet v = p.at(part[x], part[y]);
        if (!v.subset_of(ColourSet::of({0}))) return fail("iii", "a pair inside a part carries a colour other than 1");
        any_inside = any_inside || !v.empty();
      }
    out.clique_orders.push_back(std::max(1, max_clique(p.colour_rows(0), mask).size));
  }
  if (any_inside) {
    if (k.s() < 2 || k[0] == k[1]) return fail("iii", "colour-1 pairs inside parts need k_1 > k_2");
    int norm = std::accumulate(out.clique_orders.begin(), out.clique_orders.end(), 0);
    if (norm > k[0] - 1) {
      return fail("iii", "colour-1 clique orders inside parts sum to " + std::to_string(norm) + " > k_1 - 1 = " +
                             std::to_string(k[0] - 1));
    }
  }
  out.found = true;
  return out;
}

}  // namespace erlab
