#include "erlab/symmetrise.hpp"

#include <algorithm>

#include "erlab/error.hpp"

namespace erlab {

namespace {

// 1 if a > b, 0 if equal, -1 otherwise; exact when the weighting is.
int compare_attachments(const ColourPattern& p, const Weighting& w, int a, int b, VertexMask others) {
  if (w.is_exact()) return compare(q_contrib_form(p, w, a, others), q_contrib_form(p, w, b, others));
  long double x = q_contrib(p, w, a, others), y = q_contrib(p, w, b, others);
  return x > y ? 1 : (x < y ? -1 : 0);
}

}  // namespace

Trajectory forward_symmetrise(const FeasibleTriple& triple, const ColourSeq& k) {
  const auto& p0 = triple.pattern;
  if (p0.s() != k.s() || p0.r() != triple.weighting.size() || p0.r() < 1 || !is_feasible(p0, k, 0).feasible) {
    throw Error(Errc::InfeasibleInput, "input is not a level-0 feasible triple for k");
  }
  Trajectory traj;
  std::vector<int> live = triple.weighting.support();
  for (int i = 0; i < p0.r(); ++i)
    if (!triple.weighting.positive(i)) traj.dropped.push_back(i);
  Weighting w;
  if (triple.weighting.is_exact()) {
    std::vector<Rational> vals;
    for (int i : live) vals.push_back(triple.weighting.exact_values()[i]);
    w = Weighting::exact(vals);
  } else {
    std::vector<long double> vals;
    for (int i : live) vals.push_back(triple.weighting[i]);
    w = Weighting::numeric(vals);
  }
  ColourPattern p = p0.induced(live);
  traj.input = FeasibleTriple{p, w, 0};
  traj.initial_q = q_value(p, w);

  const int r = p.r();
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < r; ++i) groups.push_back({i});

  for (;;) {
    int ga = -1, gb = -1;
    for (int b = 1; b < static_cast<int>(groups.size()) && ga < 0; ++b)
      for (int a = 0; a < b; ++a)
        if (p.at(groups[a][0], groups[b][0]).size() <= 1) {
          ga = a;
          gb = b;
          break;
        }
    if (ga < 0) break;
    VertexMask others = low_mask(r) & ~vertices_mask(groups[ga]) & ~vertices_mask(groups[gb]);
    const int ra = groups[ga][0], rb = groups[gb][0];
    bool keep_a = compare_attachments(p, w, ra, rb, others) >= 0;
    int keep = keep_a ? ga : gb, move = keep_a ? gb : ga;
    const int rep = groups[keep][0];

    SymmetriseStep step;
    step.pair = {ra, rb};
    step.kept = rep;
    step.moved = groups[move];
    step.kept_attachment = q_contrib(p, w, rep, others);
    step.moved_attachment = q_contrib(p, w, groups[move][0], others);
    for (int v : groups[move]) {
      for (int x = 0; x < r; ++x) {
        if (x == v) continue;
        bool inside = (others >> x & 1U) == 0;
        p.set(v, x, inside ? ColourSet() : p.at(rep, x));
      }
    }
    groups[keep].insert(groups[keep].end(), groups[move].begin(), groups[move].end());
    std::sort(groups[keep].begin(), groups[keep].end());
    groups.erase(groups.begin() + move);
    std::sort(groups.begin(), groups.end());
    step.pattern = p;
    step.q = q_value(p, w);
    traj.steps.push_back(std::move(step));
  }

  auto merged = merge_clones(FeasibleTriple{p, w, 0});
  traj.final = merged.triple;
  traj.final.level = 2;
  for (int orig : merged.kept) {
    for (const auto& g : groups)
      if (std::find(g.begin(), g.end(), orig) != g.end()) {
        std::vector<int> mapped;
        for (int v : g) mapped.push_back(live[v]);
        traj.groups.push_back(mapped);
      }
  }
  return traj;
}

}  // namespace erlab
