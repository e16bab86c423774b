#pragma once

#include <utility>
#include <vector>

#include "erlab/core.hpp"

namespace erlab {

struct SymmetriseStep {
  std::pair<int, int> pair;        // representatives of the two super-vertices, low multiplicity
  int kept = 0;                     // representative copied onto the other side
  std::vector<int> moved;           // vertices turned into strong clones of kept
  long double kept_attachment = 0;
  long double moved_attachment = 0;
  ColourPattern pattern;            // after the step
  QBreakdown q;
};

struct Trajectory {
  FeasibleTriple input;             // zero-weight vertices removed
  std::vector<int> dropped;         // original indices of zero-weight vertices
  QBreakdown initial_q;
  std::vector<SymmetriseStep> steps;
  FeasibleTriple final;             // level 2 after merging clones
  std::vector<std::vector<int>> groups;  // input vertices merged into each final vertex
};

/// Repeatedly takes the lexicographically smallest pair of super-vertices
/// joined by at most one colour and replaces the side with the smaller
/// attachment (ties: the side with the larger index) by strong clones of the
/// other. Throws InfeasibleInput unless the triple is level-0 feasible for k.
Trajectory forward_symmetrise(const FeasibleTriple& triple, const ColourSeq& k);

}  // namespace erlab
