#pragma once

#include <optional>
#include <string>
#include <vector>

#include "erlab/core.hpp"
#include "erlab/numeric.hpp"

namespace erlab {

/// Σ_{t∈T} d_t ≤ 1 - 1/(cap-1).
struct TkConstraint {
  std::vector<int> T;  // sorted multiplicities in [2, s]
  int cap = 3;
  Rational bound() const { return Rational(1) - Rational(1, cap - 1); }
  /// "T=3,4:cap=3"
  std::string label() const;
};

/// Parses "T=3,4:cap=3"; throws InvalidInput.
TkConstraint parse_constraint(const std::string& text);

struct LPInstance {
  ColourSeq k;
  std::vector<TkConstraint> constraints;

  /// Validates every constraint against s; throws InvalidInput.
  explicit LPInstance(ColourSeq seq, std::vector<TkConstraint> extra = {});
  /// Σ_c (1 - 1/(k_c - 1)).
  Rational budget() const;
};

struct LPSolution {
  std::vector<Rational> d;  // d[t-2] for t = 2..s
  LogForm value;            // Σ_t d_t log2 t
  bool unique = true;
  std::vector<std::string> active;              // labels of rows tight at d
  std::vector<std::vector<Rational>> optima;    // every optimal vertex
  std::size_t vertices = 0;                     // feasible vertices examined
  Rational d_at(int t) const { return d[static_cast<std::size_t>(t - 2)]; }
};

/// Exact vertex enumeration; needs s - 1 <= 5 variables (TooLarge otherwise).
LPSolution solve_L(const LPInstance& instance);

struct ValidityReport {
  bool passed = true;
  bool exhaustive = true;
  int r_max = 0;
  std::vector<std::uint64_t> patterns_per_r;  // index r-1
  std::optional<ColourPattern> counterexample;
  std::vector<int> clique;                    // a K_cap in H_φ(T) of the counterexample
};

/// Checks H_φ(T) is K_cap-free over Φ_2(r;k) for every r <= r_max. Finite
/// evidence only. Throws InvalidInput beyond r <= 6 (s <= 3) or r <= 4 (s = 4).
ValidityReport constraint_validity_scan(const TkConstraint& constraint, const ColourSeq& k, int r_max);

/// Extra constraints used for the known families: ({2}, l) for (k, l) with
/// k > l, and ({3,4}, 3) for (3,3,3,3).
std::vector<TkConstraint> standard_constraints(const ColourSeq& k);

enum class CertificateVerdict { Exact, Gap, Conflict };
std::string_view verdict_name(CertificateVerdict v);

struct SandwichCertificate {
  CertificateVerdict verdict = CertificateVerdict::Gap;
  bool symbolic = false;  // decided by coefficient equality
  QBreakdown lower;       // q of the construction
  LPSolution upper;
  std::string note;
};

/// Lower bound from a level-2 feasible construction against the LP optimum.
/// Throws InfeasiblePattern when the construction is not level-2 feasible.
SandwichCertificate sandwich_certificate(const ColourSeq& k, const FeasibleTriple& construction,
                                         const LPInstance& instance);

}  // namespace erlab
