#pragma once

#include <cstdint>
#include <vector>

#include "erlab/core.hpp"

namespace erlab {

inline constexpr int kMaxWeightDimension = 16;

struct WeightOptimum {
  Weighting weighting;          // exact when the numeric optimum snapped to a verified rational point
  QBreakdown value;
  std::vector<int> support;
  long double stationarity_residual = 0;
  long double cross_check_value = 0;  // best value seen by random sampling + gradient ascent
  bool cross_check_ok = true;
};

struct WeightOptions {
  bool cross_check = true;
  int random_points = 10000;
  std::uint64_t seed = 0x5eed;
  bool snap_exact = true;
};

/// Maximises q over the simplex for a fixed pattern; level-0 feasibility for k is required.
WeightOptimum optimize_weights(const ColourPattern& pattern, const ColourSeq& k, const WeightOptions& options = {});

/// Maximiser of a^T A a over the simplex (A symmetric, zero diagonal, row-major r x r).
struct QuadraticMax {
  std::vector<long double> alpha;
  long double value = 0;
  std::uint32_t support = 0;
};
QuadraticMax maximize_quadratic(const std::vector<long double>& a, int r);

/// A_ij = log2|φ(ij)| (0 when the set has at most one colour).
std::vector<long double> log_matrix(const ColourPattern& pattern);

struct StationarityReport {
  bool holds = true;
  long double q = 0;
  std::vector<long double> contributions;  // q_i for every vertex
  std::vector<long double> residuals;      // |q_i - q| for every vertex
  long double max_residual = 0;            // over positive-weight vertices
  bool exact = false;                      // exact weighting with every q_i equal to q symbolically
};

StationarityReport verify_stationarity(const FeasibleTriple& triple, long double tolerance);

/// Tries to replace a numeric optimum by a nearby rational point whose
/// stationarity holds exactly; nullopt if no such point is found.
std::optional<Weighting> snap_to_rational(const ColourPattern& pattern, const std::vector<long double>& alpha);

}  // namespace erlab
