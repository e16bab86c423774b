#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "erlab/capacity.hpp"
#include "erlab/core.hpp"
#include "erlab/extension.hpp"
#include "erlab/lp.hpp"
#include "erlab/oracle.hpp"
#include "erlab/search.hpp"
#include "erlab/symmetrise.hpp"
#include "erlab/weights.hpp"

namespace erlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "er-lab/1";

// Vertex indices and colours are 1-based in every JSON document.

/// {"exact": true, "symbolic": "...", "decimal": "..."}; numeric values omit symbolic.
Json value_json(const LogForm& value);
Json value_json(const Rational& value);
Json value_json(long double value);
Json value_json(const BigInt& value);
/// Value of q together with its d-vector.
Json breakdown_json(const QBreakdown& q);

Json colour_set_json(ColourSet set);
Json weighting_json(const Weighting& w);
Json pattern_json(const ColourPattern& p, const std::optional<ColourSeq>& k = std::nullopt,
                  const Weighting* weighting = nullptr);
Json triple_json(const FeasibleTriple& t, const std::optional<ColourSeq>& k = std::nullopt);

struct PatternDocument {
  ColourPattern pattern;
  std::optional<Weighting> weighting;
  std::optional<ColourSeq> k;
};

/// Reads the pattern format; throws InvalidInput on malformed documents.
PatternDocument parse_pattern(const Json& j);
/// Pattern with its weights (uniform when the document has none).
FeasibleTriple parse_triple(const Json& j);
/// Accepts a single pattern, an array of patterns, {"optima": [...]} or a
/// report whose results carry "optima".
std::vector<FeasibleTriple> parse_triples(const Json& j);

Json graph_json(const SimpleGraph& g);
SimpleGraph parse_graph(const Json& j);

/// Parses a file or throws InvalidInput naming it.
Json read_json_file(const std::string& path);

Json attachment_json(const Attachment& a);
Json search_json(const SearchResult& res);
Json candidate_json(const CandidateCertificate& cert);
Json stationarity_json(const StationarityReport& rep);
Json weight_optimum_json(const WeightOptimum& opt);
Json extension_json(const ExtensionVerdict& v);
Json numcheck_json(const NumcheckResult& n);
Json decomposition_json(const CharDecomposition& d);
Json capacity_json(const CapacityDescription& cap);
Json maximality_json(const MaximalityReport& rep);
Json nocap_json(const NocapReport& rep);
Json constraint_json(const TkConstraint& c);
Json lp_instance_json(const LPInstance& inst);
Json lp_solution_json(const LPSolution& sol);
Json validity_json(const ValidityReport& rep, const TkConstraint& c);
Json sandwich_json(const SandwichCertificate& cert, const FeasibleTriple& construction, const ColourSeq& k);
Json trajectory_json(const Trajectory& t, const ColourSeq& k);
Json extremal_json(const ExtremalResult& res, bool include_counts = true);

/// Top-level document shared by every CLI command.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  Json certificates = Json::array();
  Json errors = Json::array();
  std::optional<Json> timing;

  void add_error(const std::string& code, const std::string& message);
  Json to_json() const;
};

/// Lines of "path<TAB>value"; value objects collapse to their symbolic or decimal text.
std::string flatten_tsv(const Json& j, const std::string& prefix = "");

}  // namespace erlab
