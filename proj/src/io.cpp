#include "erlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "erlab/error.hpp"

namespace erlab {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::InvalidInput, what); }

Json vertex_list(const std::vector<int>& vs) {
  Json out = Json::array();
  for (int v : vs) out.push_back(v + 1);
  return out;
}

Json mask_list(VertexMask m) { return vertex_list(mask_vertices(m)); }

int read_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

Json d_vector_json(const std::vector<Rational>& d, int first_t) {
  Json out = Json::object();
  for (std::size_t i = 0; i < d.size(); ++i) out[std::to_string(first_t + static_cast<int>(i))] = value_json(d[i]);
  return out;
}

Json checks_json(const std::vector<CheckRecord>& checks) {
  Json out = Json::array();
  for (const auto& c : checks) out.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

}  // namespace

Json value_json(const LogForm& value) {
  return {{"exact", true}, {"symbolic", value.to_string()}, {"decimal", format_decimal(value.value())}};
}

Json value_json(const Rational& value) { return value_json(LogForm::constant(value)); }

Json value_json(long double value) { return {{"exact", false}, {"decimal", format_decimal(value)}}; }

Json value_json(const BigInt& value) { return {{"exact", true}, {"symbolic", value.str()}, {"decimal", value.str()}}; }

Json breakdown_json(const QBreakdown& q) {
  Json out = q.exact ? value_json(q.form()) : value_json(q.value);
  Json d = Json::object();
  for (int t = 1; t <= q.s; ++t) d[std::to_string(t)] = q.exact ? value_json(q.d_exact(t)) : value_json(q.d_at(t));
  out["d"] = d;
  return out;
}

Json colour_set_json(ColourSet set) { return vertex_list(set.members()); }

Json weighting_json(const Weighting& w) {
  Json out = Json::array();
  if (w.is_exact()) {
    for (const auto& v : w.exact_values()) out.push_back(format_rational(v));
  } else {
    for (long double v : w.values()) out.push_back(static_cast<double>(v));
  }
  return out;
}

Json pattern_json(const ColourPattern& p, const std::optional<ColourSeq>& k, const Weighting* weighting) {
  Json out;
  out["r"] = p.r();
  out["s"] = p.s();
  if (k) out["k"] = k->entries();
  Json pairs = Json::array();
  for (int j = 1; j < p.r(); ++j)
    for (int i = 0; i < j; ++i) {
      ColourSet c = p.at(i, j);
      if (!c.empty()) pairs.push_back(Json::array({i + 1, j + 1, colour_set_json(c)}));
    }
  out["pairs"] = pairs;
  if (weighting) out["alpha"] = weighting_json(*weighting);
  return out;
}

Json triple_json(const FeasibleTriple& t, const std::optional<ColourSeq>& k) {
  return pattern_json(t.pattern, k, &t.weighting);
}

PatternDocument parse_pattern(const Json& j) {
  if (!j.is_object()) bad("pattern document must be a JSON object");
  if (!j.contains("r") || !j.contains("s")) bad("pattern needs \"r\" and \"s\"");
  const int r = read_int(j["r"], "r");
  const int s = read_int(j["s"], "s");
  PatternDocument doc;
  doc.pattern = ColourPattern(r, s);
  if (j.contains("k")) {
    if (!j["k"].is_array()) bad("\"k\" must be an array of integers");
    std::vector<int> entries;
    for (const auto& e : j["k"]) entries.push_back(read_int(e, "k entry"));
    for (std::size_t i = 1; i < entries.size(); ++i)
      if (entries[i] > entries[i - 1]) bad("\"k\" must be non-increasing so colours keep their order");
    doc.k = ColourSeq(entries);
    if (doc.k->s() != s) bad("\"k\" has " + std::to_string(doc.k->s()) + " entries but s = " + std::to_string(s));
  }
  if (j.contains("pairs")) {
    if (!j["pairs"].is_array()) bad("\"pairs\" must be an array");
    std::vector<bool> seen(static_cast<std::size_t>(doc.pattern.pair_count()), false);
    for (const auto& e : j["pairs"]) {
      if (!e.is_array() || e.size() != 3 || !e[2].is_array()) bad("each pair must look like [i, j, [colours]]");
      int a = read_int(e[0], "pair vertex") - 1, b = read_int(e[1], "pair vertex") - 1;
      if (a < 0 || b < 0 || a >= r || b >= r) throw Error(Errc::IndexOutOfRange, "pair vertex outside [1, r]");
      if (a == b) throw Error(Errc::EqualIndices, "pair joins a vertex to itself");
      auto idx = static_cast<std::size_t>(ColourPattern::pair_index(a, b));
      if (seen[idx]) bad("pair " + std::to_string(a + 1) + "," + std::to_string(b + 1) + " listed twice");
      seen[idx] = true;
      ColourSet set;
      for (const auto& c : e[2]) {
        int colour = read_int(c, "colour") - 1;
        if (colour < 0 || colour >= s) throw Error(Errc::IndexOutOfRange, "colour outside [1, s]");
        set = set.with(colour);
      }
      doc.pattern.set(a, b, set);
    }
  }
  if (j.contains("alpha")) {
    const auto& a = j["alpha"];
    if (!a.is_array() || static_cast<int>(a.size()) != r) bad("\"alpha\" must list r weights");
    bool exact = true;
    for (const auto& v : a) {
      if (v.is_number_float()) exact = false;
      else if (!v.is_string() && !v.is_number_integer()) bad("weights must be strings \"p/q\" or numbers");
    }
    if (exact) {
      std::vector<Rational> vals;
      for (const auto& v : a) vals.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long long>()));
      doc.weighting = Weighting::exact(vals);
    } else {
      std::vector<long double> vals;
      for (const auto& v : a)
        vals.push_back(v.is_string() ? to_long_double(parse_rational(v.get<std::string>())) : v.get<long double>());
      doc.weighting = Weighting::numeric(vals);
    }
  }
  return doc;
}

FeasibleTriple parse_triple(const Json& j) {
  auto doc = parse_pattern(j);
  Weighting w = doc.weighting ? *doc.weighting : Weighting::uniform(doc.pattern.r());
  return FeasibleTriple{doc.pattern, w, 0};
}

std::vector<FeasibleTriple> parse_triples(const Json& j) {
  const Json* list = &j;
  if (j.is_object() && j.contains("results") && j["results"].contains("optima")) list = &j["results"]["optima"];
  else if (j.is_object() && j.contains("optima")) list = &j["optima"];
  std::vector<FeasibleTriple> out;
  if (list->is_array()) {
    for (const auto& e : *list) out.push_back(parse_triple(e));
  } else {
    out.push_back(parse_triple(*list));
  }
  return out;
}

Json graph_json(const SimpleGraph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back(Json::array({u + 1, v + 1}));
  return {{"n", g.n()}, {"edges", edges}};
}

SimpleGraph parse_graph(const Json& j) {
  if (!j.is_object() || !j.contains("n")) bad("graph document needs \"n\"");
  const int n = read_int(j["n"], "n");
  if (n < 0 || n > kMaxGraphVertices) bad("graph order must lie in [0, 64]");
  SimpleGraph g(n);
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) bad("\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) bad("each edge must look like [i, j]");
      int u = read_int(e[0], "edge vertex") - 1, v = read_int(e[1], "edge vertex") - 1;
      if (u < 0 || v < 0 || u >= n || v >= n) throw Error(Errc::IndexOutOfRange, "edge vertex outside [1, n]");
      if (u == v) throw Error(Errc::EqualIndices, "loops are not allowed");
      g.add_edge(u, v);
    }
  }
  return g;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

Json attachment_json(const Attachment& a) {
  Json out = Json::array();
  for (ColourSet c : a.profile) out.push_back(colour_set_json(c));
  return out;
}

Json search_json(const SearchResult& res) {
  Json rows = Json::array();
  for (const auto& row : res.rows) {
    rows.push_back({{"r", row.r},
                    {"exhaustive", row.exhaustive},
                    {"nodes", row.nodes},
                    {"patterns", row.patterns},
                    {"best", row.best ? value_json(*row.best) : Json(nullptr)}});
  }
  Json optima = Json::array();
  for (const auto& t : res.optima) optima.push_back(triple_json(t, res.k));
  return {{"k", res.k.entries()},
          {"r_max", res.r_max},
          {"exhaustive", res.exhaustive()},
          {"Q2", breakdown_json(res.best_value)},
          {"rows", rows},
          {"optima", optima}};
}

Json candidate_json(const CandidateCertificate& cert) {
  return {{"kind", "candidate"}, {"passed", cert.passed()}, {"value", breakdown_json(cert.value)}, {"checks", checks_json(cert.checks)}};
}

Json stationarity_json(const StationarityReport& rep) {
  Json residuals = Json::array();
  for (long double v : rep.residuals) residuals.push_back(value_json(v));
  return {{"holds", rep.holds}, {"exact", rep.exact}, {"max_residual", value_json(rep.max_residual)}, {"residuals", residuals}};
}

Json weight_optimum_json(const WeightOptimum& opt) {
  return {{"alpha", weighting_json(opt.weighting)},
          {"value", breakdown_json(opt.value)},
          {"support", vertex_list(opt.support)},
          {"stationarity_residual", value_json(opt.stationarity_residual)},
          {"cross_check_ok", opt.cross_check_ok}};
}

Json extension_json(const ExtensionVerdict& v) {
  Json members = Json::array();
  for (const auto& m : v.members) {
    members.push_back({{"member", m.member + 1},
                       {"optimal_attachments", m.attachments},
                       {"nodes", m.nodes},
                       {"holds", m.holds},
                       {"strong", m.strong},
                       {"nonclone_gap", m.nonclone_gap ? value_json(*m.nonclone_gap) : Json(nullptr)}});
  }
  Json witnesses = Json::array();
  for (const auto& [member, a] : v.witnesses) witnesses.push_back({{"member", member + 1}, {"attachment", attachment_json(a)}});
  Json clones = Json::array();
  for (const auto& c : v.clone_targets) {
    clones.push_back({{"member", c.member + 1},
                      {"attachment", attachment_json(c.attachment)},
                      {"clone_of", c.target + 1},
                      {"status", clone_status_name(c.status)}});
  }
  return {{"holds", v.holds},
          {"strong", v.strong_holds},
          {"Q", breakdown_json(v.Q)},
          {"opt_set_exhaustive", v.opt_set_exhaustive},
          {"provenance", v.provenance},
          {"members", members},
          {"witnesses", witnesses},
          {"clone_attachments", clones}};
}

Json numcheck_json(const NumcheckResult& n) {
  Json sols = Json::array();
  for (const auto& s : n.solutions) sols.push_back(vertex_list(s));
  return {{"holds", n.holds}, {"target", value_json(n.target)}, {"solutions", sols}};
}

Json decomposition_json(const CharDecomposition& d) {
  Json parts = Json::array();
  for (const auto& p : d.parts) parts.push_back(vertex_list(p));
  Json out = {{"found", d.found}, {"parts", parts}, {"clique_orders", d.clique_orders}};
  if (!d.found) {
    out["failed"] = d.failed;
    out["reason"] = d.reason;
  }
  return out;
}

Json capacity_json(const CapacityDescription& cap) {
  Json cliques = Json::array();
  for (VertexMask m : cap.maximal_cliques) cliques.push_back(mask_list(m));
  Json out = {{"kind", capacity_kind_name(cap.kind)}, {"k", cap.k}};
  if (cap.kind == CapacityKind::SumBounded) out["bound"] = cap.bound;
  out["max_vectors"] = cap.max_vectors;
  out["maximal_cliques"] = cliques;
  return out;
}

Json maximality_json(const MaximalityReport& rep) {
  Json out = {{"holds", rep.holds}, {"k_free", rep.k_free}};
  if (!rep.clique.empty()) out["clique"] = vertex_list(rep.clique);
  if (rep.non_edge) out["addable_non_edge"] = Json::array({rep.non_edge->first + 1, rep.non_edge->second + 1});
  return out;
}

Json nocap_json(const NocapReport& rep) {
  Json clauses = Json::array();
  for (const auto& c : rep.clauses) clauses.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  Json caps = Json::array();
  for (const auto& c : rep.capacities) caps.push_back(capacity_json(c));
  return {{"kind", "nocap"}, {"passed", rep.passed()}, {"clauses", clauses}, {"capacities", caps}};
}

Json constraint_json(const TkConstraint& c) {
  return {{"label", c.label()}, {"T", c.T}, {"cap", c.cap}, {"bound", value_json(c.bound())}};
}

Json lp_instance_json(const LPInstance& inst) {
  Json cons = Json::array();
  for (const auto& c : inst.constraints) cons.push_back(constraint_json(c));
  return {{"k", inst.k.entries()}, {"budget", value_json(inst.budget())}, {"constraints", cons}};
}

Json lp_solution_json(const LPSolution& sol) {
  Json optima = Json::array();
  for (const auto& v : sol.optima) optima.push_back(d_vector_json(v, 2));
  return {{"value", value_json(sol.value)},
          {"d", d_vector_json(sol.d, 2)},
          {"unique", sol.unique},
          {"active", sol.active},
          {"optima", optima},
          {"vertices", sol.vertices}};
}

Json validity_json(const ValidityReport& rep, const TkConstraint& c) {
  Json out = {{"kind", "constraint_validity"},
              {"constraint", c.label()},
              {"passed", rep.passed},
              {"exhaustive", rep.exhaustive},
              {"r_max", rep.r_max},
              {"patterns_per_r", rep.patterns_per_r},
              {"scope", "finite probe over r <= r_max, not a proof"}};
  if (rep.counterexample) {
    out["counterexample"] = pattern_json(*rep.counterexample);
    out["clique"] = vertex_list(rep.clique);
  }
  return out;
}

Json sandwich_json(const SandwichCertificate& cert, const FeasibleTriple& construction, const ColourSeq& k) {
  Json out = {{"kind", "sandwich"},
              {"verdict", verdict_name(cert.verdict)},
              {"symbolic", cert.symbolic},
              {"lower", breakdown_json(cert.lower)},
              {"upper", lp_solution_json(cert.upper)},
              {"construction", triple_json(construction, k)}};
  if (!cert.note.empty()) out["note"] = cert.note;
  return out;
}

Json trajectory_json(const Trajectory& t, const ColourSeq& k) {
  Json steps = Json::array();
  for (const auto& st : t.steps) {
    Json moved = vertex_list(st.moved);
    steps.push_back({{"pair", Json::array({st.pair.first + 1, st.pair.second + 1})},
                     {"kept", st.kept + 1},
                     {"moved", moved},
                     {"kept_attachment", value_json(st.kept_attachment)},
                     {"moved_attachment", value_json(st.moved_attachment)},
                     {"q", breakdown_json(st.q)},
                     {"pattern", pattern_json(st.pattern, k)}});
  }
  Json groups = Json::array();
  for (const auto& g : t.groups) groups.push_back(vertex_list(g));
  return {{"input", triple_json(t.input, k)},
          {"dropped", vertex_list(t.dropped)},
          {"initial_q", breakdown_json(t.initial_q)},
          {"steps", steps},
          {"final", triple_json(t.final, k)},
          {"final_q", breakdown_json(q_value(t.final))},
          {"groups", groups}};
}

Json extremal_json(const ExtremalResult& res, bool include_counts) {
  Json maxs = Json::array();
  for (const auto& g : res.maximisers) maxs.push_back(graph_name(g));
  Json out = {{"n", res.n},
              {"max", value_json(res.max_count)},
              {"maximisers", maxs},
              {"unique", res.maximisers.size() == 1 ? Json(graph_name(res.maximisers.front())) : Json(nullptr)},
              {"complete_multipartite", res.some_complete_multipartite},
              {"all_complete_multipartite", res.all_complete_multipartite}};
  if (include_counts) {
    Json records = Json::array();
    for (const auto& gc : res.counts) records.push_back({{"graph_code", to_graph6(gc.graph)}, {"count", value_json(gc.count)}});
    out["records"] = records;
  }
  return out;
}

void Report::add_error(const std::string& code, const std::string& message) {
  errors.push_back({{"code", code}, {"message", message}});
}

Json Report::to_json() const {
  Json out;
  out["schema"] = kReportSchema;
  out["command"] = command;
  out["inputs"] = inputs;
  out["results"] = results;
  out["certificates"] = certificates;
  if (!errors.empty()) out["errors"] = errors;
  if (timing) out["timing"] = *timing;
  return out;
}

namespace {

bool is_value_object(const Json& j) { return j.is_object() && j.contains("exact") && j.contains("decimal"); }

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (is_value_object(j)) {
    out << path << '\t' << (j.contains("symbolic") ? j["symbolic"].get<std::string>() : j["decimal"].get<std::string>()) << '\n';
    if (j.contains("d")) flatten(j["d"], path + ".d", out);
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) flatten(v, path.empty() ? key : path + "." + key, out);
    return;
  }
  if (j.is_array()) {
    bool scalars = true;
    for (const auto& v : j) scalars = scalars && v.is_primitive();
    if (scalars) {
      out << path << '\t';
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? "," : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      out << '\n';
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "." + std::to_string(i + 1), out);
    return;
  }
  out << path << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

}  // namespace

std::string flatten_tsv(const Json& j, const std::string& prefix) {
  std::ostringstream out;
  flatten(j, prefix, out);
  return out.str();
}

}  // namespace erlab
