#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "erlab/error.hpp"
#include "erlab/parallel.hpp"

namespace erlab::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ColourSeq flag_sequence(const std::string& text, const char* flag = "--k") {
  try {
    return parse_sequence(text);
  } catch (const Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

Json load_file(const std::string& path) {
  try {
    return read_json_file(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

std::vector<int> flag_ints(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": expected comma-separated integers, got '" + text + "'");
    }
  }
  return out;
}

std::vector<TkConstraint> flag_constraints(const std::vector<std::string>& texts) {
  std::vector<TkConstraint> out;
  for (const auto& t : texts) {
    try {
      out.push_back(parse_constraint(t));
    } catch (const Error& e) {
      throw UsageError(std::string("--constraint: ") + e.what());
    }
  }
  return out;
}

// Pattern files may carry k; a --k flag must agree with it.
ColourSeq resolve_sequence(const std::string& flag, const Json& doc) {
  std::optional<ColourSeq> from_file;
  if (doc.is_object() && doc.contains("k")) from_file = parse_pattern(doc).k;
  if (!flag.empty()) {
    ColourSeq k = flag_sequence(flag);
    if (from_file && !(*from_file == k)) throw UsageError("--k disagrees with the k stored in the file");
    return k;
  }
  if (!from_file) throw UsageError("--k is required when the file does not store k");
  return *from_file;
}

int exhaustive_limit(const ColourSeq& k) { return k.s() <= 3 ? 6 : (k.s() == 4 ? 4 : 3); }

int default_rmax(const ColourSeq& k) {
  return static_cast<int>(std::min<std::uint64_t>(exhaustive_limit(k), ramsey_upper_bound(k) - 1));
}

Json numcheck_entry(const FeasibleTriple& t, const ColourSeq& k) {
  try {
    Json out = numcheck_json(numcheck_certificate(t, k));
    out["applicable"] = true;
    return out;
  } catch (const Error& e) {
    if (e.code() != Errc::NotApplicable) throw;
    return {{"applicable", false}, {"reason", e.what()}};
  }
}

struct OptSet {
  std::vector<FeasibleTriple> members;
  bool exhaustive = false;
  std::string provenance;
};

// Search within the exhaustive range where it is promised, the known construction otherwise.
OptSet default_opt_set(const ColourSeq& k) {
  OptSet out;
  if (k.s() <= 3 || k == ColourSeq({3, 3, 3, 3})) {
    const int r_max = default_rmax(k);
    auto res = solve_Q2(k, r_max);
    out.members = res.optima;
    out.exhaustive = res.exhaustive();
    out.provenance = "solve_Q2 over r <= " + std::to_string(r_max);
    return out;
  }
  auto c = known_construction(k);
  if (!c) throw Error(Errc::EmptyOptSet, "no search range or known construction for k = " + k.to_string());
  out.members = {*c};
  out.provenance = "known construction";
  return out;
}

std::vector<ColourSeq> table_sequences() {
  std::vector<ColourSeq> out;
  for (int k = 3; k <= 6; ++k) out.emplace_back(std::vector<int>{k, k});
  for (int k = 4; k <= 6; ++k)
    for (int l = 3; l < k; ++l) out.emplace_back(std::vector<int>{k, l});
  for (int k = 3; k <= 5; ++k) out.emplace_back(std::vector<int>{k, k, k});
  out.emplace_back(std::vector<int>{3, 3, 3, 3});
  out.emplace_back(std::vector<int>{4, 4, 4, 4});
  return out;
}

std::string construction_name(const ColourSeq& k) {
  if (k == ColourSeq({3, 3, 3, 3})) return "three perfect matchings of K_4";
  if (k == ColourSeq({4, 4, 4, 4})) return "affine plane of order 3";
  const int r = k[1] - 1;
  if (k.s() == 2) return "K_" + std::to_string(r) + " with every pair coloured {1,2}";
  return "K_" + std::to_string(r) + " with every pair fully coloured";
}

std::string d_text(const std::vector<Rational>& d) {
  std::string out = "(";
  for (std::size_t i = 0; i < d.size(); ++i) out += (i ? "," : "") + format_rational(d[i]);
  return out + ")";
}

}  // namespace

int run_q2(const Q2Args& a, Report& rep) {
  ColourSeq k = flag_sequence(a.k);
  if (a.rmax < 0) throw UsageError("--rmax must be positive");
  const int r_max = a.rmax ? a.rmax : default_rmax(k);
  rep.inputs = {{"k", k.entries()}, {"r_max", r_max}, {"budget", a.budget}, {"prune", !a.no_prune}};
  auto res = solve_Q2(k, r_max, SearchOptions{a.budget, !a.no_prune});
  rep.results = search_json(res);
  rep.results["exhaustive_range"] = r_max <= exhaustive_limit(k);
  bool ok = true;
  for (const auto& t : res.optima) {
    auto cert = verify_candidate(t, k, res.best_value);
    ok = ok && cert.passed();
    rep.certificates.push_back(candidate_json(cert));
  }
  return ok ? kOk : kFailed;
}

int run_verify(const VerifyArgs& a, Report& rep) {
  Json doc = load_file(a.pattern);
  ColourSeq k = resolve_sequence(a.k, doc);
  FeasibleTriple t = parse_triple(doc);
  rep.inputs = {{"pattern", triple_json(t, k)}, {"k", k.entries()}};
  QBreakdown claim;
  std::string source;
  if (!a.claim.empty()) {
    std::vector<Rational> d{0, 0};
    std::stringstream in(a.claim);
    std::string item;
    try {
      while (std::getline(in, item, ',')) d.push_back(parse_rational(item));
    } catch (const Error& e) {
      throw UsageError(std::string("--claim: ") + e.what());
    }
    if (static_cast<int>(d.size()) != k.s() + 1) throw UsageError("--claim must list d_2,...,d_s");
    d.erase(d.begin());
    claim = QBreakdown::from_exact(d);
    source = "flag";
  } else {
    auto lp = solve_L(LPInstance(k, standard_constraints(k)));
    std::vector<Rational> d{0};
    d.insert(d.end(), lp.d.begin(), lp.d.end());
    claim = QBreakdown::from_exact(d);
    source = lp.unique ? "unique LP optimum" : "LP optimum (not unique)";
  }
  rep.inputs["claim"] = breakdown_json(claim);
  rep.inputs["claim_source"] = source;
  auto cert = verify_candidate(t, k, claim);
  rep.results = {{"passed", cert.passed()},
                 {"q", breakdown_json(cert.value)},
                 {"stationarity", stationarity_json(verify_stationarity(t, 1e-8L))}};
  rep.certificates.push_back(candidate_json(cert));
  return cert.passed() ? kOk : kFailed;
}

int run_extension(const ExtensionArgs& a, Report& rep) {
  ColourSeq k = flag_sequence(a.k);
  OptSet set;
  if (!a.opt.empty()) {
    Json doc = load_file(a.opt);
    resolve_sequence(a.k, doc);
    set.members = parse_triples(doc);
    set.provenance = "file " + a.opt;
  } else {
    set = default_opt_set(k);
  }
  rep.inputs = {{"k", k.entries()}, {"opt_source", set.provenance}, {"members", set.members.size()}};
  ExtensionOptions opts;
  opts.opt_set_exhaustive = set.exhaustive;
  opts.provenance = set.provenance;
  opts.measure_gap = a.gap;
  opts.attachment.tight_bound = !a.loose;
  auto verdict = check_extension_property(set.members, k, opts);
  rep.results = extension_json(verdict);
  Json optima = Json::array();
  Json numchecks = Json::array();
  for (const auto& t : set.members) {
    optima.push_back(triple_json(t, k));
    numchecks.push_back(numcheck_entry(t, k));
    rep.certificates.push_back(nocap_json(validate_nocap(t, k)));
  }
  rep.results["optima"] = optima;
  rep.results["numcheck"] = numchecks;
  return kOk;
}

int run_capacity(const CapacityArgs& a, Report& rep) {
  if (a.k < 2) throw UsageError("--k must be at least 2");
  SimpleGraph g = parse_graph(load_file(a.graph));
  rep.inputs = {{"graph", graph_json(g)}, {"k", a.k}};
  rep.results = {{"maximality", maximality_json(is_maximally_kfree(g, a.k))}};
  auto cap = capacity(g, a.k);
  rep.results["capacity"] = capacity_json(cap);
  if (!a.contains.empty()) {
    auto sizes = flag_ints(a.contains, "--contains");
    if (static_cast<int>(sizes.size()) != g.n()) throw UsageError("--contains must list one size per vertex");
    rep.inputs["query"] = sizes;
    rep.results["contains"] = cap.contains(sizes);
  }
  return kOk;
}

int run_lp(const LpArgs& a, Report& rep) {
  ColourSeq k = flag_sequence(a.k);
  auto extra = flag_constraints(a.constraints);
  if (a.standard)
    for (const auto& c : standard_constraints(k)) extra.push_back(c);
  LPInstance inst(k, extra);
  rep.inputs = lp_instance_json(inst);
  rep.results = lp_solution_json(solve_L(inst));
  bool ok = true;
  if (a.scan > 0) {
    for (const auto& c : inst.constraints) {
      auto scan = constraint_validity_scan(c, k, a.scan);
      ok = ok && scan.passed;
      rep.certificates.push_back(validity_json(scan, c));
    }
  }
  return ok ? kOk : kFailed;
}

int run_certify(const CertifyArgs& a, Report& rep) {
  std::optional<ColourSeq> seq;
  FeasibleTriple construction;
  std::string source;
  if (!a.construction.empty()) {
    Json doc = load_file(a.construction);
    seq = resolve_sequence(a.k, doc);
    construction = parse_triple(doc);
    source = "file " + a.construction;
  } else {
    seq = flag_sequence(a.k);
  }
  const ColourSeq& k = *seq;
  if (a.construction.empty()) {
    auto known = known_construction(k);
    if (!known) throw Error(Errc::InvalidInput, "no built-in construction for k = " + k.to_string());
    construction = *known;
    source = "built-in: " + construction_name(k);
  }
  auto extra = flag_constraints(a.constraints);
  if (extra.empty() && !a.bare) extra = standard_constraints(k);
  LPInstance inst(k, extra);
  rep.inputs = {{"k", k.entries()}, {"construction_source", source}, {"lp", lp_instance_json(inst)}};
  auto cert = sandwich_certificate(k, construction, inst);
  rep.results = {{"verdict", verdict_name(cert.verdict)},
                 {"Q", cert.verdict == CertificateVerdict::Exact ? value_json(cert.upper.value) : Json(nullptr)},
                 {"lower", breakdown_json(cert.lower)},
                 {"upper", value_json(cert.upper.value)},
                 {"d", lp_solution_json(cert.upper)["d"]},
                 {"unique", cert.upper.unique}};
  rep.certificates.push_back(sandwich_json(cert, construction, k));
  bool scans_ok = true;
  if (a.scan > 0) {
    for (const auto& c : inst.constraints) {
      auto scan = constraint_validity_scan(c, k, a.scan);
      scans_ok = scans_ok && scan.passed;
      rep.certificates.push_back(validity_json(scan, c));
    }
  }
  return cert.verdict == CertificateVerdict::Exact && scans_ok ? kOk : kFailed;
}

int run_oracle_count(const OracleArgs& a, Report& rep) {
  ColourSeq k = flag_sequence(a.k);
  SimpleGraph g = parse_graph(load_file(a.graph));
  rep.inputs = {{"graph", graph_json(g)}, {"k", k.entries()}};
  auto count = count_valid_colourings(g, k);
  rep.results = {{"records", Json::array({{{"graph_code", to_graph6(g)}, {"count", value_json(count)}}})},
                 {"summary", {{"graph", graph_name(g)}, {"count", value_json(count)}}}};
  return kOk;
}

int run_oracle_extremal(const OracleArgs& a, Report& rep) {
  ColourSeq k = flag_sequence(a.k);
  if (a.n < 1) throw UsageError("--n must be positive");
  rep.inputs = {{"n", a.n}, {"k", k.entries()}};
  auto res = extremal_search(a.n, k);
  Json full = extremal_json(res, true);
  Json summary = extremal_json(res, false);
  rep.results = {{"records", full["records"]}, {"summary", summary}};
  return kOk;
}

int run_oracle_blowup(const OracleArgs& a, Report& rep) {
  Json doc = load_file(a.pattern);
  ColourSeq k = resolve_sequence(a.k, doc);
  if (a.n < 1) throw UsageError("--n must be positive");
  FeasibleTriple t = parse_triple(doc);
  auto sizes = part_sizes(t.weighting, a.n);
  SimpleGraph g = blowup_graph(t.pattern, sizes);
  rep.inputs = {{"pattern", triple_json(t, k)}, {"k", k.entries()}, {"n", a.n}};
  auto pattern_count = pattern_colouring_count(t, a.n);
  auto count = count_valid_colourings(g, k);
  bool ok = count >= pattern_count;
  rep.results = {{"part_sizes", sizes},
                 {"graph", graph_json(g)},
                 {"records", Json::array({{{"graph_code", to_graph6(g)}, {"count", value_json(count)}}})},
                 {"summary", {{"count", value_json(count)}, {"pattern_count", value_json(pattern_count)}}}};
  rep.certificates.push_back({{"kind", "blowup_lower_bound"}, {"passed", ok}});
  return ok ? kOk : kFailed;
}

int run_symmetrise(const SymmetriseArgs& a, Report& rep) {
  Json doc = load_file(a.input);
  ColourSeq k = resolve_sequence(a.k, doc);
  FeasibleTriple t = parse_triple(doc);
  rep.inputs = {{"triple", triple_json(t, k)}, {"k", k.entries()}};
  auto traj = forward_symmetrise(t, k);
  rep.results = trajectory_json(traj, k);
  bool monotone = true;
  LogForm last;
  long double last_value = traj.initial_q.value;
  const bool exact = traj.initial_q.exact;
  if (exact) last = traj.initial_q.form();
  for (const auto& st : traj.steps) {
    if (exact) {
      monotone = monotone && compare(st.q.form(), last) >= 0;
      last = st.q.form();
    } else {
      monotone = monotone && st.q.value >= last_value - 1e-12L;
      last_value = st.q.value;
    }
  }
  bool level2 = is_feasible(traj.final.pattern, k, 2).feasible;
  rep.certificates.push_back({{"kind", "symmetrisation"},
                              {"passed", monotone && level2},
                              {"monotone", monotone},
                              {"final_level_2", level2},
                              {"steps", traj.steps.size()}});
  return monotone && level2 ? kOk : kFailed;
}

int run_tables(const TablesArgs& a, Report& rep) {
  rep.inputs = {{"families", "(k,k) k<=6; (k,l) l<k<=6; (k,k,k) k<=5; (3,3,3,3); (4,4,4,4)"},
                {"search", a.search}};
  Json rows = Json::array();
  Json row_times = Json::array();
  bool ok = true;
  for (const auto& k : table_sequences()) {
    auto start = Clock::now();
    auto construction = *known_construction(k);
    auto constraints = standard_constraints(k);
    LPInstance inst(k, constraints);
    auto cert = sandwich_certificate(k, construction, inst);

    Json scans = Json::array();
    bool scans_ok = true;
    for (const auto& c : constraints) {
      auto scan = constraint_validity_scan(c, k, default_rmax(k));
      scans_ok = scans_ok && scan.passed;
      scans.push_back(validity_json(scan, c));
    }

    ExtensionOptions opts;
    opts.provenance = "known construction";
    auto ext = check_extension_property({construction}, k, opts);
    auto nocap = validate_nocap(construction, k);
    Json num = numcheck_entry(construction, k);

    Json provenance = {{"lower", "construction: " + construction_name(k)},
                       {"upper", constraints.empty() ? std::string("Problem L") : "Problem (L,I) with " + constraints.front().label()},
                       {"comparison", cert.symbolic ? "symbolic" : "numeric"}};
    if (!constraints.empty()) {
      provenance["constraint_evidence"] = std::string(scans_ok ? "passed" : "FAILED") + " validity scan over r <= " +
                                          std::to_string(default_rmax(k));
    }
    Json row = {{"k", k.to_string()},
                {"Q", value_json(cert.upper.value)},
                {"certificate", verdict_name(cert.verdict)},
                {"lp_d", d_text(cert.upper.d)},
                {"lp_unique", cert.upper.unique},
                {"r", construction.r()},
                {"construction", triple_json(construction, k)},
                {"extension", ext.holds ? (ext.strong_holds ? "strong" : "holds") : "fails"},
                {"numcheck", num["applicable"].get<bool>() ? Json(num["holds"].get<bool>()) : Json(nullptr)},
                {"nocap", nocap.passed()},
                {"provenance", provenance}};
    if (a.search) {
      const int r_max = default_rmax(k);
      auto res = solve_Q2(k, r_max);
      row["search"] = {{"r_max", r_max},
                       {"exhaustive", res.exhaustive()},
                       {"Q2", breakdown_json(res.best_value)},
                       {"optima", res.optima.size()}};
    }
    ok = ok && cert.verdict == CertificateVerdict::Exact && scans_ok && nocap.passed();
    rows.push_back(row);
    rep.certificates.push_back(sandwich_json(cert, construction, k));
    for (auto& s : scans) rep.certificates.push_back(s);
    row_times.push_back({{"k", k.to_string()}, {"seconds", seconds_since(start)}});
  }
  rep.results = {{"rows", rows}};
  rep.timing = Json{{"rows", row_times}};
  return ok ? kOk : kFailed;
}

std::string render_tsv(const Json& report) {
  std::ostringstream out;
  if (report.value("command", "") == "tables" && report["results"].contains("rows")) {
    out << "k\tQ\tdecimal\tcertificate\tlp_d\tlp_unique\tr\textension\tnumcheck\tnocap\tupper\n";
    for (const auto& row : report["results"]["rows"]) {
      const auto& q = row["Q"];
      out << row["k"].get<std::string>() << '\t' << q["symbolic"].get<std::string>() << '\t'
          << q["decimal"].get<std::string>() << '\t' << row["certificate"].get<std::string>() << '\t'
          << row["lp_d"].get<std::string>() << '\t' << (row["lp_unique"].get<bool>() ? "true" : "false") << '\t'
          << row["r"].get<int>() << '\t' << row["extension"].get<std::string>() << '\t'
          << (row["numcheck"].is_null() ? "n/a" : (row["numcheck"].get<bool>() ? "true" : "false")) << '\t'
          << (row["nocap"].get<bool>() ? "true" : "false") << '\t' << row["provenance"]["upper"].get<std::string>()
          << '\n';
    }
  } else {
    out << flatten_tsv(report["results"], "results");
    out << flatten_tsv(report["certificates"], "certificates");
  }
  if (report.contains("errors")) out << flatten_tsv(report["errors"], "errors");
  if (report.contains("timing")) out << flatten_tsv(report["timing"], "timing");
  return out.str();
}

}  // namespace erlab::cli
