#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "erlab/error.hpp"
#include "erlab/io.hpp"

namespace py = pybind11;
using namespace erlab;

namespace {

// Python objects cross the boundary as JSON documents.
Json to_json(const py::handle& obj) {
  auto dumps = py::module_::import("json").attr("dumps");
  return Json::parse(dumps(obj).cast<std::string>());
}

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ColourSeq as_sequence(const py::object& k) {
  if (py::isinstance<py::str>(k)) return parse_sequence(k.cast<std::string>());
  return ColourSeq(k.cast<std::vector<int>>());
}

FeasibleTriple as_triple(const py::object& obj) { return parse_triple(to_json(obj)); }

std::vector<TkConstraint> as_constraints(const std::vector<std::string>& texts) {
  std::vector<TkConstraint> out;
  for (const auto& t : texts) out.push_back(parse_constraint(t));
  return out;
}

QBreakdown claim_breakdown(const std::vector<std::string>& d_from_two) {
  std::vector<Rational> d{0};
  for (const auto& v : d_from_two) d.push_back(parse_rational(v));
  return QBreakdown::from_exact(d);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact optimisation and certification tools for colour patterns";

  static py::exception<Error> error_type(m, "ErLabError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      auto cls = py::reinterpret_borrow<py::object>(error_type);
      py::object exc = cls(e.what());
      exc.attr("code") = std::string(e.name());
      PyErr_SetObject(cls.ptr(), exc.ptr());
    }
  });

  m.attr("SCHEMA") = kReportSchema;

  m.def("q_value", [](const py::object& triple) { return to_python(breakdown_json(q_value(as_triple(triple)))); },
        py::arg("triple"), "q of a pattern document with its weights (uniform if absent)");

  m.def(
      "is_feasible",
      [](const py::object& pattern, const py::object& k, int level) {
        auto rep = is_feasible(parse_pattern(to_json(pattern)).pattern, as_sequence(k), level);
        py::dict out;
        out["feasible"] = rep.feasible;
        if (rep.colour) out["colour"] = *rep.colour + 1;
        if (!rep.clique.empty()) {
          std::vector<int> c;
          for (int v : rep.clique) c.push_back(v + 1);
          out["clique"] = c;
        }
        if (rep.low_pair) out["low_pair"] = py::make_tuple(rep.low_pair->first + 1, rep.low_pair->second + 1);
        return out;
      },
      py::arg("pattern"), py::arg("k"), py::arg("level") = 2);

  m.def(
      "canonical_pattern",
      [](const py::object& pattern, const py::object& k) {
        ColourSeq seq = as_sequence(k);
        return to_python(pattern_json(canonical_pattern(parse_pattern(to_json(pattern)).pattern, seq).pattern, seq));
      },
      py::arg("pattern"), py::arg("k"));

  m.def(
      "optimize_weights",
      [](const py::object& pattern, const py::object& k, bool cross_check) {
        WeightOptions opts;
        opts.cross_check = cross_check;
        return to_python(weight_optimum_json(optimize_weights(parse_pattern(to_json(pattern)).pattern, as_sequence(k), opts)));
      },
      py::arg("pattern"), py::arg("k"), py::arg("cross_check") = true);

  m.def(
      "solve_q2",
      [](const py::object& k, int r_max, std::uint64_t budget, bool prune) {
        ColourSeq seq = as_sequence(k);
        auto res = [&] {
          py::gil_scoped_release release;
          return solve_Q2(seq, r_max, SearchOptions{budget, prune});
        }();
        return to_python(search_json(res));
      },
      py::arg("k"), py::arg("r_max"), py::arg("budget") = SearchOptions{}.budget, py::arg("prune") = true);

  m.def(
      "verify_candidate",
      [](const py::object& triple, const py::object& k, const std::vector<std::string>& claim) {
        return to_python(candidate_json(verify_candidate(as_triple(triple), as_sequence(k), claim_breakdown(claim))));
      },
      py::arg("triple"), py::arg("k"), py::arg("claim"), "claim lists d_2, ..., d_s as rational strings");

  m.def(
      "check_extension",
      [](const py::object& k, const py::object& optima, bool measure_gap) {
        ColourSeq seq = as_sequence(k);
        auto set = parse_triples(to_json(optima));
        ExtensionOptions opts;
        opts.measure_gap = measure_gap;
        auto v = [&] {
          py::gil_scoped_release release;
          return check_extension_property(set, seq, opts);
        }();
        return to_python(extension_json(v));
      },
      py::arg("k"), py::arg("optima"), py::arg("measure_gap") = false);

  m.def(
      "numcheck",
      [](const py::object& triple, const py::object& k) {
        return to_python(numcheck_json(numcheck_certificate(as_triple(triple), as_sequence(k))));
      },
      py::arg("triple"), py::arg("k"));

  m.def(
      "capacity",
      [](const py::object& graph, int k) { return to_python(capacity_json(capacity(parse_graph(to_json(graph)), k))); },
      py::arg("graph"), py::arg("k"));

  m.def(
      "in_capacity",
      [](const py::object& graph, int k, const std::vector<int>& sizes) {
        return in_capacity(parse_graph(to_json(graph)), k, sizes);
      },
      py::arg("graph"), py::arg("k"), py::arg("sizes"));

  m.def(
      "validate_nocap",
      [](const py::object& triple, const py::object& k) {
        return to_python(nocap_json(validate_nocap(as_triple(triple), as_sequence(k))));
      },
      py::arg("triple"), py::arg("k"));

  m.def(
      "solve_lp",
      [](const py::object& k, const std::vector<std::string>& constraints, bool standard) {
        ColourSeq seq = as_sequence(k);
        auto extra = as_constraints(constraints);
        if (standard)
          for (const auto& c : standard_constraints(seq)) extra.push_back(c);
        return to_python(lp_solution_json(solve_L(LPInstance(seq, extra))));
      },
      py::arg("k"), py::arg("constraints") = std::vector<std::string>{}, py::arg("standard") = false);

  m.def(
      "constraint_validity_scan",
      [](const std::string& constraint, const py::object& k, int r_max) {
        auto c = parse_constraint(constraint);
        return to_python(validity_json(constraint_validity_scan(c, as_sequence(k), r_max), c));
      },
      py::arg("constraint"), py::arg("k"), py::arg("r_max"));

  m.def(
      "sandwich_certificate",
      [](const py::object& k, const py::object& construction, const std::optional<std::vector<std::string>>& constraints) {
        ColourSeq seq = as_sequence(k);
        FeasibleTriple t;
        if (construction.is_none()) {
          auto known = known_construction(seq);
          if (!known) throw Error(Errc::InvalidInput, "no built-in construction for k = " + seq.to_string());
          t = *known;
        } else {
          t = as_triple(construction);
        }
        auto extra = constraints ? as_constraints(*constraints) : standard_constraints(seq);
        return to_python(sandwich_json(sandwich_certificate(seq, t, LPInstance(seq, extra)), t, seq));
      },
      py::arg("k"), py::arg("construction") = py::none(), py::arg("constraints") = py::none(),
      "constraints default to the standard ones for k");

  m.def(
      "known_construction",
      [](const py::object& k) -> py::object {
        ColourSeq seq = as_sequence(k);
        auto t = known_construction(seq);
        if (!t) return py::none();
        return to_python(triple_json(*t, seq));
      },
      py::arg("k"));

  m.def(
      "count_colourings",
      [](const py::object& graph, const py::object& k) {
        auto count = count_valid_colourings(parse_graph(to_json(graph)), as_sequence(k));
        return py::int_(py::str(count.str()));
      },
      py::arg("graph"), py::arg("k"));

  m.def(
      "extremal_search",
      [](int n, const py::object& k, bool include_counts) {
        ColourSeq seq = as_sequence(k);
        auto res = [&] {
          py::gil_scoped_release release;
          return extremal_search(n, seq);
        }();
        return to_python(extremal_json(res, include_counts));
      },
      py::arg("n"), py::arg("k"), py::arg("include_counts") = false);

  m.def(
      "symmetrise",
      [](const py::object& triple, const py::object& k) {
        ColourSeq seq = as_sequence(k);
        return to_python(trajectory_json(forward_symmetrise(as_triple(triple), seq), seq));
      },
      py::arg("triple"), py::arg("k"));
}
