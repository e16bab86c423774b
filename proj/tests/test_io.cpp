#include <doctest.h>

#include <random>

#include "erlab/error.hpp"
#include "erlab/io.hpp"
#include "test_support.hpp"

using namespace erlab;
using namespace testing_support;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InvalidInput;
}

}  // namespace

TEST_CASE("pattern documents use 1-based indices") {
  auto j = Json::parse(R"({"r": 3, "s": 2, "k": [3, 3], "pairs": [[1, 3, [2]], [1, 2, [1, 2]]], "alpha": ["1/2", "1/4", "0.25"]})");
  auto doc = parse_pattern(j);
  CHECK(doc.pattern.r() == 3);
  CHECK(doc.pattern.at(0, 2) == ColourSet::of({1}));
  CHECK(doc.pattern.at(0, 1) == ColourSet::of({0, 1}));
  CHECK(doc.pattern.at(1, 2).empty());
  REQUIRE(doc.weighting.has_value());
  CHECK(doc.weighting->is_exact());
  CHECK(doc.weighting->exact_values()[2] == Rational(1, 4));
  CHECK(doc.k == ColourSeq({3, 3}));

  auto out = pattern_json(doc.pattern, doc.k, &*doc.weighting);
  CHECK(out["pairs"] == Json::parse(R"([[1, 2, [1, 2]], [1, 3, [2]]])"));
  CHECK(out["alpha"] == Json::parse(R"(["1/2", "1/4", "1/4"])"));
}

TEST_CASE("triples round-trip through JSON") {
  std::mt19937_64 rng(12);
  const std::vector<ColourSeq> seqs{ColourSeq({3, 3}), ColourSeq({4, 4, 3}), ColourSeq({3, 3, 3, 3})};
  for (int trial = 0; trial < 200; ++trial) {
    const auto& k = seqs[trial % seqs.size()];
    int r = 1 + static_cast<int>(rng() % 7);
    FeasibleTriple t{random_feasible_pattern(rng, r, k, 0.5), random_rational_weighting(rng, r), 0};
    auto text = triple_json(t, k).dump();
    auto back = parse_triple(Json::parse(text));
    CHECK(back.pattern == t.pattern);
    CHECK(back.weighting == t.weighting);
    CHECK(triple_json(back, k).dump() == text);
  }
  FeasibleTriple numeric{ColourPattern::uniform(2, 2, ColourSet::of({0, 1})), Weighting::numeric({0.3L, 0.7L}), 0};
  auto back = parse_triple(triple_json(numeric));
  CHECK_FALSE(back.weighting.is_exact());
  CHECK(back.weighting[0] == doctest::Approx(0.3));
}

TEST_CASE("missing weights default to uniform") {
  auto t = parse_triple(Json::parse(R"({"r": 2, "s": 2, "pairs": [[1, 2, [1, 2]]]})"));
  CHECK(t.weighting == Weighting::uniform(2));
}

TEST_CASE("malformed pattern documents are rejected") {
  CHECK(code_of([] { parse_pattern(Json::parse(R"({"r": 2})")); }) == Errc::InvalidInput);
  CHECK(code_of([] { parse_pattern(Json::parse(R"({"r": 2, "s": 2, "pairs": [[1, 3, [1]]]})")); }) == Errc::IndexOutOfRange);
  CHECK(code_of([] { parse_pattern(Json::parse(R"({"r": 2, "s": 2, "pairs": [[2, 2, [1]]]})")); }) == Errc::EqualIndices);
  CHECK(code_of([] { parse_pattern(Json::parse(R"({"r": 2, "s": 2, "pairs": [[1, 2, [3]]]})")); }) == Errc::IndexOutOfRange);
  CHECK(code_of([] { parse_pattern(Json::parse(R"({"r": 2, "s": 2, "pairs": [[1, 2, [1]], [2, 1, [2]]]})")); }) ==
        Errc::InvalidInput);
  CHECK(code_of([] { parse_pattern(Json::parse(R"({"r": 2, "s": 2, "alpha": ["1/2"]})")); }) == Errc::InvalidInput);
  CHECK(code_of([] { parse_pattern(Json::parse(R"({"r": 2, "s": 2, "alpha": ["1/2", "1/3"]})")); }) == Errc::InvalidInput);
  CHECK(code_of([] { parse_pattern(Json::parse(R"({"r": 2, "s": 2, "k": [3, 5]})")); }) == Errc::InvalidInput);
  CHECK(code_of([] { parse_pattern(Json::parse(R"({"r": 2, "s": 3, "k": [3, 3]})")); }) == Errc::InvalidInput);
  CHECK(code_of([] { read_json_file("/nonexistent/file.json"); }) == Errc::InvalidInput);
}

TEST_CASE("optimal sets accept several document shapes") {
  auto single = Json::parse(R"({"r": 2, "s": 2, "pairs": [[1, 2, [1, 2]]]})");
  CHECK(parse_triples(single).size() == 1);
  CHECK(parse_triples(Json::array({single, single})).size() == 2);
  CHECK(parse_triples(Json{{"optima", Json::array({single})}}).size() == 1);
  CHECK(parse_triples(Json{{"results", {{"optima", Json::array({single, single, single})}}}}).size() == 3);
}

TEST_CASE("graph documents round-trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    int n = static_cast<int>(rng() % 9);
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 2) g.add_edge(u, v);
    CHECK(parse_graph(Json::parse(graph_json(g).dump())) == g);
  }
  auto g = parse_graph(Json::parse(R"({"n": 3, "edges": [[1, 2], [2, 3]]})"));
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));
  CHECK(code_of([] { parse_graph(Json::parse(R"({"n": 2, "edges": [[1, 3]]})")); }) == Errc::IndexOutOfRange);
  CHECK(code_of([] { parse_graph(Json::parse(R"({"edges": []})")); }) == Errc::InvalidInput);
}

TEST_CASE("values carry an exact flag") {
  auto v = value_json(LogForm::constant(Rational(1, 4)) + LogForm::log2_of(3) * Rational(1, 2));
  CHECK(v["exact"] == true);
  CHECK(v["symbolic"] == "1/4 + 1/2·log2(3)");
  CHECK(v["decimal"] == "1.042481250360578");
  auto n = value_json(0.5L);
  CHECK(n["exact"] == false);
  CHECK_FALSE(n.contains("symbolic"));
  CHECK(value_json(BigInt(512))["symbolic"] == "512");
}

TEST_CASE("reports are a parse/serialise fixpoint") {
  ColourSeq k({3, 3, 3, 3});
  auto construction = *known_construction(k);
  auto cert = sandwich_certificate(k, construction, LPInstance(k, standard_constraints(k)));
  Report rep;
  rep.command = "certify";
  rep.inputs = {{"k", k.entries()}};
  rep.results = {{"verdict", verdict_name(cert.verdict)}};
  rep.certificates.push_back(sandwich_json(cert, construction, k));
  rep.certificates.push_back(extension_json(check_extension_property({construction}, k)));
  rep.certificates.push_back(trajectory_json(forward_symmetrise(construction, k), k));
  rep.add_error("Example", "an error entry");
  auto first = rep.to_json().dump(2);
  auto reparsed = Json::parse(first);
  CHECK(reparsed.dump(2) == first);
  CHECK(Json::parse(reparsed.dump()) == reparsed);
  CHECK(reparsed["schema"] == "er-lab/1");
  CHECK_FALSE(reparsed.contains("timing"));
  // the embedded construction reads back as the same triple
  auto back = parse_triple(reparsed["certificates"][0]["construction"]);
  CHECK(back.pattern == construction.pattern);
  CHECK(back.weighting == construction.weighting);
}

TEST_CASE("flattened output collapses value objects") {
  Json j = {{"q", value_json(Rational(1, 2))}, {"list", Json::array({1, 2})}, {"nested", Json::array({Json{{"a", true}}})}};
  CHECK(flatten_tsv(j) == "q\t1/2\nlist\t1,2\nnested.1.a\ttrue\n");
}
