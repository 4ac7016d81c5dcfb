#pragma once

// Bundled reference corpus: generator pairs with known order relations,
// window cases for the hull query, and the piecewise C¹ fixture. The `report`
// CLI subcommand serializes the whole corpus into one conformance document.

#include <optional>
#include <string>
#include <vector>

#include "qam/serialize.hpp"

namespace qam {

// x on (lo, 1], (x^2+1)/2 beyond: continuous, C¹ but not C² at the cut.
inline const char* kPiecewiseFixture = "piecewise(1; id; affine(0.5,0.5,pow(2)))";

struct CorpusPair {
  const char* a;
  const char* b;
  const char* domain;
  std::optional<Relation> expected;  // pinned where the relation is known
};

inline const std::vector<CorpusPair>& corpus_pairs() {
  static const std::vector<CorpusPair> pairs = {
      // Power family is linearly ordered in the exponent.
      {"pow(1)", "pow(2)", "(0,10)", Relation::Less},
      {"pow(-1)", "log", "(0.5,2)", Relation::Less},
      {"pow(-1)", "pow(0.5)", "(0.5,2)", Relation::Less},
      {"log", "pow(0.5)", "(0.5,2)", Relation::Less},
      {"pow(0.5)", "id", "(0.5,2)", Relation::Less},
      {"id", "pow(2)", "(0.5,2)", Relation::Less},
      {"pow(2)", "pow(3)", "(0.5,2)", Relation::Less},
      {"log", "id", "(0.5,2)", Relation::Less},
      {"pow(-1)", "id", "(0.5,2)", Relation::Less},
      // Exponential family is ordered in the rate.
      {"exp(-1)", "exp(1)", "(0.5,2)", Relation::Less},
      {"exp(1)", "exp(2)", "(0.5,2)", Relation::Less},
      {"exp(-1)", "exp(2)", "(-1,1)", Relation::Less},
      // Cross-family pairs with separated indices.
      {"id", "exp(1)", "(0.5,2)", Relation::Less},
      {"exp(-1)", "id", "(0.5,2)", Relation::Less},
      {"log", "exp(1)", "(0.5,2)", Relation::Less},
      {"pow(2)", "exp(2)", "(0.5,2)", Relation::Less},
      {"exp(1)", "pow(3)", "(0.5,2)", Relation::Less},
      {"pow(-1)", "exp(-1)", "(0.5,2)", Relation::Less},
      // The piecewise fixture sits between its flanks.
      {"id", kPiecewiseFixture, "(0,2)", Relation::Less},
      {kPiecewiseFixture, "pow(2)", "(0,2)", Relation::Less},
      {"log", kPiecewiseFixture, "(0,2)", Relation::Less},
      {kPiecewiseFixture, "exp(1)", "(0.5,2)", Relation::Less},
      {kPiecewiseFixture, "pow(3)", "(0.5,2)", Relation::Less},
      // Affine-equal pairs.
      {"id", "affine(2,1,id)", "(0,10)", Relation::Equal},
      {"pow(2)", "affine(-3,2,pow(2))", "(0.5,2)", Relation::Equal},
      {"exp(1)", "affine(2,0,exp(1))", "(0.5,2)", Relation::Equal},
      // Crossing indices: neither direction holds.
      {"id", "pow(3)", "(-1,1)", Relation::Incomparable},
      {"pow(3)", "id", "(-1,1)", Relation::Incomparable},
      {"exp(1)", "pow(2)", "(0.5,2)", Relation::Incomparable},
      {"pow(3)", "exp(2)", "(0.5,2)", Relation::Incomparable},
      {"exp(-1)", "log", "(0.5,2)", Relation::Incomparable},
      {"exp(1)", "pow(3)", "(-1,1)", Relation::Incomparable},
  };
  return pairs;
}

// Generators used for all-pairs consensus checks on a common domain.
inline const std::vector<const char*>& corpus_generators() {
  static const std::vector<const char*> gens = {
      "id",     "pow(-1)", "pow(0.5)", "pow(2)",
      "pow(3)", "log",     "exp(-1)",  "exp(1)",
      "exp(2)", kPiecewiseFixture,
  };
  return gens;
}

struct WindowCase {
  const char* gen;
  const char* domain;
  double x0;
  const char* U;
  bool expect_member;  // expected outcome of the exponential-bracket hull test
};

inline const std::vector<WindowCase>& window_suite() {
  static const std::vector<WindowCase> cases = {
      {"pow(2)", "(0.5,2)", 1.0, "[0.4,2.1]", true},
      {"exp(1)", "(0.5,2)", 1.0, "[1,1]", true},
      {"log", "(0.5,2)", 1.0, "[0,2]", false},
      {"id", "(0.5,2)", 1.0, "[-0.5,0.5]", true},
      {kPiecewiseFixture, "(0.5,2)", 1.5, "[-0.1,1.2]", true},
      {"pow(3)", "(1.1,1.9)", 1.5, "[1,2]", true},
      {"pow(-1)", "(0.5,2)", 1.0, "[0,1]", false},
      {"pow(2)", "(0.5,2)", 1.0, "[0.6,2.1]", false},
      {"exp(-1)", "(0.5,2)", 1.0, "[-2,0]", true},
      {"log", "(0.5,2)", 1.0, "[-3,-0.4]", true},
      {"pow(0.5)", "(0.5,2)", 1.0, "[-1.1,-0.2]", true},
      {"pow(3)", "(0.5,2)", 1.0, "[0.9,4.2]", true},
      {"exp(2)", "(0.5,2)", 0.7, "[1.5,2.5]", true},
      {kPiecewiseFixture, "(0.5,2)", 1.0, "[0,2]", true},
      {"id", "(0.5,2)", 1.0, "(0,1]", false},
      {"exp(-0.5)", "(-1,1)", 0.0, "[-1,0)", true},
      {"pow(3)", "(-1,1)", 0.5, "[0,5]", false},
      {"id", "(-1,1)", 0.0, "[0,0]", true},
      {"pow(2)", "(0.5,2)", 1.0, "[0.5,2]", true},
      {"log", "(0.5,2)", 1.0, "[-0.6,3]", false},
  };
  return cases;
}

// Runs the bundled corpus end to end and returns one machine-readable
// conformance document. Byte-identical for identical seeds.
inline json run_conformance(const Config& cfg) {
  json doc;
  doc["seed"] = cfg.seed;
  doc["grid_n"] = cfg.grid_n;
  doc["tolerances"] = to_json(cfg.tol);

  json pairs = json::array();
  for (const auto& pc : corpus_pairs()) {
    const Domain d = Domain::parse(pc.domain);
    const Generator f = parse_generator(pc.a, d, cfg);
    const Generator g = parse_generator(pc.b, d, cfg);
    json entry{{"a", pc.a}, {"b", pc.b}, {"domain", pc.domain}};
    if (pc.expected) entry["expected"] = to_cstring(*pc.expected);
    try {
      const ComparisonVerdict v = compare(f, g, cfg);
      entry["relation"] = to_cstring(v.relation);
      json crits;
      for (const auto& r : v.reports)
        crits[to_cstring(r.criterion)] = to_cstring(r.verdict);
      entry["criteria"] = crits;
      if (v.affine)
        entry["affine"] =
            json{{"alpha", v.affine->alpha}, {"beta", v.affine->beta}};
      if (v.witness_le_violated)
        entry["witness_le_violated"] = to_json(*v.witness_le_violated);
      if (v.witness_ge_violated)
        entry["witness_ge_violated"] = to_json(*v.witness_ge_violated);
    } catch (const CriteriaConflict& e) {
      entry["relation"] = "CriteriaConflict";
      entry["error"] = e.what();
    }
    pairs.push_back(entry);
  }
  doc["pairs"] = pairs;

  json windows = json::array();
  for (const auto& wc : window_suite()) {
    const Domain d = Domain::parse(wc.domain);
    const Generator h = parse_generator(wc.gen, d, cfg);
    const MikusinskiWindow w{wc.x0, Interval::parse(wc.U)};
    json entry{{"gen", wc.gen},
               {"domain", wc.domain},
               {"x0", wc.x0},
               {"U", wc.U},
               {"expect_member", wc.expect_member}};
    entry["window_membership"] = to_cstring(window_membership(h, w, cfg));
    entry["hull"] = to_json(hull_membership_exponential(h, w, cfg));
    windows.push_back(entry);
  }
  doc["windows"] = windows;

  // The piecewise fixture: sandwich, envelope containment, smoothness probe.
  {
    const Domain d = Domain::parse("(0,2)");
    const Generator f = parse_generator("id", d, cfg);
    const Generator h = parse_generator(kPiecewiseFixture, d, cfg);
    const Generator g = parse_generator("pow(2)", d, cfg);
    json fixture;
    fixture["sandwich"] = to_json(verify_sandwich(f, h, g, cfg));
    fixture["smoothness_probe"] = to_json(smoothness_probe(f, h, g, 1.0, cfg));
    doc["fixture"] = fixture;
  }
  return doc;
}

}  // namespace qam
