#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "qam/qam.hpp"

using namespace qam;
using Catch::Approx;

namespace {

Generator gen(const char* e, const char* dom) {
  return parse_generator(e, Domain::parse(dom));
}

}  // namespace

TEST_CASE("affine equivalence") {
  const Config cfg;
  SECTION("recovers the map exactly") {
    const auto ab = affine_equivalence(gen("id", "(0,10)"),
                                       gen("affine(2,1,id)", "(0,10)"), cfg);
    REQUIRE(ab.has_value());
    REQUIRE(ab->alpha == Approx(2.0).epsilon(1e-12));
    REQUIRE(ab->beta == Approx(1.0).epsilon(1e-12));
  }
  SECTION("identity case") {
    const auto ab =
        affine_equivalence(gen("pow(2)", "(0,4)"), gen("pow(2)", "(0,4)"), cfg);
    REQUIRE(ab.has_value());
    REQUIRE(ab->alpha == Approx(1.0).epsilon(1e-12));
    REQUIRE(ab->beta == Approx(0.0).margin(1e-12));
  }
  SECTION("rejects genuinely different generators") {
    REQUIRE_FALSE(
        affine_equivalence(gen("id", "(0,4)"), gen("pow(2)", "(0,4)"), cfg));
  }
}

TEST_CASE("compare verdicts") {
  const Config cfg;
  SECTION("power means are ordered") {
    const auto v =
        compare(gen("pow(1)", "(0,10)"), gen("pow(2)", "(0,10)"), cfg);
    REQUIRE(v.relation == Relation::Less);
  }
  SECTION("negative-alpha affine pair is Equal") {
    const auto v =
        compare(gen("id", "(0,10)"), gen("affine(-3,2,id)", "(0,10)"), cfg);
    REQUIRE(v.relation == Relation::Equal);
    REQUIRE(v.affine->alpha == Approx(-3.0).epsilon(1e-12));
    REQUIRE(v.affine->beta == Approx(2.0).epsilon(1e-12));
  }
  SECTION("cubic vs arithmetic on a symmetric domain is incomparable") {
    const auto v = compare(gen("id", "(-1,1)"), gen("pow(3)", "(-1,1)"), cfg);
    REQUIRE(v.relation == Relation::Incomparable);
    REQUIRE(v.witness_le_violated.has_value());
    REQUIRE(v.witness_ge_violated.has_value());

    // Witness validity: re-evaluating from scratch reproduces strict
    // violations in opposite directions.
    const Generator f = gen("id", "(-1,1)");
    const Generator g = gen("pow(3)", "(-1,1)");
    const double d_le = quasi_mean(f, *v.witness_le_violated) -
                        quasi_mean(g, *v.witness_le_violated);
    const double d_ge = quasi_mean(f, *v.witness_ge_violated) -
                        quasi_mean(g, *v.witness_ge_violated);
    REQUIRE(d_le > 10 * cfg.tol.compare);
    REQUIRE(d_ge < -10 * cfg.tol.compare);
  }
  SECTION("compare requires a common domain") {
    REQUIRE_THROWS_AS(
        compare(gen("id", "(0,1)"), gen("pow(2)", "(0,2)"), cfg),
        DomainError);
  }
}

TEST_CASE("corpus pairs have their expected relations") {
  const Config cfg;
  for (const auto& pc : corpus_pairs()) {
    if (!pc.expected) continue;
    INFO(pc.a << " vs " << pc.b << " on " << pc.domain);
    const Domain d = Domain::parse(pc.domain);
    const auto v = compare(gen(pc.a, pc.domain), gen(pc.b, pc.domain), cfg);
    REQUIRE(v.relation == *pc.expected);
    (void)d;
  }
}

TEST_CASE("criteria consensus over the corpus grid") {
  // Every pair drawn from the bundled generator set on a common domain must
  // resolve without CriteriaConflict; this is the testable face of the
  // criteria-equivalence propositions.
  const Config cfg;
  const auto& names = corpus_generators();
  std::vector<Generator> gens;
  for (const char* n : names) gens.push_back(gen(n, "(0.5,2)"));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      INFO(names[i] << " vs " << names[j] << " on (0.5,2)");
      REQUIRE_NOTHROW(compare(gens[i], gens[j], cfg));
    }
  }
  // The symmetric-domain subset.
  const char* neg_ok[] = {"id", "pow(3)", "exp(-1)", "exp(1)", "exp(2)"};
  std::vector<Generator> gens2;
  for (const char* n : neg_ok) gens2.push_back(gen(n, "(-1,1)"));
  for (std::size_t i = 0; i < gens2.size(); ++i) {
    for (std::size_t j = i + 1; j < gens2.size(); ++j) {
      INFO(neg_ok[i] << " vs " << neg_ok[j] << " on (-1,1)");
      REQUIRE_NOTHROW(compare(gens2[i], gens2[j], cfg));
    }
  }
}

TEST_CASE("antisymmetry and direction normalization") {
  const Config cfg;
  const struct {
    const char* a;
    const char* b;
    const char* dom;
  } cases[] = {
      {"id", "pow(2)", "(0.5,2)"},
      {"log", "exp(1)", "(0.5,2)"},
      {"pow(-1)", "pow(3)", "(0.5,2)"},
      {"exp(-1)", "id", "(0.5,2)"},
  };
  for (const auto& c : cases) {
    INFO(c.a << " vs " << c.b);
    const Generator f = gen(c.a, c.dom);
    const Generator g = gen(c.b, c.dom);
    const auto fwd = compare(f, g, cfg);
    const auto bwd = compare(g, f, cfg);
    REQUIRE(fwd.relation == Relation::Less);
    REQUIRE(bwd.relation == Relation::Greater);
    // Canonicalizing the inputs must not change the relation.
    const auto canon = compare(f.canonical(), g.canonical(), cfg);
    REQUIRE(canon.relation == fwd.relation);
  }
}

TEST_CASE("verdict soundness for Less") {
  const Config cfg;
  const Generator f = gen("log", "(0.5,2)");
  const Generator g = gen("pow(2)", "(0.5,2)");
  REQUIRE(compare(f, g, cfg).relation == Relation::Less);
  Rng rng(0x51414D00ull);
  for (int t = 0; t < 1000; ++t) {
    const int n = rng.uniform_int(2, 6);
    std::vector<double> pts(static_cast<std::size_t>(n));
    for (double& p : pts) p = rng.uniform(0.51, 1.99);
    const WeightedSample s = WeightedSample::equal_weights(std::move(pts));
    REQUIRE(quasi_mean(f, s) <= quasi_mean(g, s) + cfg.tol.mean);
  }
}

TEST_CASE("witness construction") {
  const Config cfg;
  SECTION("cubic vs arithmetic around the stationary point") {
    const Generator g3 = gen("pow(3)", "(-1,1)");
    const Generator gi = gen("id", "(-1,1)");
    const WitnessPair w = find_incomparability_witness(g3, gi, 0.0, cfg);
    REQUIRE(w.le_margin >= 1e-3);
    REQUIRE(w.ge_margin >= 1e-3);
    REQUIRE(quasi_mean(g3, w.violates_le) > quasi_mean(gi, w.violates_le));
    REQUIRE(quasi_mean(g3, w.violates_ge) < quasi_mean(gi, w.violates_ge));
    // Half-weight two-point samples anchored at x0.
    REQUIRE(w.violates_le.size() == 2);
    REQUIRE(w.violates_le.weights()[0] == 0.5);
  }
  SECTION("identical generators have no witnesses") {
    const Generator f = gen("exp(1)", "(-1,1)");
    REQUIRE_THROWS_AS(find_incomparability_witness(f, f, 0.0, cfg),
                      NoWitnessFound);
  }
  SECTION("comparable pairs have no witnesses") {
    REQUIRE_THROWS_AS(
        find_incomparability_witness(gen("id", "(0,4)"), gen("pow(2)", "(0,4)"),
                                     1.0, cfg),
        NoWitnessFound);
  }
}

TEST_CASE("verdict JSON replays") {
  const Config cfg;
  const Generator f = gen("id", "(-1,1)");
  const Generator g = gen("pow(3)", "(-1,1)");
  const auto v = compare(f, g, cfg);
  const json j = to_json(v, f, g, cfg);
  REQUIRE(j["relation"] == "Incomparable");
  REQUIRE(j["seed"] == cfg.seed);
  // The serialized witness reproduces the violation when replayed.
  const auto& jw = j["witness_le_violated"];
  const WeightedSample s(jw["points"].get<std::vector<double>>(),
                         jw["weights"].get<std::vector<double>>());
  REQUIRE(quasi_mean(f, s) > quasi_mean(g, s));
  // Identical runs serialize identically.
  REQUIRE(to_json(compare(f, g, cfg), f, g, cfg).dump() == j.dump());
}
