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

TEST_CASE("composition convexity") {
  const Config cfg;
  SECTION("x^2 against id is convex") {
    const auto r = composition_convexity_test(gen("id", "(0,4)"), gen("pow(2)", "(0,4)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsLE);
  }
  SECTION("sqrt against id is concave") {
    const auto r = composition_convexity_test(gen("pow(2)", "(0,4)"), gen("id", "(0,4)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsGE);
  }
  SECTION("x^3 against id changes curvature across 0") {
    const auto r = composition_convexity_test(gen("id", "(-1,1)"), gen("pow(3)", "(-1,1)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::Refutes);
    REQUIRE(r.evidence.size() == 2);  // a concrete probe per direction
    REQUIRE(r.worst_le_violation > 10 * cfg.tol.compare);
    REQUIRE(r.worst_ge_violation > 10 * cfg.tol.compare);
  }
  SECTION("identical generators support equality") {
    const auto r = composition_convexity_test(gen("log", "(0.5,2)"), gen("log", "(0.5,2)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsEqual);
  }
}

TEST_CASE("pales ratio") {
  const Config cfg;
  SECTION("frozen ratios for (id, pow(2)) at (1,2,3)") {
    // (f(1)-f(2))/(f(1)-f(3)) = 1/2 and 3/8 for the squares.
    const Generator f = gen("id", "(0,4)");
    const Generator g = gen("pow(2)", "(0,4)");
    const double rf = (f.eval(1) - f.eval(2)) / (f.eval(1) - f.eval(3));
    const double rg = (g.eval(1) - g.eval(2)) / (g.eval(1) - g.eval(3));
    REQUIRE(rf == Approx(0.5).margin(1e-15));
    REQUIRE(rg == Approx(0.375).margin(1e-15));
    REQUIRE(rf >= rg);
    const auto r = pales_ratio_test(f, g, cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsLE);
  }
  SECTION("identical generators") {
    const auto r = pales_ratio_test(gen("exp(1)", "(0,1)"), gen("exp(1)", "(0,1)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsEqual);
  }
  SECTION("triples straddling 0 flip the inequality for x^3") {
    const auto r = pales_ratio_test(gen("id", "(-1,1)"), gen("pow(3)", "(-1,1)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::Refutes);
  }
}

TEST_CASE("derivative ratio") {
  const Config cfg;
  SECTION("r(x) = 1/(2x) is non-increasing") {
    const auto r = derivative_ratio_test(gen("id", "(0,4)"), gen("pow(2)", "(0,4)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsLE);
  }
  SECTION("exp pair: r(x) = e^{-x}/2 is non-increasing") {
    const auto r = derivative_ratio_test(gen("exp(1)", "(0,1)"), gen("exp(2)", "(0,1)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsLE);
  }
  SECTION("piecewise fixture stays applicable (first derivatives only)") {
    const auto r = derivative_ratio_test(gen(kPiecewiseFixture, "(0,2)"), gen("pow(2)", "(0,2)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsLE);
  }
  SECTION("vanishing denominator maps to NotApplicable") {
    const auto r = derivative_ratio_test(gen("id", "(-1,1)"), gen("pow(3)", "(-1,1)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::NotApplicable);
    REQUIRE_FALSE(r.note.empty());
  }
}

TEST_CASE("mikusinski index") {
  REQUIRE(mikusinski_index(gen("id", "(0,4)"), 2.0) == 0.0);
  REQUIRE(mikusinski_index(gen("exp(1.5)", "(-1,1)"), 0.3) ==
          Approx(1.5).margin(1e-12));
  // (p-1)/x for powers: pow(3) at 0.5 gives 4.
  REQUIRE(mikusinski_index(gen("pow(3)", "(0.1,2)"), 0.5) ==
          Approx(4.0).margin(1e-12));
  REQUIRE(mikusinski_index(gen("log", "(0.5,2)"), 1.0) ==
          Approx(-1.0).margin(1e-12));
  // The index is invariant under affine rescaling, including negation.
  REQUIRE(mikusinski_index(gen("affine(-3,2,pow(3))", "(0.1,2)"), 0.5) ==
          Approx(4.0).margin(1e-12));
  REQUIRE_THROWS_AS(mikusinski_index(gen(kPiecewiseFixture, "(0,2)"), 1.0),
                    NotDifferentiable);
  REQUIRE_THROWS_AS(mikusinski_index(gen("pow(3)", "(-1,1)"), 0.0),
                    ZeroDerivative);
}

TEST_CASE("mikusinski test") {
  const Config cfg;
  SECTION("0 <= 1/x on positives") {
    const auto r = mikusinski_test(gen("id", "(0,4)"), gen("pow(2)", "(0,4)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsLE);
  }
  SECTION("constant indices 2 > 1") {
    const auto r = mikusinski_test(gen("exp(2)", "(0,1)"), gen("exp(1)", "(0,1)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsGE);
  }
  SECTION("piecewise fixture is not C2") {
    const auto r = mikusinski_test(gen(kPiecewiseFixture, "(0,2)"), gen("id", "(0,2)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::NotApplicable);
  }
}

TEST_CASE("sampled means") {
  const Config cfg;
  SECTION("QM dominates AM on every probe") {
    const auto r = sampled_means_test(gen("id", "(0,4)"), gen("pow(2)", "(0,4)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsLE);
  }
  SECTION("affine pair supports equality") {
    const auto r = sampled_means_test(gen("log", "(0.5,2)"),
                                      gen("affine(2,1,log)", "(0.5,2)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsEqual);
  }
  SECTION("cubic vs arithmetic refutes with stored witnesses") {
    const auto r = sampled_means_test(gen("id", "(-1,1)"), gen("pow(3)", "(-1,1)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::Refutes);
    // The bundled counterexample: on (0.1, 0.2) the cubic mean wins...
    const WeightedSample pos = WeightedSample::parse("0.1,0.2");
    const double m3 = quasi_mean(gen("pow(3)", "(-1,1)"), pos);
    REQUIRE(m3 == Approx(std::cbrt((0.001 + 0.008) / 2)).margin(1e-12));
    REQUIRE(m3 > 0.15);
    // ...and on (-0.2, -0.1) it loses.
    const double m3n =
        quasi_mean(gen("pow(3)", "(-1,1)"), WeightedSample::parse("-0.2,-0.1"));
    REQUIRE(m3n < -0.15);
  }
}

TEST_CASE("weighted two-point") {
  const Config cfg;
  SECTION("direction matches the sampled-means family") {
    const auto r = weighted_two_point_test(gen("id", "(0,4)"), gen("pow(2)", "(0,4)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::SupportsLE);
  }
  SECTION("cubic pair refutes") {
    const auto r = weighted_two_point_test(gen("id", "(-1,1)"), gen("pow(3)", "(-1,1)"), cfg);
    REQUIRE(r.verdict == CriterionVerdict::Refutes);
  }
}

TEST_CASE("criteria are deterministic in the seed") {
  Config cfg;
  cfg.seed = 0xABCDEF;
  const Generator f = gen("exp(1)", "(0.5,2)");
  const Generator g = gen("pow(2)", "(0.5,2)");
  const auto r1 = sampled_means_test(f, g, cfg);
  const auto r2 = sampled_means_test(f, g, cfg);
  REQUIRE(r1.verdict == r2.verdict);
  REQUIRE(r1.worst_le_violation == r2.worst_le_violation);
  REQUIRE(r1.worst_ge_violation == r2.worst_ge_violation);
}
