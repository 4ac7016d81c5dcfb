#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qam/qam.hpp"

using namespace qam;
using Catch::Approx;

namespace {

Generator gen(const char* e, const char* dom) {
  return parse_generator(e, Domain::parse(dom));
}

WeightedSample random_sample(Rng& rng, double lo, double hi, int max_len,
                             bool random_weights) {
  const int n = rng.uniform_int(2, max_len);
  std::vector<double> pts(static_cast<std::size_t>(n));
  for (double& p : pts) p = rng.uniform(lo, hi);
  if (!random_weights) return WeightedSample::equal_weights(std::move(pts));
  std::vector<double> w(pts.size());
  double total = 0;
  for (double& wi : w) {
    wi = 0.05 + rng.next_double();
    total += wi;
  }
  for (double& wi : w) wi /= total;
  return WeightedSample(std::move(pts), std::move(w));
}

}  // namespace

TEST_CASE("weighted samples") {
  REQUIRE_THROWS_AS(WeightedSample({1.0}, {0.5}), InvalidParameter);
  REQUIRE_THROWS_AS(WeightedSample({1.0, 2.0}, {1.5, -0.5}), InvalidParameter);
  REQUIRE_THROWS_AS(WeightedSample({}, {}), InvalidParameter);
  const WeightedSample s = WeightedSample::parse("3:0.25,1:0.75");
  REQUIRE(s.points() == std::vector<double>{1.0, 3.0});  // sorted
  REQUIRE(s.weights() == std::vector<double>{0.75, 0.25});
  REQUIRE_THROWS_AS(WeightedSample::parse("1:0.5,2"), ParseError);
  REQUIRE(WeightedSample::parse("1,2,3").weights()[0] == Approx(1.0 / 3));
}

TEST_CASE("quasi_mean examples") {
  REQUIRE(quasi_mean(gen("id", "(0,10)"), WeightedSample::parse("1,3")) ==
          Approx(2.0).margin(1e-12));
  REQUIRE(quasi_mean(gen("pow(2)", "(0,10)"), WeightedSample::parse("1,7")) ==
          Approx(5.0).margin(1e-12));
  REQUIRE(quasi_mean(gen("log", "(0,10)"), WeightedSample::parse("1,4")) ==
          Approx(2.0).margin(1e-12));
  // Constant samples return the constant for any generator.
  for (const char* e : {"id", "pow(2)", "log", "exp(1)", kPiecewiseFixture}) {
    const Generator g = gen(e, "(0,2)");
    REQUIRE(quasi_mean(g, WeightedSample::parse("0.7,0.7,0.7")) == 0.7);
  }
  // n = 1 returns the single point.
  REQUIRE(quasi_mean(gen("log", "(0,10)"), WeightedSample::parse("3.25")) == 3.25);
  REQUIRE_THROWS_AS(
      quasi_mean(gen("id", "(0,1)"), WeightedSample::parse("0.5,2")),
      DomainError);
}

TEST_CASE("power_mean examples") {
  const WeightedSample s24 = WeightedSample::parse("2,4");
  REQUIRE(power_mean(1, s24) == Approx(3.0).margin(1e-14));
  REQUIRE(power_mean(0, WeightedSample::parse("1,4")) == Approx(2.0).margin(1e-14));
  // Harmonic mean 2/(1 + 1/3) = 1.5.
  REQUIRE(power_mean(-1, WeightedSample::parse("1,3")) == Approx(1.5).margin(1e-14));
  REQUIRE_THROWS_AS(power_mean(2, WeightedSample::parse("-1,2")), DomainError);

  // Large |p| does not overflow in the factored form.
  REQUIRE(std::isfinite(power_mean(600, WeightedSample::parse("0.5,800"))));
  REQUIRE(std::isfinite(power_mean(-600, WeightedSample::parse("0.5,800"))));

  SECTION("agrees with the generic quasi-mean route") {
    const Generator g2 = gen("pow(2)", "(0.1,10)");
    const Generator gm = gen("pow(0)", "(0.1,10)");
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
      const WeightedSample s = random_sample(rng, 0.2, 9.5, 5, t % 2 == 1);
      REQUIRE(power_mean(2, s) == Approx(quasi_mean(g2, s)).margin(1e-10));
      REQUIRE(power_mean(0, s) == Approx(quasi_mean(gm, s)).margin(1e-10));
    }
  }
}

TEST_CASE("exponential_mean examples") {
  REQUIRE(exponential_mean(1, WeightedSample::parse("0,0")) == 0.0);
  REQUIRE(exponential_mean(1, WeightedSample({0.0, std::log(3.0)}, {0.5, 0.5})) ==
          Approx(std::log(2.0)).margin(1e-14));
  const double expected = 0.5 * std::log((1.0 + std::exp(2.0)) / 2.0);
  REQUIRE(exponential_mean(2, WeightedSample::parse("0,1")) ==
          Approx(expected).margin(1e-14));
  REQUIRE_THROWS_AS(exponential_mean(0, WeightedSample::parse("0,1")),
                    InvalidParameter);
  REQUIRE(std::isfinite(exponential_mean(400, WeightedSample::parse("-5,900"))));

  SECTION("agrees with the generic quasi-mean route") {
    const Generator ge = gen("exp(2)", "(-1,1)");
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
      const WeightedSample s = random_sample(rng, -0.9, 0.9, 5, t % 2 == 1);
      REQUIRE(exponential_mean(2, s) == Approx(quasi_mean(ge, s)).margin(1e-10));
    }
  }
}

TEST_CASE("internality") {
  Rng rng(0x51414D00ull);
  const Generator gens[] = {gen("id", "(0.5,2)"), gen("pow(2)", "(0.5,2)"),
                            gen("pow(-1)", "(0.5,2)"), gen("log", "(0.5,2)"),
                            gen("exp(-1)", "(0.5,2)")};
  for (int t = 0; t < 200; ++t) {
    const WeightedSample s = random_sample(rng, 0.51, 1.99, 6, t % 2 == 1);
    for (const Generator& g : gens) {
      const double m = quasi_mean(g, s);
      REQUIRE(m >= s.min_point());
      REQUIRE(m <= s.max_point());
    }
  }
}

TEST_CASE("affine invariance of the mean") {
  Rng rng(3);
  const Generator base = gen("log", "(0.5,2)");
  const Generator shifted = gen("affine(-2.5,0.75,log)", "(0.5,2)");
  for (int t = 0; t < 100; ++t) {
    const WeightedSample s = random_sample(rng, 0.51, 1.99, 5, t % 2 == 1);
    REQUIRE(quasi_mean(base, s) ==
            Approx(quasi_mean(shifted, s)).margin(1e-10));
  }
}

TEST_CASE("power means are ordered in the exponent") {
  const double ps[] = {-2, -1, 0, 0.5, 1, 2, 3};
  Rng rng(0x51414D00ull);
  for (int t = 0; t < 200; ++t) {
    const WeightedSample s = random_sample(rng, 0.1, 10.0, 6, t % 2 == 1);
    for (std::size_t i = 0; i + 1 < std::size(ps); ++i)
      REQUIRE(power_mean(ps[i], s) <= power_mean(ps[i + 1], s) + 1e-10);
  }
}

TEST_CASE("exponential means are ordered in the rate") {
  const double ls[] = {-2, -1, -0.5, 0.5, 1, 2};
  Rng rng(0x51414D01ull);
  for (int t = 0; t < 200; ++t) {
    const WeightedSample s = random_sample(rng, -3.0, 3.0, 6, t % 2 == 1);
    for (std::size_t i = 0; i + 1 < std::size(ls); ++i)
      REQUIRE(exponential_mean(ls[i], s) <=
              exponential_mean(ls[i + 1], s) + 1e-10);
  }
}

TEST_CASE("permutation invariance is bit-exact") {
  const Generator g = gen("exp(1)", "(-5,5)");
  std::vector<double> pts = {0.25, -1.5, 3.0, 0.25, 2.125};
  std::vector<double> wts = {0.1, 0.2, 0.3, 0.15, 0.25};
  const double base = quasi_mean(g, WeightedSample(pts, wts));
  std::mt19937 shuffler(99);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), shuffler);
    std::vector<double> p2, w2;
    for (std::size_t k : order) {
      p2.push_back(pts[k]);
      w2.push_back(wts[k]);
    }
    REQUIRE(quasi_mean(g, WeightedSample(p2, w2)) == base);
  }
}
