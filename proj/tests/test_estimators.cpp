#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "holderspec/errors.hpp"
#include "holderspec/estimators.hpp"
#include "oracles.hpp"

using namespace holderspec;
using doctest::Approx;

TEST_CASE("uniform Cantor distribution function") {
  const DistributionFunction F = fixture::cantor_measure(0.5);
  CHECK(cdf_eval(F, 1.0 / 3.0).value == 0.5);
  CHECK(cdf_eval(F, 1.0 / 3.0).error_bound == 0.0);
  CHECK(cdf_eval(F, 1.0 / 9.0).value == Approx(0.25).epsilon(1e-8));
  CHECK(cdf_eval(F, -0.5).value == 0.0);
  CHECK(cdf_eval(F, 2.0).value == 1.0);
  CHECK(cdf_eval(F, 0.5).value == 0.5);
}

TEST_CASE("Bernoulli Cantor distribution function against the ternary oracle") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double x = u(rng);
    const CdfValue v = cdf_eval(F, x);
    CHECK(std::abs(v.value - oracle::cantor_cdf(0.25, x)) <= v.error_bound + 1e-14);
    CHECK(v.error_bound <= F.policy().mass_tol);
  }
}

TEST_CASE("Lebesgue example is the identity") {
  const DistributionFunction F = fixture::lebesgue();
  CHECK(cdf_eval(F, 0.375).value == Approx(0.375).epsilon(1e-12));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(std::abs(cdf_eval(F, x).value - x) <= 1e-8);
  }
}

TEST_CASE("cylinder masses") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  CHECK(F.is_product());
  CHECK(F.cylinder_mass(Word::parse("011")) == Approx(0.25 * 0.75 * 0.75));
  const DistributionFunction M = fixture::moebius_measure();
  CHECK_FALSE(M.is_product());
  double total = 0.0;
  for_each_word(2, 3, [&](const Word& w) { total += M.cylinder_mass(w); });
  CHECK(total == Approx(1.0).epsilon(1e-12));
  // Marginal consistency beyond the table depth.
  const Word w = Word::constant(1, M.table_depth() + 2);
  std::vector<double> kids;
  M.child_masses(w, M.cylinder_mass(w), kids);
  CHECK(kids[0] + kids[1] == Approx(M.cylinder_mass(w)).epsilon(1e-12));
}

TEST_CASE("unnormalized potentials are rejected") {
  CHECK_THROWS_AS(DistributionFunction(fixture::cantor(), Potential::bernoulli({0.0, 0.0})),
                  PreconditionError);
}

TEST_CASE("moebius distribution function is monotone and continuous across gaps") {
  const DistributionFunction M = fixture::moebius_measure();
  double prev = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double v = cdf_eval(M, i / 400.0).value;
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  const Interval a = M.ifs().cylinder_interval(Word{0});
  CHECK(cdf_eval(M, a.hi).value == Approx(M.cylinder_mass(Word{0})).epsilon(1e-12));
  CHECK(cdf_eval(M, 0.5).value == Approx(M.cylinder_mass(Word{0})).epsilon(1e-12));
}

TEST_CASE("strict evaluation reports the precision floor") {
  DepthPolicy tight;
  tight.mass_tol = 1e-300;
  const DistributionFunction F(fixture::cantor(),
                               Potential::bernoulli_probabilities({0.25, 0.75}), tight);
  // pi(01-bar) = 1/4 is never a cylinder endpoint, so the descent runs
  // into the width floor.
  CHECK_THROWS_AS(cdf_eval(F, 0.25), PrecisionError);
  const CdfValue v = cdf_eval(F, 0.25, false);
  CHECK(v.precision_limited);
}

TEST_CASE("ball masses") {
  const DistributionFunction U = fixture::cantor_measure(0.5);
  CHECK(measure_ball(U, 0.0, 1.0 / 3.0).value == Approx(0.5));
  CHECK(measure_ball(U, 0.5, 1.0 / 12.0).value == 0.0);
  const DistributionFunction L = fixture::lebesgue();
  CHECK(measure_ball(L, 0.5, 0.1).value == Approx(0.2).epsilon(1e-12));
}

TEST_CASE("Holder exponents at coded points") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const HolderScales s{3.0, 1, 20, 5};
  CHECK(holder_exponent_estimate(F, 0.0, s).exponent == Approx(1.261860).epsilon(0.04));
  CHECK(holder_exponent_estimate(F, 1.0, s).exponent == Approx(0.261860).epsilon(0.04));
  const double x = F.ifs().coding_point(PeriodicWord{0, 1});
  const HolderEstimate e = holder_exponent_estimate(F, x, s);
  CHECK(std::abs(e.exponent - 0.761856) < 0.05);
  const HolderEstimate r = holder_exponent_estimate(F, 0.0, s, HolderMethod::running_min);
  CHECK(std::abs(r.exponent - 1.261860) < 0.05);
}

TEST_CASE("Holder estimate off the support and with too few scales") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const HolderEstimate e = holder_exponent_estimate(F, 0.5, {3.0, 3, 12, 5});
  CHECK(e.outside_support);
  CHECK(std::isinf(e.exponent));
  CHECK_THROWS_AS(holder_exponent_estimate(F, 0.0, {3.0, 1, 3, 5}), DegenerateError);
}

TEST_CASE("exact exponents at coded points") {
  auto c = fixture::cantor();
  const Potential psi = Potential::bernoulli_probabilities({0.25, 0.75});
  CHECK(exact_exponent_at_coded_point(*c, psi, PeriodicWord{0}) == Approx(1.261860).epsilon(1e-6));
  CHECK(exact_exponent_at_coded_point(*c, psi, PeriodicWord{0, 1}) ==
        Approx(std::log(16.0 / 3.0) / (2.0 * std::log(3.0))).epsilon(1e-12));
  const Potential u = Potential::bernoulli_probabilities({0.5, 0.5});
  CHECK(exact_exponent_at_coded_point(*c, u, PeriodicWord{0, 1, 1}) ==
        Approx(std::log(2.0) / std::log(3.0)));
}

TEST_CASE("scale base and slope helper") {
  CHECK(default_scale_base(*fixture::cantor()) == 3.0);
  CHECK(default_scale_base(*fixture::halves()) == 2.0);
  CHECK(default_scale_base(*fixture::moebius()) == 2.0);
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  CHECK(least_squares_slope(x, y) == Approx(2.0));
}

TEST_CASE("coarse spectrum reproduces binomial box counts") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const int n = 8;
  const double delta = std::pow(3.0, -n);
  const double w = 0.1, anchor = 0.76;
  const std::vector<double> deltas{delta};
  const auto cs = coarse_spectrum(F, deltas, w, anchor, 4);
  REQUIRE(cs.size() == 1);
  CHECK(cs[0].boxes == 6561);
  CHECK(cs[0].boxes_used == 256);
  CHECK(cs[0].total_mass == Approx(1.0).epsilon(1e-12));
  const auto expected = oracle::cantor_box_counts(0.25, n, w, anchor);
  REQUIRE(cs[0].bins.size() == expected.size());
  std::size_t i = 0;
  for (const auto& [key, count] : expected) {
    CHECK(cs[0].bins[i].count == static_cast<std::size_t>(std::llround(count)));
    CHECK(cs[0].bins[i].alpha_lo == Approx(anchor + (key - 0.5) * w));
    CHECK(cs[0].bins[i].f == Approx(std::log(count) / (n * std::log(3.0))));
    ++i;
  }
}

TEST_CASE("coarse spectrum of monofractal measures") {
  const std::vector<double> d3{std::pow(3.0, -8)};
  const auto u = coarse_spectrum(fixture::cantor_measure(0.5), d3, 0.05);
  REQUIRE(u[0].bins.size() == 1);
  CHECK(u[0].bins[0].f == Approx(std::log(2.0) / std::log(3.0)).epsilon(0.05));
  const std::vector<double> d2{std::pow(2.0, -10)};
  const auto l = coarse_spectrum(fixture::lebesgue(), d2, 0.05);
  REQUIRE(l[0].bins.size() == 1);
  CHECK(l[0].bins[0].alpha_mean == Approx(1.0).epsilon(1e-9));
  CHECK(l[0].bins[0].f == Approx(1.0).epsilon(1e-9));
}
