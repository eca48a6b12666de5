#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "holderspec/errors.hpp"
#include "holderspec/holder_lab.hpp"

using namespace holderspec;
using doctest::Approx;

TEST_CASE("secant slope basics") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  CHECK(secant_slope(F, 0.0, 0.5, 1.0, 1).decomposition_check < 1e-12);
  const SecantSlope c = secant_slope(F, 0.0, 0.25, 1.0 / 3.0, 1);
  CHECK(c.total == Approx(0.75).epsilon(1e-12));
  const DistributionFunction L = fixture::lebesgue();
  CHECK(secant_slope(L, 0.1, 0.3, 0.9, 1).total == Approx(1.0).epsilon(1e-10));
  CHECK_THROWS(secant_slope(F, 0.5, 0.2, 0.9, 1));
  CHECK_THROWS(secant_slope(F, 0.1, 0.2, 0.9, 2));
}

TEST_CASE("secant decomposition identity on random probes") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& F : {fixture::cantor_measure(0.25), fixture::lebesgue(),
                        fixture::moebius_measure()}) {
    for (int i = 0; i < 100; ++i) {
      double a = u(rng), b = u(rng), c = u(rng);
      if (a > b) std::swap(a, b);
      if (b > c) std::swap(b, c);
      if (a > b) std::swap(a, b);
      if (!(a < b && b < c)) continue;
      CHECK(secant_slope(F, a, b, c, 1 + 2 * (i % 4)).decomposition_check < 1e-12);
    }
  }
}

TEST_CASE("slope probe along cylinders") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const SlopeProbe p = slope_probe(F, Sequence(PeriodicWord{0}), 1, 10);
  REQUIRE(p.records.size() == 10);
  for (const auto& r : p.records) {
    CHECK(r.slope_k == Approx(std::pow(0.75, static_cast<double>(r.n))).epsilon(1e-9));
  }
}

TEST_CASE("tau block search") {
  auto c = fixture::cantor();
  const Potential psi = Potential::bernoulli_probabilities({0.25, 0.75});
  const TauBlock t1 = find_tau_block(*c, psi, 1, 4);
  CHECK(t1.tau.str() == "01");
  CHECK(t1.value == Approx(std::log(27.0 / 16.0)));
  const TauBlock t3 = find_tau_block(*c, psi, 3, 4);
  CHECK(t3.tau.str() == "01");
  CHECK(t3.value == Approx(4.917693).epsilon(1e-6));
  auto h = fixture::halves();
  CHECK_THROWS_AS(find_tau_block(*h, Potential::geometric(h), 1, 6), NotFoundError);
}

TEST_CASE("perturbed cylinders") {
  auto c = fixture::cantor();
  const Interval a = perturbed_cylinder(*c, Word::parse("00"), Word::parse("01"), 1);
  const Interval b = c->cylinder_interval(Word::parse("0001"));
  CHECK(a.lo == b.lo);
  CHECK(a.hi == b.hi);
  CHECK(a.width() == Approx(std::pow(3.0, -4)));
  const Interval z = perturbed_cylinder(*c, Word::parse("00"), Word::parse("01"), 0);
  CHECK(z.width() == Approx(1.0 / 9.0));
  for (std::size_t N = 1; N < 5; ++N) {
    const double ratio = perturbed_cylinder(*c, Word::parse("0"), Word::parse("01"), N + 1).width() /
                         perturbed_cylinder(*c, Word::parse("0"), Word::parse("01"), N).width();
    CHECK(ratio == Approx(1.0 / 9.0));
  }
}

TEST_CASE("separators satisfy betweenness and the width bound") {
  auto c = fixture::cantor();
  const Word tau = Word::parse("01");
  const double rmin = c->r_min();
  for (const Sequence& omega : {Sequence(PeriodicWord{0}), Sequence(PeriodicWord{1}),
                                Sequence(PeriodicWord{1, 1, 0}), Sequence(Word{1, 0}, PeriodicWord{1})}) {
    const double x = c->coding_point(omega);
    for (std::size_t n : admissible_depths(omega, tau, 1, 8)) {
      for (std::size_t N : {2u, 3u, 5u}) {
        const Separator s = find_separator(*c, omega, n, tau, N);
        const Interval cyl = c->cylinder_interval(omega.prefix(n));
        CHECK(s.interval.width() >= cyl.width() * std::pow(rmin, tau.size() + 1) * (1 - 1e-9));
        if (s.perturbed_right) {
          CHECK(x < s.interval.lo);
          CHECK(s.interval.hi < s.perturbed.lo);
        } else {
          CHECK(s.perturbed.hi < s.interval.lo);
          CHECK(s.interval.hi < x);
        }
      }
    }
  }
}

TEST_CASE("separator cases") {
  auto c = fixture::cantor();
  const Word tau = Word::parse("01");
  const Separator s0 = find_separator(*c, Sequence(PeriodicWord{0}), 3, tau);
  CHECK(s0.case_id == 1);
  CHECK(s0.word.prefix(3).str() == "000");
  const Separator s1 = find_separator(*c, Sequence(PeriodicWord{1}), 3, tau);
  CHECK(s1.case_id == 2);
  CHECK(s1.word.str() == "111011");
  CHECK_FALSE(s1.perturbed_right);
  CHECK_THROWS_AS(find_separator(*c, Sequence(PeriodicWord{0, 1}), 2, tau), NotFoundError);
}

TEST_CASE("scaling experiment on the Cantor measure") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const Sequence omega(PeriodicWord{0});
  const Word tau = Word::parse("01");
  const auto ns = admissible_depths(omega, tau, 1, 6);
  const PerturbationExperiment e = ratio_scaling_experiment(F, omega, tau, 1, ns, 1, 6, 2);
  CHECK(e.expected_log_slope_slope == Approx(std::log(27.0 / 16.0)));
  CHECK(e.expected_log_r_slope == Approx(2.0 * std::log(3.0)));
  CHECK(std::abs(e.fitted_log_slope_slope / e.expected_log_slope_slope - 1.0) < 0.1);
  CHECK(std::abs(e.fitted_log_r_slope / e.expected_log_r_slope - 1.0) < 0.1);
  CHECK(e.max_residual_spread < 1.0);
  for (const auto& r : e.records) {
    CHECK(r.separated);
    CHECK(r.r_nN > 1.0);
  }
  const PerturbationExperiment e8 = ratio_scaling_experiment(F, omega, tau, 1, ns, 1, 6, 8);
  for (std::size_t i = 0; i < e.records.size(); ++i) {
    CHECK(e.records[i].slope_k == e8.records[i].slope_k);
  }
}

TEST_CASE("power sum bound for ratios in the unit interval") {
  for (int k : {1, 3, 5, 7}) {
    for (int i = 0; i <= 100; ++i) {
      const double r = i / 100.0;
      const double v = std::pow(r, k) + std::pow(1.0 - r, k);
      CHECK(v >= std::pow(2.0, 1 - k) - 1e-15);
      CHECK(v <= 1.0 + 1e-15);
    }
  }
}

TEST_CASE("uniform Cantor surrogate slope") {
  const DistributionFunction F = fixture::cantor_measure(0.5);
  const Sequence omega(PeriodicWord{0});
  const Word tau = Word::parse("01");
  const auto ns = admissible_depths(omega, tau, 1, 6);
  const PerturbationExperiment e = ratio_scaling_experiment(F, omega, tau, 1, ns, 1, 6);
  CHECK(e.expected_log_slope_slope == Approx(0.8109).epsilon(1e-4));
  CHECK(std::abs(e.fitted_log_slope_slope / e.expected_log_slope_slope - 1.0) < 0.1);
}

TEST_CASE("derivative limit probe classifications") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  CHECK(derivative_limit_probe(F, Sequence(PeriodicWord{0}), 1).classification ==
        LimitClass::tends_to_zero);
  CHECK(derivative_limit_probe(F, Sequence(PeriodicWord{1}), 1).classification ==
        LimitClass::tends_to_infinity);
  const DerivativeProbe l = derivative_limit_probe(fixture::lebesgue(),
                                                   Sequence(Word{1}, PeriodicWord{0}), 1);
  CHECK(l.x == 0.5);
  CHECK(l.classification == LimitClass::finite_limit);
  CHECK(l.limit == Approx(1.0).epsilon(1e-6));
  CHECK(l.degenerate);
  CHECK(l.hypothesis_violated);
  CHECK(to_string(LimitClass::oscillates) == "oscillates");
}

TEST_CASE("detrend test") {
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const HolderScales s{3.0, 2, 9, 5};
  const DetrendResult r = detrend_exponent_test(F, 0.0, 1.2618595071429148, s);
  CHECK(r.degree_max == 1);
  CHECK(r.windows.size() == 8);
  CHECK(r.pass);
  const DetrendResult skip = detrend_exponent_test(F, 1.0, 0.26, s);
  CHECK(skip.skipped);
  CHECK(skip.pass);
  const DetrendResult l = detrend_exponent_test(fixture::lebesgue(), 0.5, 1.0,
                                                {2.0, 2, 9, 5}, 1);
  CHECK_FALSE(l.pass);
  CHECK(l.hypothesis_violated);
  REQUIRE_FALSE(l.windows.empty());
  CHECK(l.windows.back().coefficients[0] == Approx(1.0).epsilon(1e-6));
}
