// Acceptance run: one PASS/FAIL line per criterion with its measured
// quantities and wall time. Exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "holderspec/cli.hpp"
#include "holderspec/estimators.hpp"
#include "holderspec/holder_lab.hpp"
#include "holderspec/spectrum.hpp"
#include "holderspec/thermodynamics.hpp"
#include "oracles.hpp"

using namespace holderspec;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

const std::vector<double> kP{0.25, 0.75};
const double kR = 1.0 / 3.0;
const double kLog2_3 = std::log(2.0) / std::log(3.0);

Potential cantor_psi() { return Potential::bernoulli_probabilities(kP); }

Outcome closed_form_beta(double& budget) {
  budget = 2.0;
  auto c = fixture::cantor();
  double worst = 0.0;
  for (int q = -5; q <= 5; ++q) {
    worst = std::max(worst, std::abs(beta_of_q(*c, cantor_psi(), q, 1) - oracle::beta(kP, kR, q)));
  }
  return {worst < 1e-9, "max |beta - closed form| = " + fmt("%.3g", worst)};
}

Outcome normalization(double& budget) {
  budget = 0.0;
  auto c = fixture::cantor();
  const double b1 = beta_of_q(*c, cantor_psi(), 1.0, 1);
  const double b0 = beta_of_q(*c, cantor_psi(), 0.0, 1);
  return {std::abs(b1) < 1e-10 && std::abs(b0 - kLog2_3) < 1e-9,
          "beta(1) = " + fmt("%.3g", b1) + ", beta(0) - log2/log3 = " + fmt("%.3g", b0 - kLog2_3)};
}

Outcome endpoint_values(double& budget) {
  budget = 0.0;
  const SpectrumEndpoints e = endpoints(*fixture::cantor(), cantor_psi(), 6);
  const double d1 = std::abs(e.alpha_minus - std::log(4.0 / 3.0) / std::log(3.0));
  const double d2 = std::abs(e.alpha_plus - std::log(4.0) / std::log(3.0));
  return {d1 < 1e-12 && d2 < 1e-12,
          "(" + fmt("%.15f", e.alpha_minus) + ", " + fmt("%.15f", e.alpha_plus) +
              "), errors " + fmt("%.2g", d1) + ", " + fmt("%.2g", d2)};
}

Outcome legendre_duality(double& budget) {
  budget = 0.0;
  SpectrumOptions o;
  o.q_min = -10.0;
  o.q_max = 10.0;
  o.q_steps = 201;
  const SpectrumCurve curve = compute_spectrum(*fixture::cantor(), cantor_psi(), o);
  const auto q = curve.q_values();
  const auto b = curve.beta_values();
  double worst = 0.0, vs_oracle = 0.0;
  for (std::size_t i = 1; i + 1 < curve.samples.size(); ++i) {
    const SpectrumSample& s = curve.samples[i];
    const double star = legendre(q, b, s.alpha).value;
    worst = std::max(worst, std::abs(star - (s.beta + s.q * s.alpha)));
    vs_oracle = std::max(vs_oracle, std::abs(star - oracle::beta_star(kP, kR, s.alpha)));
  }
  return {worst < 1e-3, "max interior gap = " + fmt("%.3g", worst) +
                            ", max |beta* - closed-form beta*| = " + fmt("%.3g", vs_oracle)};
}

// |d_k| / |d_{k-1}| bounded by a common factor below 1 and a negative
// log-linear trend.
bool geometric_decrease(const std::vector<double>& d, double& worst_ratio, double& rate) {
  worst_ratio = 0.0;
  std::vector<double> k, ld;
  for (std::size_t i = 0; i < d.size(); ++i) {
    k.push_back(static_cast<double>(i));
    ld.push_back(std::log(std::abs(d[i])));
    if (i > 0) worst_ratio = std::max(worst_ratio, std::abs(d[i] / d[i - 1]));
  }
  rate = std::exp(least_squares_slope(k, ld));
  return worst_ratio < 0.75 && rate < 0.75;
}

Outcome moebius_pressure(double& budget) {
  budget = 30.0;
  auto m = fixture::moebius();
  const Potential psi = fixture::moebius_finite_range();
  const Potential phi = Potential::geometric(m);
  std::vector<double> dpsi, dphi;
  double prev_psi = pressure_at_level(*m, psi, 2), prev_phi = pressure_at_level(*m, phi, 2);
  for (std::size_t k = 3; k <= 10; ++k) {
    const double a = pressure_at_level(*m, psi, k), b = pressure_at_level(*m, phi, k);
    dpsi.push_back(a - prev_psi);
    dphi.push_back(b - prev_phi);
    prev_psi = a;
    prev_phi = b;
  }
  double r_psi, rate_psi, r_phi, rate_phi;
  const bool g_psi = geometric_decrease(dpsi, r_psi, rate_psi);
  const bool g_phi = geometric_decrease(dphi, r_phi, rate_phi);
  const Potential normalized = normalize(psi, *m, 10);
  const double b1 = beta_of_q(*m, normalized, 1.0, 10);
  return {g_psi && g_phi && std::abs(b1) < 1e-6,
          "psi: max ratio " + fmt("%.3f", r_psi) + " trend " + fmt("%.3f", rate_psi) +
              "; phi: max ratio " + fmt("%.3f", r_phi) + " trend " + fmt("%.3f", rate_phi) +
              "; beta(1) at k=10 = " + fmt("%.3g", b1)};
}

Outcome cdf_oracles(double& budget) {
  budget = 0.0;
  const DistributionFunction U = fixture::cantor_measure(0.5);
  const double third = cdf_eval(U, 1.0 / 3.0).value;
  const DistributionFunction L = fixture::lebesgue();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    worst = std::max(worst, std::abs(cdf_eval(L, x).value - x));
  }
  std::vector<double> xs(10000);
  for (double& x : xs) x = u(rng);
  std::sort(xs.begin(), xs.end());
  bool monotone = true;
  for (const auto& F : {fixture::cantor_measure(0.25), U, L, fixture::moebius_measure()}) {
    double prev = -1.0;
    for (double x : xs) {
      const double v = cdf_eval(F, x).value;
      if (v < prev) monotone = false;
      prev = v;
    }
  }
  return {third == 0.5 && worst <= 1e-8 && monotone,
          "F(1/3) = " + fmt("%.17g", third) + ", Lebesgue max |F(x) - x| = " + fmt("%.3g", worst) +
              ", monotone on 4 measures: " + (monotone ? "yes" : "no")};
}

Outcome secant_identity(double& budget) {
  budget = 0.0;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int ks[] = {1, 3, 5, 7};
  double worst = 0.0;
  int probes = 0;
  for (const auto& F : {fixture::cantor_measure(0.25), fixture::cantor_measure(0.5),
                        fixture::lebesgue(), fixture::moebius_measure()}) {
    for (int i = 0; i < 1000;) {
      double v[3] = {u(rng), u(rng), u(rng)};
      std::sort(v, v + 3);
      if (!(v[0] < v[1] && v[1] < v[2])) continue;
      worst = std::max(worst, secant_slope(F, v[0], v[1], v[2], ks[i % 4]).decomposition_check);
      ++i;
      ++probes;
    }
  }
  return {worst < 1e-12, std::to_string(probes) + " probes, max residual " + fmt("%.3g", worst)};
}

Outcome scaling_law(double& budget) {
  budget = 10.0;
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const Sequence omega(PeriodicWord{0});
  const Word tau = Word::parse("01");
  const auto ns = admissible_depths(omega, tau, 1, 8);
  const PerturbationExperiment e = ratio_scaling_experiment(F, omega, tau, 1, ns, 1, 6, 0);
  const double slope_target = std::log(27.0 / 16.0);
  // r_nN grows like exp(-N S_2 phi(01-bar)) = 9^N.
  const double r_target = 2.0 * std::log(3.0);
  const bool s_ok = std::abs(e.fitted_log_slope_slope / slope_target - 1.0) < 0.1;
  const bool r_ok = std::abs(e.fitted_log_r_slope / r_target - 1.0) < 0.1;
  double spread_min = 1e300, spread_max = 0.0;
  for (double s : e.residual_spread) {
    spread_min = std::min(spread_min, s);
    spread_max = std::max(spread_max, s);
  }
  bool separated = true;
  for (const auto& r : e.records) separated = separated && r.separated;
  const bool bounded = spread_max < 1.0;
  return {s_ok && r_ok && bounded && separated,
          "log slope_k slope " + fmt("%.6f", e.fitted_log_slope_slope) + " (target " +
              fmt("%.6f", slope_target) + "), log r slope " + fmt("%.4f", e.fitted_log_r_slope) +
              " (target " + fmt("%.4f", r_target) + "), residual spread over n in [" +
              fmt("%.2g", spread_min) + ", " + fmt("%.2g", spread_max) + "] across N=1..6"};
}

Outcome holder_points(double& budget) {
  budget = 0.0;
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const HolderScales s3{3.0, 1, 20, 5};
  const auto& ifs = F.ifs();
  const double a0 = holder_exponent_estimate(F, ifs.coding_point(PeriodicWord{0}), s3).exponent;
  const double a1 = holder_exponent_estimate(F, ifs.coding_point(PeriodicWord{1}), s3).exponent;
  const DistributionFunction L = fixture::lebesgue();
  const HolderScales s2{2.0, 8, 30, 5};
  double worst = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double t0 = (i - 0.5) / 10.0 + 0.0123;
    worst = std::max(worst, std::abs(holder_exponent_estimate(L, t0, s2).exponent - 1.0));
  }
  const bool ok = std::abs(a0 - 1.261860) < 0.05 && std::abs(a1 - 0.261860) < 0.05 && worst < 0.02;
  return {ok, "pi(0) -> " + fmt("%.5f", a0) + ", pi(1) -> " + fmt("%.5f", a1) +
                  ", Lebesgue max |alpha - 1| = " + fmt("%.3g", worst)};
}

Outcome coarse_vs_prediction(double& budget) {
  budget = 60.0;
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const SpectrumCurve curve = compute_spectrum(F.ifs(), F.psi());
  const double delta = std::pow(3.0, -12);
  const std::vector<double> deltas{delta};
  const auto cs = coarse_spectrum(F, deltas, 0.18, curve.alpha_zero, 0);
  const auto& bins = cs.at(0).bins;
  // The bin holding alpha_0 and its two neighbours on each side.
  std::size_t centre = 0;
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (bins[i].alpha_lo <= curve.alpha_zero && curve.alpha_zero < bins[i].alpha_hi) centre = i;
  }
  if (centre < 2 || centre + 2 >= bins.size()) return {false, "fewer than 5 interior bins"};
  std::vector<double> alphas;
  for (std::size_t i = centre - 2; i <= centre + 2; ++i) alphas.push_back(bins[i].alpha_mean);
  const auto pred = hausdorff_spectrum_prediction(curve, alphas);
  double worst = 0.0;
  std::string detail;
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const auto& b = bins[centre - 2 + j];
    const double p = pred[j].dim.value_or(NAN);
    worst = std::max(worst, std::isnan(p) ? INFINITY : std::abs(b.f - p));
    detail += fmt("%.4f", b.alpha_mean) + ":" + fmt("%.4f", b.f) + "/" + fmt("%.4f", p) + " ";
  }
  const auto& c = bins[centre];
  return {worst < 0.1, "alpha_0 = " + fmt("%.4f", curve.alpha_zero) + " bin f = " + fmt("%.4f", c.f) +
                           " (predicted " + fmt("%.4f", curve.beta_star_max) + "); alpha:f/beta* " +
                           detail + "max gap " + fmt("%.3f", worst)};
}

Outcome degeneracy(double& budget) {
  budget = 0.0;
  auto c = fixture::cantor();
  auto h = fixture::halves();
  const auto u = cohomology_diagnostic(*c, Potential::bernoulli_probabilities({0.5, 0.5}), 8);
  const auto l = cohomology_diagnostic(*h, Potential::geometric(h), 8);
  const auto n = cohomology_diagnostic(*c, cantor_psi(), 8);
  const double su = u.ratio_max - u.ratio_min, sl = l.ratio_max - l.ratio_min;
  const double sn = n.ratio_max - n.ratio_min;
  return {u.degenerate && l.degenerate && !n.degenerate && su < 1e-8 && sl < 1e-8,
          "spreads: uniform " + fmt("%.2g", su) + ", Lebesgue " + fmt("%.2g", sl) + ", (1/4,3/4) " +
              fmt("%.4f", sn)};
}

Outcome detrend(double& budget) {
  budget = 0.0;
  const DistributionFunction F = fixture::cantor_measure(0.25);
  const double alpha_hat = holder_exponent_estimate(F, 0.0, {3.0, 1, 20, 5}).exponent;
  const DetrendResult r = detrend_exponent_test(F, 0.0, alpha_hat, {3.0, 2, 9, 5});
  bool monotone = r.windows.size() == 8 && r.degree_max == 1;
  for (std::size_t i = 1; i < r.windows.size(); ++i) {
    monotone = monotone && std::abs(r.windows[i].coefficients[0]) <
                               std::abs(r.windows[i - 1].coefficients[0]);
  }
  const double a_last = r.windows.empty() ? NAN : r.windows.back().coefficients[0];
  const bool residual_ok = std::abs(r.residual_exponent - alpha_hat) < 0.05;
  const DetrendResult l = detrend_exponent_test(fixture::lebesgue(), 0.5, 1.0, {2.0, 2, 9, 5}, 1);
  const double l_last = l.windows.empty() ? NAN : l.windows.back().coefficients[0];
  return {r.pass && monotone && residual_ok && !l.pass && l.hypothesis_violated,
          "Cantor: " + std::to_string(r.windows.size()) + " windows, a1 " +
              fmt("%.4g", r.windows.empty() ? NAN : r.windows.front().coefficients[0]) + " -> " +
              fmt("%.4g", a_last) + ", residual exponent " + fmt("%.4f", r.residual_exponent) +
              " vs estimate " + fmt("%.4f", alpha_hat) + "; Lebesgue: a1 -> " + fmt("%.6f", l_last) +
              ", pass " + (l.pass ? "true" : "false") + ", hypothesis violated " +
              (l.hypothesis_violated ? "true" : "false")};
}

Outcome derivative_probe(double& budget) {
  budget = 0.0;
  const DistributionFunction F = fixture::cantor_measure(0.25);
  // 20 coded points: the periodic words of length 1..4, then length 5, in
  // lexicographic order.
  std::vector<PeriodicWord> battery;
  for (std::size_t len = 1; battery.size() < 20; ++len) {
    for_each_word(2, len, [&](const Word& w) {
      if (battery.size() < 20) battery.emplace_back(w);
    });
  }
  int counts[4] = {0, 0, 0, 0};
  for (const auto& w : battery) {
    for (int k : {1, 3}) {
      ++counts[static_cast<int>(derivative_limit_probe(F, Sequence(w), k).classification)];
    }
  }
  const DerivativeProbe l = derivative_limit_probe(fixture::lebesgue(), Sequence(Word{1}, PeriodicWord{0}), 1);
  const bool ok = counts[static_cast<int>(LimitClass::finite_limit)] == 0 &&
                  l.classification == LimitClass::finite_limit && std::abs(l.limit - 1.0) < 1e-6 &&
                  l.degenerate && l.hypothesis_violated;
  return {ok, "battery of 40 probes: zero " + std::to_string(counts[0]) + ", infinity " +
                  std::to_string(counts[1]) + ", oscillates " + std::to_string(counts[2]) +
                  ", finite " + std::to_string(counts[3]) + "; Lebesgue at 1/2: " +
                  to_string(l.classification) + " " + fmt("%.9f", l.limit) + ", degenerate " +
                  (l.degenerate ? "true" : "false")};
}

Outcome determinism(double& budget) {
  budget = 0.0;
  namespace fs = std::filesystem;
  const std::string config = std::string(HOLDERSPEC_CONFIG_DIR) + "/cantor_14_34.json";
  const fs::path a = fs::temp_directory_path() / "holderspec_acceptance_t1.csv";
  const fs::path b = fs::temp_directory_path() / "holderspec_acceptance_t8.csv";
  std::ostringstream sink;
  const int ca = run({"holderspec", "spectrum", "--config", config, "--threads", "1", "--out", a.string()}, sink, sink);
  const int cb = run({"holderspec", "spectrum", "--config", config, "--threads", "8", "--out", b.string()}, sink, sink);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  const std::string ta = slurp(a), tb = slurp(b);
  fs::remove(a);
  fs::remove(b);
  return {ca == 0 && cb == 0 && !ta.empty() && ta == tb,
          std::to_string(ta.size()) + " bytes, identical: " + (ta == tb ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome(double&)> fn;
  };
  const std::vector<Criterion> criteria{
      {"closed-form beta(q)", closed_form_beta},
      {"normalization identities", normalization},
      {"spectrum endpoints", endpoint_values},
      {"Legendre duality", legendre_duality},
      {"Moebius pressure convergence", moebius_pressure},
      {"distribution function oracles", cdf_oracles},
      {"secant decomposition identity", secant_identity},
      {"perturbation scaling law", scaling_law},
      {"Holder exponents at coded points", holder_points},
      {"coarse spectrum vs prediction", coarse_vs_prediction},
      {"degeneracy detection", degeneracy},
      {"detrend test", detrend},
      {"derivative-limit probe", derivative_probe},
      {"CLI determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    double budget = 0.0;
    Outcome o;
    try {
      o = criteria[i].fn(budget);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.2f s", secs);
    if (budget > 0.0) {
      timing += fmt(" (limit %.0f s)", budget);
      if (secs >= budget) {
        o.pass = false;
        timing += " over budget";
      }
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
