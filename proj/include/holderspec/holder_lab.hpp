#pragma once

// Numerical counterparts of the constructions used to show that the
// distribution function has no finite positive k-th derivative on the
// support: secant slopes, the tau-block, perturbed and separating
// cylinders, the scaling experiment, the derivative-limit probe and the
// polynomial detrend test.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "holderspec/estimators.hpp"
#include "holderspec/ifs.hpp"
#include "holderspec/potential.hpp"
#include "holderspec/symbolic.hpp"

namespace holderspec {

struct SecantSlope {
  double total = 0.0;
  // Relative residual of the two-sided split of the secant slope; it is an
  // algebraic identity, so this only measures rounding.
  double decomposition_check = 0.0;
};

// (F(t) - F(s)) / (t - s)^k and its split at x. Needs s < x < t, k odd.
SecantSlope secant_slope(const DistributionFunction& F, double s, double x,
                         double t, int k);

struct SlopeRecord {
  std::size_t n = 0;
  double s_n = 0.0;
  double t_n = 0.0;
  double slope_k = 0.0;
  double r = 0.0;       // (t_n - x) / (t_n - s_n)
  double weight = 0.0;  // r^k + (1 - r)^k
};

struct SlopeProbe {
  double x = 0.0;
  Word omega_prefix;
  int k = 1;
  std::vector<SlopeRecord> records;
};

// Cylinder slopes over [s_n, t_n] = pi([omega|_n]) for n = 1..n_max,
// stopping early at the width floor.
SlopeProbe slope_probe(const DistributionFunction& F, const Sequence& omega,
                       int k, std::size_t n_max);

struct TauBlock {
  Word tau;
  double value = 0.0;  // S_l(psi - k phi)(tau-bar)
};

// Shortest word (ties: lexicographic) with at least two distinct letters
// and |S_l(psi - k phi)(tau-bar)| > 1e-6. NotFoundError up to ell_max.
TauBlock find_tau_block(const IfsSystem& ifs, const Potential& psi, int k,
                        std::size_t ell_max);

// Cylinder interval of omega_prefix tau^N.
Interval perturbed_cylinder(const IfsSystem& ifs, const Word& omega_prefix,
                            const Word& tau, std::size_t N);

struct Separator {
  Word word;
  int case_id = 0;  // 1: omega ends in tau_1^inf, 2: omega_{n+1} != tau_1
  Interval interval;
  Interval perturbed;
  bool perturbed_right = true;  // [s_nN, t_nN] lies to the right of x
};

// Depths n in [n_min, n_max] where the case analysis yields a separator:
// all n past the start of a constant tau_1 tail (case 1), otherwise the n
// with omega_{n+1} != tau_1 (case 2).
std::vector<std::size_t> admissible_depths(const Sequence& omega, const Word& tau,
                                           std::size_t n_min, std::size_t n_max);

// Separator cylinder of level at most n + l + 1 between x = pi(omega) and
// perturbed_cylinder(omega|_n, tau, N), checked geometrically (strict
// betweenness and the width bound diam(omega|_n) r_min^(l+1)).
// NotFoundError when n is not admissible or the check fails.
Separator find_separator(const IfsSystem& ifs, const Sequence& omega,
                         std::size_t n, const Word& tau, std::size_t N = 2);

struct PerturbationRecord {
  std::size_t n = 0;
  std::size_t N = 0;
  double s_nN = 0.0;
  double t_nN = 0.0;
  double r_nN = 0.0;
  double slope_k = 0.0;
  bool separated = false;
  Word separator;
  int separator_case = 0;
  double residual = 0.0;  // log slope_k deviation from the predicted scaling
};

struct PerturbationExperiment {
  Word tau;
  std::size_t ell = 0;
  int k = 1;
  std::size_t N_min = 0;
  std::size_t N_max = 0;
  std::vector<std::size_t> n_set;
  std::vector<PerturbationRecord> records;  // n-major, then N
  double expected_log_r_slope = 0.0;        // -S_l phi(tau-bar)
  double expected_log_slope_slope = 0.0;    // S_l(psi - k phi)(tau-bar)
  double fitted_log_r_slope = 0.0;          // mean of per-n fits
  double fitted_log_slope_slope = 0.0;
  // Per N: max minus min over n of the residuals.
  std::vector<double> residual_spread;
  double max_residual_spread = 0.0;
};

PerturbationExperiment ratio_scaling_experiment(
    const DistributionFunction& F, const Sequence& omega, const Word& tau, int k,
    const std::vector<std::size_t>& n_set, std::size_t N_min, std::size_t N_max,
    unsigned threads = 1);

enum class LimitClass { tends_to_zero, tends_to_infinity, oscillates, finite_limit };

std::string to_string(LimitClass c);

struct DerivativeProbe {
  double x = 0.0;
  int k = 1;
  LimitClass classification = LimitClass::oscillates;
  std::vector<std::size_t> depths;
  std::vector<double> ratios;  // (F(y) - F(x)) / (y - x)^k
  double range_lo = 0.0;       // over the tail
  double range_hi = 0.0;
  double limit = 0.0;          // set for finite_limit
  bool degenerate = false;
  // psi is cohomologous to k phi, which the no-derivative statement excludes.
  bool hypothesis_violated = false;
};

// Evaluates the difference quotient at the endpoints s_n, t_n of the
// cylinders containing x = pi(omega), n = 1..n_max, while the cdf error
// stays below 1e-6 of the difference. On the finer half: relative spread
// below 1e-6 gives finite_limit; a least-squares trend in log ratio that
// changes the ratio more than 10-fold gives tends_to_zero, or
// tends_to_infinity once ratios exceed 1e6; anything else oscillates.
DerivativeProbe derivative_limit_probe(const DistributionFunction& F,
                                       const Sequence& omega, int k,
                                       std::size_t n_max = 40,
                                       std::size_t ell_max = 6);

struct DetrendWindow {
  double half_width = 0.0;
  std::vector<double> coefficients;  // a_1 .. a_degree
};

struct DetrendResult {
  double t0 = 0.0;
  double alpha_hat = 0.0;
  int degree_max = 0;
  bool skipped = false;
  std::vector<DetrendWindow> windows;  // shrinking
  std::vector<bool> coefficient_decays;
  // Fitted power of |a_j| against the half width.
  std::vector<double> coefficient_rates;
  double residual_exponent = 0.0;
  bool degenerate = false;
  bool hypothesis_violated = false;
  bool pass = false;
};

// Degree defaults to floor(alpha_hat + 0.05) (negative: use the default);
// a degree of 0 skips the test (trivial pass). For each window
// [t0 - b^-j, t0 + b^-j] and degree j, a_j is the least-squares coefficient
// of (t - t0)^j in F(t) - F(t0). Pass: every |a_j| shrinks monotonically
// with a positive rate, the residual F(t) - F(t0) has windowed liminf
// exponent within 0.05 of alpha_hat, and the system is not degenerate.
DetrendResult detrend_exponent_test(const DistributionFunction& F, double t0,
                                    double alpha_hat, const HolderScales& scales,
                                    int degree_max = -1);

}  // namespace holderspec
