#pragma once

// The distribution function of the projected Gibbs measure, ball masses,
// pointwise Hölder exponent estimates and coarse (box-counting) spectra.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "holderspec/ifs.hpp"
#include "holderspec/potential.hpp"
#include "holderspec/symbolic.hpp"

namespace holderspec {

struct DepthPolicy {
  std::size_t max_depth = 200;
  double mass_tol = 1e-8;
};

struct CdfValue {
  double value = 0.0;
  double error_bound = 0.0;
  // Descent stopped at the width floor before reaching mass_tol.
  bool precision_limited = false;
};

// F(x) = mu((-inf, x]) for mu = mu_psi o pi^{-1}.
//
// Potentials depending on the first symbol only give the exact Bernoulli
// product measure. Otherwise the cylinder masses come from the normalized
// periodic-point weights at a fixed table depth D, extended beyond D as
// the (D-1)-step Markov measure with those marginals.
class DistributionFunction {
 public:
  // psi must be normalized (PreconditionError otherwise).
  DistributionFunction(std::shared_ptr<const IfsSystem> ifs, Potential psi,
                       DepthPolicy policy = {}, std::size_t table_depth = 0);

  const IfsSystem& ifs() const { return *ifs_; }
  std::shared_ptr<const IfsSystem> ifs_ptr() const { return ifs_; }
  const Potential& psi() const { return psi_; }
  const DepthPolicy& policy() const { return policy_; }
  bool is_product() const { return !probabilities_.empty(); }
  std::size_t table_depth() const { return table_depth_; }

  // Model mass of the cylinder [w].
  double cylinder_mass(const Word& w) const;

  // Conditional masses of the children of `w` given the mass of `w`.
  void child_masses(const Word& w, double mass, std::vector<double>& out) const;
  // The same as conditional probabilities.
  void child_probabilities(const Word& w, std::vector<double>& out) const;

 private:
  std::shared_ptr<const IfsSystem> ifs_;
  Potential psi_;
  DepthPolicy policy_;
  std::vector<double> probabilities_;           // product case
  std::size_t table_depth_ = 0;                 // table case
  std::vector<std::vector<double>> marginals_;  // marginals_[d][word_index]
};

// strict: a cylinder narrower than the width floor before the mass drops
// below mass_tol raises PrecisionError. Non-strict returns the partial
// value with error_bound = remaining cylinder mass and precision_limited.
CdfValue cdf_eval(const DistributionFunction& F, double x, bool strict = true);
// Same with the policy's mass tolerance replaced; 0 descends until the
// width floor or max_depth. The estimators below use this fine mode so that
// small ball and box masses are resolved regardless of the policy.
CdfValue cdf_eval(const DistributionFunction& F, double x, bool strict,
                  double mass_tol);

struct BallMass {
  double value = 0.0;
  double error_bound = 0.0;
};

// F(t0 + r) - F(t0 - r) in fine mode; masses clamp outside the domain.
BallMass measure_ball(const DistributionFunction& F, double t0, double r,
                      bool strict = false);

enum class HolderMethod { regression_min, running_min };

struct HolderScales {
  double base = 2.0;
  int j_min = 1;
  int j_max = 20;
  std::size_t window = 5;
};

struct ScalePair {
  double log_r = 0.0;
  double log_mu = 0.0;
};

struct HolderEstimate {
  double t0 = 0.0;
  double exponent = 0.0;
  std::vector<ScalePair> scale_pairs;  // decreasing r
  HolderMethod method = HolderMethod::regression_min;
  // A ball of zero mass was found: t0 lies off the support and the
  // exponent is reported as +infinity.
  bool outside_support = false;
};

// regression_min: minimum over sliding windows of the least-squares slope
// of log mu(B(t0, r)) against log r. running_min: minimum of the pointwise
// ratios log mu / log r over the finer half of the scales.
// DegenerateError with fewer than `window` usable scales.
HolderEstimate holder_exponent_estimate(
    const DistributionFunction& F, double t0, const HolderScales& scales,
    HolderMethod method = HolderMethod::regression_min);

// S_l psi(w-bar) / S_l phi(w-bar) with l the period length.
double exact_exponent_at_coded_point(const IfsSystem& ifs, const Potential& psi,
                                     const PeriodicWord& w);

// round(1 / r_max) for affine systems with a uniform ratio whose inverse is
// an integer >= 2, else 2.
double default_scale_base(const IfsSystem& ifs);

// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

struct CoarseBin {
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double alpha_mean = 0.0;  // mean coarse exponent of the boxes in the bin
  std::size_t count = 0;
  double f = 0.0;           // log count / (-log delta)
};

struct CoarseSpectrum {
  double delta = 0.0;
  std::size_t boxes = 0;
  std::size_t boxes_used = 0;
  double total_mass = 0.0;
  std::vector<CoarseBin> bins;  // occupied bins in increasing alpha
};

// Bins are [anchor + (i - 1/2) w, anchor + (i + 1/2) w). Boxes with mass
// below 10 times their error bound (or zero) are excluded.
std::vector<CoarseSpectrum> coarse_spectrum(const DistributionFunction& F,
                                            std::span<const double> deltas,
                                            double bin_width,
                                            double bin_anchor = 0.0,
                                            unsigned threads = 1);

}  // namespace holderspec
