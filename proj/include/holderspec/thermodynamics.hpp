#pragma once

// Topological pressure from periodic-point sums, normalization, Gibbs
// cylinder weights and the degeneracy (cohomology) diagnostic.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "holderspec/ifs.hpp"
#include "holderspec/potential.hpp"

namespace holderspec {

inline constexpr std::size_t kDefaultPressureDepth = 12;
inline constexpr double kDegeneracyThreshold = 1e-8;
inline constexpr double kNormalizedPressureTol = 1e-8;

// log(sum exp(v_i)); -inf for an empty span.
double log_sum_exp(std::span<const double> values);

// Per-word ergodic sums at a fixed level k, indexed by word_index: the
// geometric sums S_k phi(w-bar) and the potential sums S_k psi(w-bar).
struct LevelSums {
  std::size_t alphabet = 0;
  std::size_t depth = 0;
  std::vector<double> geometric;
  std::vector<double> potential;
};

LevelSums level_sums(const IfsSystem& ifs, const Potential& psi, std::size_t k,
                     unsigned threads = 1);

// (1/k) log sum_{|w|=k} exp S_k psi(w-bar).
double pressure_at_level(const IfsSystem& ifs, const Potential& psi,
                         std::size_t k);

struct PressureEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  std::size_t depth_used = 0;
};

// Extrapolated pressure from the increments log Z_k - log Z_{k-1} of the
// periodic-point partition sums, which converge geometrically; Aitken's
// delta-squared is applied when it tightens the last change. error_bound is
// the last change of the accepted sequence. Stops early once it drops below
// `tol`. Potentials depending on the first symbol only are exact: value
// log sum_i exp psi_i, error 0. CapacityError up front when m^k_max
// exceeds the enumeration cap.
PressureEstimate pressure(const IfsSystem& ifs, const Potential& psi,
                          std::size_t k_max, double tol = 1e-14);

// psi - P(psi).
Potential normalize(const Potential& psi, const IfsSystem& ifs,
                    std::size_t k_max = kDefaultPressureDepth);

struct GibbsWeights {
  std::size_t alphabet = 0;
  std::size_t depth = 0;
  std::vector<double> weights;  // indexed by word_index
  double gibbs_constant_estimate = 1.0;

  double weight(const Word& w) const;
};

// weights[w] = exp(S_n psi(w-bar)) / sum_v exp(S_n psi(v-bar)).
// PreconditionError unless |P(psi)| < 1e-8 (checked at
// max(n, kDefaultPressureDepth) or the largest level the cap allows).
// The reported Gibbs constant is the largest marginalization ratio over
// consecutive levels up to n.
GibbsWeights gibbs_cylinder_weights(const IfsSystem& ifs, const Potential& psi,
                                    std::size_t n);

// max over |w| = n of max(ratio, 1/ratio), ratio = w_n[w] / sum_j w_{n+1}[wj].
double gibbs_consistency_check(const GibbsWeights& coarse,
                               const GibbsWeights& fine);

struct CohomologyDiagnostic {
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  bool degenerate = false;

  double ratio_mid() const { return 0.5 * (ratio_min + ratio_max); }
  // Degenerate with constant ratio 1, i.e. psi cohomologous to phi itself.
  bool cohomologous_to_geometric() const;
};

// Range of S_l psi(w-bar) / S_l phi(w-bar) over 1 <= l <= ell_max and all
// words of length l.
CohomologyDiagnostic cohomology_diagnostic(const IfsSystem& ifs,
                                           const Potential& psi,
                                           std::size_t ell_max);

}  // namespace holderspec
