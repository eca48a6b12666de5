#pragma once

// The multifractal scaling function beta(q), its Legendre transform and
// the predicted Hausdorff and packing spectra of the distribution function.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "holderspec/ifs.hpp"
#include "holderspec/potential.hpp"
#include "holderspec/thermodynamics.hpp"

namespace holderspec {

// Solves P_k(beta phi + q psi) = 0 for beta. The periodic sums of phi and
// psi at level k are computed once, so repeated solves only cost a
// log-sum-exp per evaluation.
class BetaSolver {
 public:
  BetaSolver(const IfsSystem& ifs, const Potential& psi, std::size_t k,
             unsigned threads = 1);

  std::size_t depth() const { return sums_.depth; }
  // P_k(beta phi + q psi).
  double pressure(double beta, double q) const;
  // d/dbeta of the above.
  double pressure_slope(double beta, double q) const;
  // Bisection from the bracket [-10, 10] (doubled outward up to 60 times)
  // down to a bracket width of 1e-12, then three guarded Newton steps.
  // ConvergenceError if the bracket cannot be established or the residual
  // stays above `tol`.
  double solve(double q, double tol = 1e-10) const;

 private:
  LevelSums sums_;
};

double beta_of_q(const IfsSystem& ifs, const Potential& psi, double q,
                 std::size_t k, double tol = 1e-10);

struct LegendreValue {
  double value = 0.0;
  bool interior = false;  // false: infimum sits at a grid edge
  double q_star = 0.0;
};

// inf_q {beta(q) + alpha q} over the sampled grid, refined by the vertex
// of the parabola through the minimizing sample and its neighbours.
LegendreValue legendre(std::span<const double> q, std::span<const double> beta,
                       double alpha);

struct SpectrumEndpoints {
  double alpha_minus = 0.0;
  double alpha_plus = 0.0;
};

// Min and max of S_l psi(w-bar) / S_l phi(w-bar) over 1 <= l <= ell_max.
SpectrumEndpoints endpoints(const IfsSystem& ifs, const Potential& psi,
                            std::size_t ell_max);

struct SpectrumSample {
  double q = 0.0;
  double beta = 0.0;
  double alpha = 0.0;
  double beta_star = 0.0;
};

struct SpectrumCurve {
  std::vector<SpectrumSample> samples;
  SpectrumEndpoints endpoints;
  bool degenerate = false;
  // Location of the spectrum maximum, taken at the sample maximizing
  // beta(q) + q alpha(q).
  double alpha_zero = 0.0;
  double q_at_alpha_zero = 0.0;
  double beta_star_max = 0.0;

  std::vector<double> q_values() const;
  std::vector<double> beta_values() const;
};

struct SpectrumOptions {
  double q_min = -10.0;
  double q_max = 10.0;
  std::size_t q_steps = 201;
  // Pressure level; 0 picks 1 when both potentials depend on the first
  // symbol only (exact), 10 otherwise.
  std::size_t depth = 0;
  double tol = 1e-10;
  std::size_t ell_max = 10;
  unsigned threads = 1;
};

std::size_t resolve_depth(const IfsSystem& ifs, const Potential& psi,
                          std::size_t requested);

// psi must be normalized. Degenerate systems (constant periodic ratio s)
// short-circuit to beta(q) = s (1 - q).
SpectrumCurve compute_spectrum(const IfsSystem& ifs, const Potential& psi,
                               const SpectrumOptions& options = {});

// -beta'(q) by a central difference over the neighbouring grid samples;
// linear interpolation between grid points. DomainError at or beyond the
// first/last sample.
double alpha_of_q(const SpectrumCurve& curve, double q);

struct SpectrumPoint {
  double alpha = 0.0;
  std::optional<double> dim;  // nullopt: the level set is empty
};

// beta*(alpha) on [alpha_-, alpha_+], empty outside.
std::vector<SpectrumPoint> hausdorff_spectrum_prediction(
    const SpectrumCurve& curve, std::span<const double> alpha_grid);

// beta*(alpha_0) on [alpha_-, alpha_0], beta*(alpha) on [alpha_0, alpha_+],
// empty outside.
std::vector<SpectrumPoint> packing_spectrum_prediction(
    const SpectrumCurve& curve, std::span<const double> alpha_grid);

}  // namespace holderspec
