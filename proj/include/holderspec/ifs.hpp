#pragma once

// Increasing conformal contractions of a compact interval, the coding map,
// cylinder intervals and the geometric potential.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "holderspec/symbolic.hpp"

namespace holderspec {

// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
  bool contains(const Interval& other, double tol = 0.0) const {
    return other.lo >= lo - tol && other.hi <= hi + tol;
  }
};

// Domain membership tolerance for map evaluation.
inline constexpr double kDomainTol = 1e-12;
// Interval widths below this are treated as lost to rounding.
inline constexpr double kWidthFloor = 1e-13;

// Linear fractional map x -> (a x + b) / (c x + d). Affine maps are the
// special case c = 0, d = 1, which is also how compositions of words are
// carried (the family is closed under composition).
struct Mobius {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  double operator()(double x) const { return (a * x + b) / (c * x + d); }
  double derivative(double x) const {
    const double den = c * x + d;
    return (a * d - b * c) / (den * den);
  }
  // this o other.
  Mobius compose(const Mobius& other) const;
};

class ContractionMap {
 public:
  enum class Kind { affine, moebius };

  // x -> ratio * x + offset.
  static ContractionMap affine(double ratio, double offset, Interval domain);
  // x -> (a x + b) / (c x + d).
  static ContractionMap moebius(double a, double b, double c, double d,
                                Interval domain);

  Kind kind() const { return kind_; }
  const Mobius& coefficients() const { return f_; }
  const Interval& domain() const { return domain_; }
  // Certified bounds on |derivative| over the domain.
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }

  // Both throw DomainError for x outside the domain (beyond kDomainTol).
  double apply(double x) const;
  double derivative(double x) const;

  // Unchecked versions for inner loops.
  double value_unchecked(double x) const { return f_(x); }
  double derivative_unchecked(double x) const { return f_.derivative(x); }

  Interval image(const Interval& iv) const { return {f_(iv.lo), f_(iv.hi)}; }

  std::string describe() const;

 private:
  ContractionMap(Kind kind, Mobius f, Interval domain);

  Kind kind_;
  Mobius f_;
  Interval domain_;
  double r_min_ = 0.0;
  double r_max_ = 0.0;
};

// Result of the open set condition check. When violated, `first`/`second`
// name the offending pair and `overlap_width` the length of the interior
// intersection of their first-level cylinders.
struct OscDiagnostic {
  bool satisfied = true;
  std::size_t first = 0;
  std::size_t second = 0;
  double overlap_width = 0.0;
};

class IfsSystem {
 public:
  // Validates m >= 2, shared domain, increasing maps into the domain, and
  // that first-level images appear left to right in index order.
  IfsSystem(Interval domain, std::vector<ContractionMap> maps);

  const Interval& domain() const { return domain_; }
  std::size_t size() const { return maps_.size(); }
  const ContractionMap& map(std::size_t i) const { return maps_.at(i); }
  const std::vector<ContractionMap>& maps() const { return maps_; }
  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  bool osc_verified() const { return osc_.satisfied; }
  bool all_affine() const;
  // Common contraction ratio if every map is affine with the same ratio.
  std::optional<double> uniform_ratio() const;

  // phi_{w_1} o ... o phi_{w_n} as a single linear fractional map.
  Mobius word_map(const Word& w) const;

  // Image of the domain under the word composition, computed by pushing
  // the domain endpoints through the maps from the last letter to the
  // first. Throws PrecisionError if the width drops below kWidthFloor.
  Interval cylinder_interval(const Word& w) const;

  // pi(w-bar): iterates the period-block composition on the domain until
  // the image has width below `tol`. ConvergenceError after `budget`
  // iterations.
  double coding_point(const PeriodicWord& w, double tol = 1e-15,
                      std::size_t budget = 10'000) const;
  // pi(omega) for an eventually periodic sequence.
  double coding_point(const Sequence& omega, double tol = 1e-15) const;

  // Geometric potential phi(omega) = log phi'_{omega_1}(pi(sigma omega)).
  double geometric_potential(const Sequence& omega) const;

  // S_n phi(w-bar) summed term by term: each shift of the periodic point
  // gets its own coding point.
  double geometric_sum(const PeriodicWord& w, std::size_t n) const;

  // S_n phi(omega) by the chain rule: log of the derivative of
  // phi_{omega_1} o ... o phi_{omega_n} at pi(sigma^n omega).
  double geometric_sum_chain(const Sequence& omega, std::size_t n) const;

  // log (phi_{w_1} o ... o phi_{w_n})'(x).
  double log_composition_derivative(const Word& w, double x) const;

  OscDiagnostic check_osc() const;

 private:
  double refine_fixed_point(const Word& block, const Interval& iv) const;

  Interval domain_;
  std::vector<ContractionMap> maps_;
  double r_min_ = 0.0;
  double r_max_ = 0.0;
  OscDiagnostic osc_;
};

}  // namespace holderspec
