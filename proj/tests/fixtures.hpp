#pragma once

// Systems and measures shared by the test binaries.

#include <cmath>
#include <memory>
#include <vector>

#include "holderspec/estimators.hpp"
#include "holderspec/ifs.hpp"
#include "holderspec/potential.hpp"
#include "holderspec/thermodynamics.hpp"

namespace fixture {

using namespace holderspec;

inline std::shared_ptr<const IfsSystem> cantor() {
  const Interval d{0.0, 1.0};
  return std::make_shared<const IfsSystem>(
      d, std::vector<ContractionMap>{ContractionMap::affine(1.0 / 3.0, 0.0, d),
                                     ContractionMap::affine(1.0 / 3.0, 2.0 / 3.0, d)});
}

inline std::shared_ptr<const IfsSystem> halves() {
  const Interval d{0.0, 1.0};
  return std::make_shared<const IfsSystem>(
      d, std::vector<ContractionMap>{ContractionMap::affine(0.5, 0.0, d),
                                     ContractionMap::affine(0.5, 0.5, d)});
}

// x / (x + 2) and (x + 2) / (x + 3) on [0, 1].
inline std::shared_ptr<const IfsSystem> moebius() {
  const Interval d{0.0, 1.0};
  return std::make_shared<const IfsSystem>(
      d, std::vector<ContractionMap>{ContractionMap::moebius(1, 0, 1, 2, d),
                                     ContractionMap::moebius(1, 2, 1, 3, d)});
}

inline Potential moebius_finite_range() {
  return Potential::finite_range(2, 2, {-1.0, -0.5, -0.8, -1.4});
}

inline DistributionFunction cantor_measure(double p0) {
  return DistributionFunction(cantor(), Potential::bernoulli_probabilities({p0, 1.0 - p0}));
}

// Lebesgue measure on [0, 1] as the equilibrium state of phi on halves().
inline DistributionFunction lebesgue() {
  auto ifs = halves();
  return DistributionFunction(ifs, Potential::geometric(ifs));
}

inline DistributionFunction moebius_measure(std::size_t pressure_depth = 10) {
  auto ifs = moebius();
  return DistributionFunction(ifs, normalize(moebius_finite_range(), *ifs, pressure_depth));
}

inline const double kLog3 = std::log(3.0);
inline const double kAlphaMinus = std::log(4.0 / 3.0) / kLog3;
inline const double kAlphaPlus = std::log(4.0) / kLog3;

}  // namespace fixture
