#include "holderspec/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "holderspec/errors.hpp"

namespace holderspec {

namespace {

constexpr std::size_t kBoundSamples = 64;

void check_domain(const Interval& domain) {
  if (!(std::isfinite(domain.lo) && std::isfinite(domain.hi)) ||
      !(domain.hi > domain.lo)) {
    throw DomainError("domain must be a nondegenerate finite interval");
  }
}

}  // namespace

Mobius Mobius::compose(const Mobius& o) const {
  Mobius r{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
           c * o.b + d * o.d};
  const double scale = std::max({std::abs(r.a), std::abs(r.b), std::abs(r.c),
                                 std::abs(r.d)});
  if (scale > 0.0 && (scale > 1e100 || scale < 1e-100)) {
    r.a /= scale;
    r.b /= scale;
    r.c /= scale;
    r.d /= scale;
  }
  return r;
}

ContractionMap ContractionMap::affine(double ratio, double offset,
                                      Interval domain) {
  if (!(ratio > 0.0 && ratio < 1.0) || !std::isfinite(offset)) {
    throw DomainError("affine map needs ratio in (0,1) and finite offset");
  }
  return ContractionMap(Kind::affine, Mobius{ratio, offset, 0.0, 1.0}, domain);
}

ContractionMap ContractionMap::moebius(double a, double b, double c, double d,
                                       Interval domain) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) &&
        std::isfinite(d))) {
    throw DomainError("moebius coefficients must be finite");
  }
  if (a * d - b * c == 0.0) throw DomainError("moebius map needs ad - bc != 0");
  return ContractionMap(Kind::moebius, Mobius{a, b, c, d}, domain);
}

ContractionMap::ContractionMap(Kind kind, Mobius f, Interval domain)
    : kind_(kind), f_(f), domain_(domain) {
  check_domain(domain_);
  const double den_lo = f_.c * domain_.lo + f_.d;
  const double den_hi = f_.c * domain_.hi + f_.d;
  if (den_lo == 0.0 || den_hi == 0.0 || (den_lo > 0.0) != (den_hi > 0.0)) {
    throw DomainError("map " + describe() + " has a pole inside the domain");
  }
  if (!(f_.a * f_.d - f_.b * f_.c > 0.0)) {
    throw DomainError("map " + describe() + " is not strictly increasing");
  }
  // The derivative K/(cx+d)^2 is monotone on a pole-free interval, so its
  // extremes sit at the endpoints.
  const double d_lo = f_.derivative(domain_.lo);
  const double d_hi = f_.derivative(domain_.hi);
  r_min_ = std::min(d_lo, d_hi);
  r_max_ = std::max(d_lo, d_hi);
  for (std::size_t i = 0; i <= kBoundSamples; ++i) {
    const double x = domain_.lo + domain_.width() * static_cast<double>(i) /
                                      static_cast<double>(kBoundSamples);
    const double dv = f_.derivative(x);
    if (dv < r_min_ * (1 - 1e-12) || dv > r_max_ * (1 + 1e-12)) {
      throw DomainError("derivative bounds of " + describe() +
                        " are not attained at the endpoints");
    }
  }
  if (!(r_min_ > 0.0 && r_max_ < 1.0)) {
    throw DomainError("map " + describe() +
                      " is not a contraction on the domain (|f'| range [" +
                      std::to_string(r_min_) + ", " + std::to_string(r_max_) +
                      "])");
  }
  const Interval img = image(domain_);
  if (!domain_.contains(img, kDomainTol)) {
    throw DomainError("map " + describe() + " does not map the domain into itself");
  }
}

double ContractionMap::apply(double x) const {
  if (!domain_.contains(x, kDomainTol)) {
    throw DomainError("point " + std::to_string(x) + " outside map domain");
  }
  return f_(x);
}

double ContractionMap::derivative(double x) const {
  if (!domain_.contains(x, kDomainTol)) {
    throw DomainError("point " + std::to_string(x) + " outside map domain");
  }
  return f_.derivative(x);
}

std::string ContractionMap::describe() const {
  std::ostringstream os;
  os.precision(6);
  if (kind_ == Kind::affine) {
    os << "affine(" << f_.a << "x + " << f_.b << ")";
  } else {
    os << "moebius(" << f_.a << ", " << f_.b << ", " << f_.c << ", " << f_.d
       << ")";
  }
  return os.str();
}

IfsSystem::IfsSystem(Interval domain, std::vector<ContractionMap> maps)
    : domain_(domain), maps_(std::move(maps)) {
  check_domain(domain_);
  if (maps_.size() < 2 || maps_.size() > kMaxAlphabet) {
    throw DomainError("an IFS needs between 2 and 64 maps");
  }
  r_min_ = 1.0;
  r_max_ = 0.0;
  for (const auto& m : maps_) {
    if (std::abs(m.domain().lo - domain_.lo) > kDomainTol ||
        std::abs(m.domain().hi - domain_.hi) > kDomainTol) {
      throw DomainError("every map must be defined on the system domain");
    }
    r_min_ = std::min(r_min_, m.r_min());
    r_max_ = std::max(r_max_, m.r_max());
  }
  for (std::size_t i = 0; i + 1 < maps_.size(); ++i) {
    const Interval a = maps_[i].image(domain_);
    const Interval b = maps_[i + 1].image(domain_);
    if (a.lo > b.lo || a.hi > b.hi) {
      throw DomainError("first-level images must appear left to right in "
                        "map order (maps " +
                        std::to_string(i) + " and " + std::to_string(i + 1) +
                        ")");
    }
  }
  osc_ = check_osc();
}

bool IfsSystem::all_affine() const {
  return std::all_of(maps_.begin(), maps_.end(), [](const ContractionMap& m) {
    return m.kind() == ContractionMap::Kind::affine;
  });
}

std::optional<double> IfsSystem::uniform_ratio() const {
  if (!all_affine()) return std::nullopt;
  const double r = maps_.front().coefficients().a;
  for (const auto& m : maps_) {
    if (std::abs(m.coefficients().a - r) > 1e-15) return std::nullopt;
  }
  return r;
}

Mobius IfsSystem::word_map(const Word& w) const {
  Mobius acc;
  for (Symbol s : w) acc = acc.compose(maps_.at(s).coefficients());
  return acc;
}

Interval IfsSystem::cylinder_interval(const Word& w) const {
  if (!w.valid_for(size())) throw DomainError("word uses symbols outside the alphabet");
  Interval iv = domain_;
  for (std::size_t i = w.size(); i-- > 0;) {
    iv = maps_[w[i]].image(iv);
  }
  if (iv.width() < kWidthFloor) {
    throw PrecisionError("cylinder " + w.str() + " has width " +
                         std::to_string(iv.width()) +
                         " below the precision floor");
  }
  return iv;
}

double IfsSystem::refine_fixed_point(const Word& block, const Interval& iv) const {
  auto apply_block = [&](double x) {
    for (std::size_t i = block.size(); i-- > 0;) x = maps_[block[i]].value_unchecked(x);
    return x;
  };
  // Candidates: the algebraic fixed point of the block map and the two
  // interval ends; keep the one the floating-point block map moves least.
  std::vector<double> candidates{iv.midpoint(), iv.lo, iv.hi};
  // Extended precision for the algebraic fixed point keeps exact fixed
  // points (such as domain endpoints) from drifting by an ulp.
  const Mobius m = word_map(block);
  using wide = long double;
  const wide a = m.a, b = m.b, c = m.c, d = m.d;
  if (c == 0.0L) {
    if (d != a) candidates.insert(candidates.begin(), static_cast<double>(b / (d - a)));
  } else {
    const wide p = d - a;
    const wide disc = p * p + 4.0L * c * b;
    if (disc >= 0.0L) {
      const wide root = std::sqrt(disc);
      const wide big = p >= 0.0L ? -(p + root) : -(p - root);
      if (big != 0.0L) {
        candidates.insert(candidates.begin(), static_cast<double>((2.0L * -b) / big));
        candidates.insert(candidates.begin(), static_cast<double>(big / (2.0L * c)));
      }
    }
  }
  candidates.insert(candidates.begin(), {domain_.lo, domain_.hi});
  double best = iv.midpoint();
  double best_residual = std::numeric_limits<double>::infinity();
  for (double x : candidates) {
    if (!iv.contains(x, 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))) {
      continue;
    }
    const double r = std::abs(apply_block(x) - x);
    if (r < best_residual) {
      best = x;
      best_residual = r;
    }
  }
  return best;
}

double IfsSystem::coding_point(const PeriodicWord& w, double tol,
                               std::size_t budget) const {
  if (!(tol > 0.0)) throw DomainError("coding_point needs tol > 0");
  if (!w.period().valid_for(size())) {
    throw DomainError("periodic word uses symbols outside the alphabet");
  }
  const Word& block = w.period();
  Interval iv = domain_;
  for (std::size_t it = 0; it < budget; ++it) {
    Interval next = iv;
    for (std::size_t i = block.size(); i-- > 0;) next = maps_[block[i]].image(next);
    // Stagnation means both ends have met the fixed point to within
    // rounding; the width cannot shrink further.
    if (next.width() < tol || (next.lo == iv.lo && next.hi == iv.hi)) {
      return refine_fixed_point(block, next);
    }
    iv = next;
  }
  throw ConvergenceError("coding point of " + block.str() +
                         " did not converge within the iteration budget");
}

double IfsSystem::coding_point(const Sequence& omega, double tol) const {
  double y = coding_point(omega.tail(), tol);
  const Word& head = omega.head();
  if (!head.valid_for(size())) throw DomainError("sequence uses symbols outside the alphabet");
  for (std::size_t i = head.size(); i-- > 0;) y = maps_[head[i]].value_unchecked(y);
  return y;
}

double IfsSystem::geometric_potential(const Sequence& omega) const {
  const double y = coding_point(omega.shifted(1));
  return std::log(maps_.at(omega.at(0)).derivative_unchecked(y));
}

double IfsSystem::geometric_sum(const PeriodicWord& w, std::size_t n) const {
  if (n == 0) throw DomainError("ergodic sums need n >= 1");
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += geometric_potential(Sequence(w.rotated(k % w.period_length())));
  }
  return sum;
}

double IfsSystem::geometric_sum_chain(const Sequence& omega,
                                      std::size_t n) const {
  if (n == 0) throw DomainError("ergodic sums need n >= 1");
  double y = coding_point(omega.shifted(n));
  double sum = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const auto& m = maps_.at(omega.at(i));
    sum += std::log(m.derivative_unchecked(y));
    y = m.value_unchecked(y);
  }
  return sum;
}

double IfsSystem::log_composition_derivative(const Word& w, double x) const {
  // (f_1 o ... o f_n)'(x) = prod f_i'(x_i), x_n = x, x_{i-1} = f_i(x_i).
  double y = x;
  double sum = 0.0;
  for (std::size_t i = w.size(); i-- > 0;) {
    const auto& m = maps_.at(w[i]);
    sum += std::log(m.derivative(y));
    y = m.value_unchecked(y);
  }
  return sum;
}

OscDiagnostic IfsSystem::check_osc() const {
  const double tol = 1e-15 * std::max(1.0, std::abs(domain_.lo) + std::abs(domain_.hi));
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const Interval a = maps_[i].image(domain_);
    for (std::size_t j = i + 1; j < maps_.size(); ++j) {
      const Interval b = maps_[j].image(domain_);
      const double overlap = std::min(a.hi, b.hi) - std::max(a.lo, b.lo);
      if (overlap > tol) return {false, i, j, overlap};
    }
  }
  return {};
}

}  // namespace holderspec
