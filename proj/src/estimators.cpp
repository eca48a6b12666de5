#include "holderspec/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "holderspec/errors.hpp"
#include "holderspec/parallel.hpp"
#include "holderspec/thermodynamics.hpp"

namespace holderspec {

namespace {

constexpr std::uint64_t kTableWordCap = std::uint64_t{1} << 18;
constexpr std::size_t kMaxTableDepth = 16;
constexpr double kSkipFactor = 10.0;

// Endpoint snapping tolerance: a few dozen ulps of the larger magnitude.
double snap_tol(double x, double endpoint) {
  return 64.0 * std::numeric_limits<double>::epsilon() *
         std::max({std::abs(x), std::abs(endpoint), 1e-300});
}

std::size_t auto_table_depth(std::size_t m) {
  std::size_t d = 1;
  std::uint64_t count = m;
  while (d < kMaxTableDepth && count * m <= kTableWordCap) {
    count *= m;
    ++d;
  }
  return std::max<std::size_t>(d, 2);
}

std::uint64_t index_of_range(const Word& w, std::size_t begin, std::size_t end,
                             std::size_t m) {
  std::uint64_t idx = 0;
  for (std::size_t i = begin; i < end; ++i) idx = idx * m + w[i];
  return idx;
}

}  // namespace

DistributionFunction::DistributionFunction(std::shared_ptr<const IfsSystem> ifs,
                                           Potential psi, DepthPolicy policy,
                                           std::size_t table_depth)
    : ifs_(std::move(ifs)), psi_(std::move(psi)), policy_(policy) {
  if (!ifs_) throw DomainError("distribution function needs a system");
  if (!(policy_.mass_tol > 0.0) || policy_.max_depth == 0) {
    throw DomainError("depth policy needs mass_tol > 0 and max_depth >= 1");
  }
  if (psi_.alphabet_size() != ifs_->size()) {
    throw DomainError("potential alphabet differs from the number of maps");
  }
  const std::size_t m = ifs_->size();
  if (auto first = psi_.first_symbol_values()) {
    const double p = log_sum_exp(*first);
    if (std::abs(p) >= kNormalizedPressureTol) {
      throw PreconditionError("distribution function needs a normalized potential; P(psi) = " +
                              std::to_string(p));
    }
    probabilities_.reserve(m);
    for (double v : *first) probabilities_.push_back(std::exp(v - p));
    return;
  }
  table_depth_ = table_depth == 0 ? auto_table_depth(m) : table_depth;
  if (table_depth_ < 2) throw DomainError("table depth must be at least 2");
  const GibbsWeights top = gibbs_cylinder_weights(*ifs_, psi_, table_depth_);
  marginals_.resize(table_depth_ + 1);
  marginals_[table_depth_] = top.weights;
  for (std::size_t d = table_depth_; d-- > 0;) {
    const auto& fine = marginals_[d + 1];
    auto& coarse = marginals_[d];
    coarse.assign(fine.size() / m, 0.0);
    for (std::size_t i = 0; i < coarse.size(); ++i) {
      for (std::size_t j = 0; j < m; ++j) coarse[i] += fine[i * m + j];
    }
  }
}

double DistributionFunction::cylinder_mass(const Word& w) const {
  const std::size_t m = ifs_->size();
  if (!w.valid_for(m)) throw DomainError("word " + w.str() + " uses letters outside the alphabet");
  if (is_product()) {
    double mass = 1.0;
    for (Symbol s : w) mass *= probabilities_[s];
    return mass;
  }
  const std::size_t d = table_depth_;
  if (w.size() <= d) return marginals_[w.size()][index_of_range(w, 0, w.size(), m)];
  double mass = marginals_[d][index_of_range(w, 0, d, m)];
  for (std::size_t i = d; i < w.size(); ++i) {
    const std::uint64_t ctx = index_of_range(w, i + 1 - d, i, m);
    mass *= marginals_[d][ctx * m + w[i]] / marginals_[d - 1][ctx];
  }
  return mass;
}

void DistributionFunction::child_probabilities(const Word& w,
                                               std::vector<double>& out) const {
  const std::size_t m = ifs_->size();
  out.resize(m);
  if (is_product()) {
    for (std::size_t j = 0; j < m; ++j) out[j] = probabilities_[j];
    return;
  }
  const std::size_t d = table_depth_;
  if (w.size() < d) {
    const auto& next = marginals_[w.size() + 1];
    const std::uint64_t base = index_of_range(w, 0, w.size(), m) * m;
    const double parent = marginals_[w.size()][base / m];
    for (std::size_t j = 0; j < m; ++j) out[j] = next[base + j] / parent;
    return;
  }
  const std::uint64_t ctx = index_of_range(w, w.size() + 1 - d, w.size(), m);
  const double parent = marginals_[d - 1][ctx];
  for (std::size_t j = 0; j < m; ++j) out[j] = marginals_[d][ctx * m + j] / parent;
}

void DistributionFunction::child_masses(const Word& w, double mass,
                                        std::vector<double>& out) const {
  child_probabilities(w, out);
  for (double& v : out) v *= mass;
}

CdfValue cdf_eval(const DistributionFunction& F, double x, bool strict) {
  return cdf_eval(F, x, strict, F.policy().mass_tol);
}

CdfValue cdf_eval(const DistributionFunction& F, double x, bool strict,
                  double mass_tol) {
  const IfsSystem& ifs = F.ifs();
  const Interval dom = ifs.domain();
  if (std::isnan(x)) throw DomainError("cdf_eval at NaN");
  if (x < dom.lo) return {0.0, 0.0, false};
  if (x >= dom.hi) return {1.0, 0.0, false};

  const std::size_t m = ifs.size();
  const DepthPolicy& policy = F.policy();
  // Masses and the running sum are carried in extended precision and the
  // last child takes the remainder of its parent, so values at different
  // points round consistently and F stays monotone to the last bit.
  std::vector<double> probs;
  std::vector<long double> masses(m);
  std::vector<Interval> children(m);
  std::vector<Mobius> maps(m);
  Mobius current;
  Word w;
  long double mass = 1.0L;
  long double acc = 0.0L;
  auto done = [](long double value, long double err, bool limited) {
    return CdfValue{static_cast<double>(value), static_cast<double>(err), limited};
  };
  for (std::size_t depth = 0;; ++depth) {
    if (mass < mass_tol || depth >= policy.max_depth) return done(acc, mass, false);
    F.child_probabilities(w, probs);
    long double rest = mass;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      masses[i] = mass * probs[i];
      rest -= masses[i];
    }
    masses[m - 1] = std::max(rest, 0.0L);
    for (std::size_t i = 0; i < m; ++i) {
      maps[i] = current.compose(ifs.map(i).coefficients());
      children[i] = {maps[i](dom.lo), maps[i](dom.hi)};
    }
    // Rightmost child whose left endpoint is at or before x: touching
    // endpoints resolve to the right cylinder.
    std::size_t sel = m;
    for (std::size_t i = m; i-- > 0;) {
      if (x >= children[i].lo - snap_tol(x, children[i].lo)) {
        sel = i;
        break;
      }
    }
    if (sel == m) return done(acc, 0.0L, false);  // gap left of every child
    for (std::size_t j = 0; j < sel; ++j) acc += masses[j];
    const Interval& c = children[sel];
    if (x <= c.lo + snap_tol(x, c.lo)) return done(acc, 0.0L, false);
    if (x >= c.hi - snap_tol(x, c.hi)) return done(acc + masses[sel], 0.0L, false);
    if (c.width() < kWidthFloor) {
      if (strict) {
        throw PrecisionError("cdf_eval: cylinder width " + std::to_string(c.width()) +
                             " below the floor at depth " + std::to_string(depth + 1) +
                             " with mass " + std::to_string(static_cast<double>(masses[sel])) +
                             " left");
      }
      return done(acc, masses[sel], true);
    }
    w.push_back(static_cast<Symbol>(sel));
    current = maps[sel];
    mass = masses[sel];
  }
}

BallMass measure_ball(const DistributionFunction& F, double t0, double r,
                      bool strict) {
  if (!(r > 0.0)) throw DomainError("measure_ball needs r > 0");
  const CdfValue hi = cdf_eval(F, t0 + r, strict, 0.0);
  const CdfValue lo = cdf_eval(F, t0 - r, strict, 0.0);
  return {std::max(0.0, hi.value - lo.value), hi.error_bound + lo.error_bound};
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("least squares slope needs at least two matching samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (!(sxx > 0.0)) throw DegenerateError("least squares slope with constant abscissae");
  return sxy / sxx;
}

HolderEstimate holder_exponent_estimate(const DistributionFunction& F, double t0,
                                        const HolderScales& scales,
                                        HolderMethod method) {
  if (!(scales.base > 1.0)) throw DomainError("scale base must exceed 1");
  if (scales.j_min >= scales.j_max) throw DomainError("holder scales need j_min < j_max");
  if (scales.window < 2) throw DomainError("regression window must be at least 2");

  HolderEstimate est;
  est.t0 = t0;
  est.method = method;
  for (int j = scales.j_min; j <= scales.j_max; ++j) {
    const double r = std::pow(scales.base, -j);
    const BallMass ball = measure_ball(F, t0, r, false);
    if (ball.value <= 0.0 && ball.error_bound == 0.0) {
      est.outside_support = true;
      break;
    }
    if (ball.value < kSkipFactor * ball.error_bound || ball.value <= 0.0) continue;
    est.scale_pairs.push_back({std::log(r), std::log(ball.value)});
  }
  if (est.outside_support) {
    est.exponent = std::numeric_limits<double>::infinity();
    return est;
  }
  const std::size_t n = est.scale_pairs.size();
  if (n < scales.window) {
    throw DegenerateError("holder estimate at t0 = " + std::to_string(t0) + ": only " +
                          std::to_string(n) + " usable scales, window needs " +
                          std::to_string(scales.window));
  }

  double best = std::numeric_limits<double>::infinity();
  if (method == HolderMethod::regression_min) {
    std::vector<double> xs(scales.window), ys(scales.window);
    for (std::size_t i = 0; i + scales.window <= n; ++i) {
      for (std::size_t k = 0; k < scales.window; ++k) {
        xs[k] = est.scale_pairs[i + k].log_r;
        ys[k] = est.scale_pairs[i + k].log_mu;
      }
      best = std::min(best, least_squares_slope(xs, ys));
    }
  } else {
    for (std::size_t i = n / 2; i < n; ++i) {
      best = std::min(best, est.scale_pairs[i].log_mu / est.scale_pairs[i].log_r);
    }
  }
  est.exponent = std::max(0.0, best);
  return est;
}

double exact_exponent_at_coded_point(const IfsSystem& ifs, const Potential& psi,
                                     const PeriodicWord& w) {
  const std::size_t ell = w.period_length();
  return ergodic_sum(psi, w, ell) / ifs.geometric_sum_chain(Sequence(w), ell);
}

double default_scale_base(const IfsSystem& ifs) {
  if (auto r = ifs.uniform_ratio()) {
    const double inv = 1.0 / *r;
    const double rounded = std::round(inv);
    if (rounded >= 2.0 && std::abs(inv - rounded) < 1e-9) return rounded;
  }
  return 2.0;
}

std::vector<CoarseSpectrum> coarse_spectrum(const DistributionFunction& F,
                                            std::span<const double> deltas,
                                            double bin_width, double bin_anchor,
                                            unsigned threads) {
  if (!(bin_width > 0.0)) throw DomainError("coarse spectrum needs a positive bin width");
  const Interval dom = F.ifs().domain();
  std::vector<CoarseSpectrum> out;
  out.reserve(deltas.size());
  for (double delta : deltas) {
    if (!(delta > 0.0) || !(delta < dom.width())) {
      throw DomainError("box size " + std::to_string(delta) + " outside (0, diam X)");
    }
    const auto boxes = static_cast<std::size_t>(std::ceil(dom.width() / delta - 1e-9));
    std::vector<CdfValue> edge(boxes + 1);
    parallel_for(boxes + 1, threads, [&](std::size_t i) {
      const double x = i == boxes ? dom.hi : dom.lo + static_cast<double>(i) * delta;
      edge[i] = cdf_eval(F, x, false, 0.0);
    });
    // Boxes are [e_i, e_{i+1}); the first one also holds the left endpoint.
    edge[0] = {0.0, 0.0, false};

    CoarseSpectrum cs;
    cs.delta = delta;
    cs.boxes = boxes;
    struct Acc {
      std::size_t count = 0;
      double sum_alpha = 0.0;
    };
    std::map<long long, Acc> bins;
    const double log_delta = std::log(delta);
    for (std::size_t i = 0; i < boxes; ++i) {
      const double mass = edge[i + 1].value - edge[i].value;
      const double err = edge[i + 1].error_bound + edge[i].error_bound;
      cs.total_mass += std::max(0.0, mass);
      if (!(mass > 0.0) || mass < kSkipFactor * err) continue;
      const double alpha = std::log(mass) / log_delta;
      const auto key = static_cast<long long>(std::floor((alpha - bin_anchor) / bin_width + 0.5));
      auto& a = bins[key];
      ++a.count;
      a.sum_alpha += alpha;
      ++cs.boxes_used;
    }
    for (const auto& [key, a] : bins) {
      CoarseBin b;
      b.alpha_lo = bin_anchor + (static_cast<double>(key) - 0.5) * bin_width;
      b.alpha_hi = bin_anchor + (static_cast<double>(key) + 0.5) * bin_width;
      b.alpha_mean = a.sum_alpha / static_cast<double>(a.count);
      b.count = a.count;
      b.f = std::log(static_cast<double>(a.count)) / -log_delta;
      cs.bins.push_back(b);
    }
    out.push_back(std::move(cs));
  }
  return out;
}

}  // namespace holderspec
