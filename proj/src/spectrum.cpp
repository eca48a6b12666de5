#include "holderspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holderspec/errors.hpp"
#include "holderspec/parallel.hpp"

namespace holderspec {

namespace {

constexpr double kInitialBracket = 10.0;
constexpr int kMaxDoublings = 60;
constexpr double kBracketWidth = 1e-12;
constexpr int kNewtonSteps = 3;
constexpr double kEndpointTol = 1e-12;

}  // namespace

BetaSolver::BetaSolver(const IfsSystem& ifs, const Potential& psi,
                       std::size_t k, unsigned threads)
    : sums_(level_sums(ifs, psi, k, threads)) {}

double BetaSolver::pressure(double beta, double q) const {
  const std::size_t n = sums_.potential.size();
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    mx = std::max(mx, beta * sums_.geometric[i] + q * sums_.potential[i]);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += std::exp(beta * sums_.geometric[i] + q * sums_.potential[i] - mx);
  }
  return (mx + std::log(s)) / static_cast<double>(sums_.depth);
}

double BetaSolver::pressure_slope(double beta, double q) const {
  const std::size_t n = sums_.potential.size();
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    mx = std::max(mx, beta * sums_.geometric[i] + q * sums_.potential[i]);
  }
  double s = 0.0;
  double ws = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = std::exp(beta * sums_.geometric[i] + q * sums_.potential[i] - mx);
    s += w;
    ws += w * sums_.geometric[i];
  }
  return ws / s / static_cast<double>(sums_.depth);
}

double BetaSolver::solve(double q, double tol) const {
  if (!(tol > 0.0)) throw DomainError("beta_of_q needs tol > 0");
  // beta -> P is strictly decreasing because phi < 0.
  double lo = -kInitialBracket;
  double hi = kInitialBracket;
  double f_lo = pressure(lo, q);
  double f_hi = pressure(hi, q);
  int doublings = 0;
  while (!(f_lo > 0.0 && f_hi < 0.0)) {
    if (++doublings > kMaxDoublings) {
      throw ConvergenceError("beta_of_q: no sign change after 60 bracket doublings at q = " +
                             std::to_string(q));
    }
    const double width = hi - lo;
    if (!(f_lo > 0.0)) {
      lo -= width;
      f_lo = pressure(lo, q);
    }
    if (!(f_hi < 0.0)) {
      hi += width;
      f_hi = pressure(hi, q);
    }
  }
  while (hi - lo > kBracketWidth) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = pressure(mid, q);
    if (f_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double beta = 0.5 * (lo + hi);
  double f = pressure(beta, q);
  for (int i = 0; i < kNewtonSteps; ++i) {
    const double slope = pressure_slope(beta, q);
    if (!(slope < 0.0)) break;
    const double candidate = beta - f / slope;
    const double f_candidate = pressure(candidate, q);
    if (std::abs(f_candidate) >= std::abs(f)) break;
    beta = candidate;
    f = f_candidate;
  }
  if (!(std::abs(f) < tol)) {
    throw ConvergenceError("beta_of_q: residual " + std::to_string(f) +
                           " above tolerance at q = " + std::to_string(q));
  }
  return beta;
}

double beta_of_q(const IfsSystem& ifs, const Potential& psi, double q,
                 std::size_t k, double tol) {
  return BetaSolver(ifs, psi, k).solve(q, tol);
}

LegendreValue legendre(std::span<const double> q, std::span<const double> beta,
                       double alpha) {
  if (q.size() != beta.size() || q.size() < 3) {
    throw DomainError("legendre needs matching q/beta samples (at least 3)");
  }
  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double v = beta[i] + alpha * q[i];
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best == 0 || best + 1 == q.size()) return {best_v, false, q[best]};

  // Vertex of the parabola through three (possibly unevenly spaced) points.
  const double x0 = q[best - 1], x1 = q[best], x2 = q[best + 1];
  const double y0 = beta[best - 1] + alpha * x0;
  const double y1 = best_v;
  const double y2 = beta[best + 1] + alpha * x2;
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curv = (d12 - d01) / (x2 - x0);
  if (!(curv > 0.0)) return {best_v, true, x1};
  const double b = d01 - curv * (x0 + x1);
  double x_star = -b / (2.0 * curv);
  x_star = std::clamp(x_star, x0, x2);
  const double v_star = y0 + d01 * (x_star - x0) + curv * (x_star - x0) * (x_star - x1);
  return {std::min(v_star, best_v), true, x_star};
}

SpectrumEndpoints endpoints(const IfsSystem& ifs, const Potential& psi,
                            std::size_t ell_max) {
  const auto diag = cohomology_diagnostic(ifs, psi, ell_max);
  return {diag.ratio_min, diag.ratio_max};
}

std::vector<double> SpectrumCurve::q_values() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.q);
  return out;
}

std::vector<double> SpectrumCurve::beta_values() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.beta);
  return out;
}

std::size_t resolve_depth(const IfsSystem& ifs, const Potential& psi,
                          std::size_t requested) {
  if (requested != 0) return requested;
  const bool exact = psi.first_symbol_values().has_value() &&
                     Potential::geometric(std::make_shared<IfsSystem>(ifs))
                         .first_symbol_values()
                         .has_value();
  return exact ? 1 : 10;
}

SpectrumCurve compute_spectrum(const IfsSystem& ifs, const Potential& psi,
                               const SpectrumOptions& options) {
  if (options.q_steps < 3 || !(options.q_max > options.q_min)) {
    throw DomainError("q grid needs at least 3 points on a nonempty range");
  }
  const std::size_t k = resolve_depth(ifs, psi, options.depth);
  const std::size_t n = options.q_steps;
  const double h = (options.q_max - options.q_min) / static_cast<double>(n - 1);

  SpectrumCurve curve;
  curve.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    curve.samples[i].q = options.q_min + h * static_cast<double>(i);
  }
  curve.samples.back().q = options.q_max;

  const auto diag = cohomology_diagnostic(ifs, psi, options.ell_max);
  curve.endpoints = {diag.ratio_min, diag.ratio_max};
  curve.degenerate = diag.degenerate;

  if (curve.degenerate) {
    const double s = diag.ratio_mid();
    for (auto& sm : curve.samples) {
      sm.beta = s * (1.0 - sm.q);
      sm.alpha = s;
      sm.beta_star = s;
    }
    curve.alpha_zero = s;
    curve.q_at_alpha_zero = 0.0;
    curve.beta_star_max = s;
    return curve;
  }

  const BetaSolver solver(ifs, psi, k, options.threads);
  parallel_for(n, options.threads, [&](std::size_t i) {
    curve.samples[i].beta = solver.solve(curve.samples[i].q, options.tol);
  });

  auto& s = curve.samples;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    s[i].alpha = -(s[i + 1].beta - s[i - 1].beta) / (s[i + 1].q - s[i - 1].q);
  }
  // Second-order one-sided differences at the grid edges.
  s[0].alpha = -(-3.0 * s[0].beta + 4.0 * s[1].beta - s[2].beta) / (2.0 * h);
  s[n - 1].alpha = -(3.0 * s[n - 1].beta - 4.0 * s[n - 2].beta + s[n - 3].beta) / (2.0 * h);

  const auto qs = curve.q_values();
  const auto bs = curve.beta_values();
  parallel_for(n, options.threads, [&](std::size_t i) {
    s[i].beta_star = legendre(qs, bs, s[i].alpha).value;
  });

  std::size_t best = 1;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double v = s[i].beta + s[i].q * s[i].alpha;
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  curve.alpha_zero = s[best].alpha;
  curve.q_at_alpha_zero = s[best].q;
  curve.beta_star_max = legendre(qs, bs, curve.alpha_zero).value;
  return curve;
}

double alpha_of_q(const SpectrumCurve& curve, double q) {
  const auto& s = curve.samples;
  if (s.size() < 3) throw DomainError("alpha_of_q needs a curve with >= 3 samples");
  if (curve.degenerate) {
    if (q <= s.front().q || q >= s.back().q) throw DomainError("alpha_of_q: q at or beyond the grid edge");
    return s[1].alpha;
  }
  const double h = s[1].q - s[0].q;
  const double snap = 1e-9 * std::abs(h);
  if (q < s[1].q - snap || q > s[s.size() - 2].q + snap) {
    throw DomainError("alpha_of_q: q = " + std::to_string(q) +
                      " is not interior to the sampled grid");
  }
  auto it = std::lower_bound(s.begin(), s.end(), q - snap,
                             [](const SpectrumSample& a, double v) { return a.q < v; });
  std::size_t i = static_cast<std::size_t>(it - s.begin());
  if (std::abs(s[i].q - q) <= snap) {
    return -(s[i + 1].beta - s[i - 1].beta) / (s[i + 1].q - s[i - 1].q);
  }
  // q lies in (s[i-1].q, s[i].q), both interior.
  const double t = (q - s[i - 1].q) / (s[i].q - s[i - 1].q);
  return (1.0 - t) * s[i - 1].alpha + t * s[i].alpha;
}

std::vector<SpectrumPoint> hausdorff_spectrum_prediction(
    const SpectrumCurve& curve, std::span<const double> alpha_grid) {
  const auto qs = curve.q_values();
  const auto bs = curve.beta_values();
  std::vector<SpectrumPoint> out;
  out.reserve(alpha_grid.size());
  for (double a : alpha_grid) {
    SpectrumPoint p{a, std::nullopt};
    if (a >= curve.endpoints.alpha_minus - kEndpointTol &&
        a <= curve.endpoints.alpha_plus + kEndpointTol) {
      p.dim = curve.degenerate ? curve.beta_star_max : legendre(qs, bs, a).value;
    }
    out.push_back(p);
  }
  return out;
}

std::vector<SpectrumPoint> packing_spectrum_prediction(
    const SpectrumCurve& curve, std::span<const double> alpha_grid) {
  const auto qs = curve.q_values();
  const auto bs = curve.beta_values();
  std::vector<SpectrumPoint> out;
  out.reserve(alpha_grid.size());
  for (double a : alpha_grid) {
    SpectrumPoint p{a, std::nullopt};
    if (a >= curve.endpoints.alpha_minus - kEndpointTol &&
        a <= curve.endpoints.alpha_plus + kEndpointTol) {
      if (curve.degenerate || a <= curve.alpha_zero) {
        p.dim = curve.beta_star_max;
      } else {
        p.dim = legendre(qs, bs, a).value;
      }
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace holderspec
