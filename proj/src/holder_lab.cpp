#include "holderspec/holder_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holderspec/errors.hpp"
#include "holderspec/parallel.hpp"
#include "holderspec/thermodynamics.hpp"

namespace holderspec {

namespace {

constexpr double kTauThreshold = 1e-6;
constexpr double kProbeErrorRatio = 1e-6;
constexpr double kFiniteSpread = 1e-6;
constexpr double kTrendFactor = 10.0;
constexpr double kDivergence = 1e6;
constexpr double kDetrendTol = 0.05;
constexpr double kDecayRate = 0.05;
constexpr int kDetrendSamples = 8;

void require_odd_k(int k) {
  if (k < 1 || k % 2 == 0) throw DomainError("k must be an odd positive integer, got " + std::to_string(k));
}

double cdf(const DistributionFunction& F, double x) {
  return cdf_eval(F, x, false, 0.0).value;
}

// Index from which omega is constantly `s`, or nullopt.
std::optional<std::size_t> constant_tail_start(const Sequence& omega, Symbol s) {
  if (!omega.ends_in_constant(s, omega.head().size())) return std::nullopt;
  std::size_t start = omega.head().size();
  while (start > 0 && omega.head()[start - 1] == s) --start;
  return start;
}

}  // namespace

SecantSlope secant_slope(const DistributionFunction& F, double s, double x,
                         double t, int k) {
  require_odd_k(k);
  if (!(s < x && x < t)) throw DomainError("secant slope needs s < x < t");
  if (t - s < kWidthFloor) throw DegenerateError("secant interval below the precision floor");
  const double fs = cdf(F, s);
  const double fx = cdf(F, x);
  const double ft = cdf(F, t);
  SecantSlope out;
  out.total = (ft - fs) / std::pow(t - s, k);
  const double r = (t - x) / (t - s);
  const double right = std::pow(r, k) * (ft - fx) / std::pow(t - x, k);
  const double left = std::pow(1.0 - r, k) * (fs - fx) / std::pow(s - x, k);
  const double scale = std::max({1.0, std::abs(out.total), std::abs(right), std::abs(left)});
  out.decomposition_check = std::abs(out.total - (right + left)) / scale;
  return out;
}

SlopeProbe slope_probe(const DistributionFunction& F, const Sequence& omega,
                       int k, std::size_t n_max) {
  require_odd_k(k);
  const IfsSystem& ifs = F.ifs();
  SlopeProbe probe;
  probe.k = k;
  probe.x = ifs.coding_point(omega);
  for (std::size_t n = 1; n <= n_max; ++n) {
    Interval cyl;
    try {
      cyl = ifs.cylinder_interval(omega.prefix(n));
    } catch (const PrecisionError&) {
      break;
    }
    probe.omega_prefix = omega.prefix(n);
    SlopeRecord rec;
    rec.n = n;
    rec.s_n = cyl.lo;
    rec.t_n = cyl.hi;
    rec.slope_k = (cdf(F, cyl.hi) - cdf(F, cyl.lo)) / std::pow(cyl.width(), k);
    rec.r = std::clamp((cyl.hi - probe.x) / cyl.width(), 0.0, 1.0);
    rec.weight = std::pow(rec.r, k) + std::pow(1.0 - rec.r, k);
    probe.records.push_back(rec);
  }
  return probe;
}

TauBlock find_tau_block(const IfsSystem& ifs, const Potential& psi, int k,
                        std::size_t ell_max) {
  require_odd_k(k);
  const std::size_t m = ifs.size();
  for (std::size_t ell = 2; ell <= ell_max; ++ell) {
    WordEnumerator words(m, ell);
    Word w;
    while (words.next(w)) {
      if (w.distinct_letters() < 2) continue;
      const PeriodicWord pw(w);
      const double value = ergodic_sum(psi, pw, ell) -
                           static_cast<double>(k) * ifs.geometric_sum_chain(Sequence(pw), ell);
      if (std::abs(value) > kTauThreshold) return {w, value};
    }
  }
  throw NotFoundError("no tau block with two distinct letters and nonzero S_l(psi - " +
                      std::to_string(k) + " phi) up to length " + std::to_string(ell_max) +
                      "; psi looks cohomologous to k phi");
}

Interval perturbed_cylinder(const IfsSystem& ifs, const Word& omega_prefix,
                            const Word& tau, std::size_t N) {
  return ifs.cylinder_interval(omega_prefix + tau.repeated(N));
}

std::vector<std::size_t> admissible_depths(const Sequence& omega, const Word& tau,
                                           std::size_t n_min, std::size_t n_max) {
  if (tau.empty()) throw DomainError("tau must be nonempty");
  std::vector<std::size_t> out;
  const auto start = constant_tail_start(omega, tau[0]);
  for (std::size_t n = n_min; n <= n_max; ++n) {
    if (start ? n >= *start : omega.at(n) != tau[0]) out.push_back(n);
  }
  return out;
}

Separator find_separator(const IfsSystem& ifs, const Sequence& omega,
                         std::size_t n, const Word& tau, std::size_t N) {
  if (tau.distinct_letters() < 2) throw DomainError("tau needs two distinct letters");
  const std::size_t ell = tau.size();
  const Symbol t1 = tau[0];
  std::size_t j = 0;
  while (tau[j] == t1) ++j;

  Separator sep;
  const Word prefix = omega.prefix(n);
  sep.word = prefix;
  if (const auto start = constant_tail_start(omega, t1)) {
    if (n < *start) {
      throw NotFoundError("depth " + std::to_string(n) + " precedes the constant tail of " +
                          omega.str());
    }
    sep.case_id = 1;
    sep.word += Word::constant(t1, j + 1);
    sep.word.push_back(tau[j]);
  } else {
    const Symbol next = omega.at(n);
    if (next == t1) {
      throw NotFoundError("depth " + std::to_string(n) + " is not admissible: omega_{n+1} = tau_1");
    }
    sep.case_id = 2;
    sep.word.push_back(t1);
    const Symbol filler = next < t1 ? Symbol{0} : static_cast<Symbol>(ifs.size() - 1);
    sep.word += Word::constant(filler, ell);
  }

  const double x = ifs.coding_point(omega);
  sep.interval = ifs.cylinder_interval(sep.word);
  sep.perturbed = perturbed_cylinder(ifs, prefix, tau, N);
  sep.perturbed_right = sep.perturbed.lo > x;
  const bool between = sep.perturbed_right
                           ? (x < sep.interval.lo && sep.interval.hi < sep.perturbed.lo)
                           : (sep.perturbed.hi < sep.interval.lo && sep.interval.hi < x);
  const double bound = ifs.cylinder_interval(prefix).width() *
                       std::pow(ifs.r_min(), static_cast<double>(ell + 1));
  const bool wide_enough = sep.interval.width() >= bound * (1.0 - 1e-9);
  if (!between || !wide_enough) {
    throw NotFoundError("separator " + sep.word.str() + " fails the geometric check at depth " +
                        std::to_string(n) + " with N = " + std::to_string(N));
  }
  return sep;
}

PerturbationExperiment ratio_scaling_experiment(
    const DistributionFunction& F, const Sequence& omega, const Word& tau, int k,
    const std::vector<std::size_t>& n_set, std::size_t N_min, std::size_t N_max,
    unsigned threads) {
  require_odd_k(k);
  if (n_set.empty()) throw DegenerateError("scaling experiment needs admissible depths");
  if (N_max <= N_min) throw DomainError("scaling experiment needs N_min < N_max");
  const IfsSystem& ifs = F.ifs();

  PerturbationExperiment ex;
  ex.tau = tau;
  ex.ell = tau.size();
  ex.k = k;
  ex.N_min = N_min;
  ex.N_max = N_max;
  ex.n_set = n_set;
  const PeriodicWord tau_bar(tau);
  const double s_phi = ifs.geometric_sum_chain(Sequence(tau_bar), ex.ell);
  ex.expected_log_r_slope = -s_phi;
  ex.expected_log_slope_slope =
      ergodic_sum(F.psi(), tau_bar, ex.ell) - static_cast<double>(k) * s_phi;

  const double x = ifs.coding_point(omega);
  const std::size_t per_n = N_max - N_min + 1;
  ex.records.resize(n_set.size() * per_n);
  parallel_for(ex.records.size(), threads, [&](std::size_t idx) {
    auto& rec = ex.records[idx];
    rec.n = n_set[idx / per_n];
    rec.N = N_min + idx % per_n;
    const Interval p = perturbed_cylinder(ifs, omega.prefix(rec.n), tau, rec.N);
    rec.s_nN = p.lo;
    rec.t_nN = p.hi;
    rec.r_nN = (p.hi - x) / p.width();
    rec.slope_k = (cdf(F, p.hi) - cdf(F, p.lo)) / std::pow(p.width(), k);
    try {
      const Separator sep = find_separator(ifs, omega, rec.n, tau, rec.N);
      rec.separated = true;
      rec.separator = sep.word;
      rec.separator_case = sep.case_id;
    } catch (const NotFoundError&) {
      rec.separated = false;
    }
  });

  std::vector<double> xs(per_n), yr(per_n), ys(per_n);
  double sum_r = 0.0, sum_s = 0.0;
  for (std::size_t i = 0; i < n_set.size(); ++i) {
    const auto* row = &ex.records[i * per_n];
    for (std::size_t c = 0; c < per_n; ++c) {
      xs[c] = static_cast<double>(row[c].N);
      yr[c] = std::log(std::abs(row[c].r_nN));
      ys[c] = std::log(row[c].slope_k);
    }
    sum_r += least_squares_slope(xs, yr);
    sum_s += least_squares_slope(xs, ys);
    const double base = ys[0];
    for (std::size_t c = 0; c < per_n; ++c) {
      ex.records[i * per_n + c].residual =
          ys[c] - base - static_cast<double>(c) * ex.expected_log_slope_slope;
    }
  }
  ex.fitted_log_r_slope = sum_r / static_cast<double>(n_set.size());
  ex.fitted_log_slope_slope = sum_s / static_cast<double>(n_set.size());

  ex.residual_spread.assign(per_n, 0.0);
  for (std::size_t c = 0; c < per_n; ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n_set.size(); ++i) {
      lo = std::min(lo, ex.records[i * per_n + c].residual);
      hi = std::max(hi, ex.records[i * per_n + c].residual);
    }
    ex.residual_spread[c] = hi - lo;
    ex.max_residual_spread = std::max(ex.max_residual_spread, hi - lo);
  }
  return ex;
}

std::string to_string(LimitClass c) {
  switch (c) {
    case LimitClass::tends_to_zero: return "tends_to_zero";
    case LimitClass::tends_to_infinity: return "tends_to_infinity";
    case LimitClass::oscillates: return "oscillates";
    case LimitClass::finite_limit: return "finite_limit";
  }
  return "unknown";
}

DerivativeProbe derivative_limit_probe(const DistributionFunction& F,
                                       const Sequence& omega, int k,
                                       std::size_t n_max, std::size_t ell_max) {
  require_odd_k(k);
  const IfsSystem& ifs = F.ifs();
  DerivativeProbe probe;
  probe.k = k;
  probe.x = ifs.coding_point(omega);
  const CdfValue fx = cdf_eval(F, probe.x, false, 0.0);

  const auto diag = cohomology_diagnostic(ifs, F.psi(), ell_max);
  probe.degenerate = diag.degenerate;
  probe.hypothesis_violated =
      diag.degenerate && std::abs(diag.ratio_mid() - static_cast<double>(k)) < 1e-6;

  bool stop = false;
  for (std::size_t n = 1; n <= n_max && !stop; ++n) {
    Interval cyl;
    try {
      cyl = ifs.cylinder_interval(omega.prefix(n));
    } catch (const PrecisionError&) {
      break;
    }
    for (double y : {cyl.lo, cyl.hi}) {
      if (std::abs(y - probe.x) <= 1e-9 * cyl.width()) continue;
      const CdfValue fy = cdf_eval(F, y, false, 0.0);
      const double diff = fy.value - fx.value;
      if (fy.error_bound + fx.error_bound > kProbeErrorRatio * std::abs(diff)) {
        stop = true;
        break;
      }
      const double ratio = diff / std::pow(y - probe.x, k);
      if (!(ratio > 0.0)) continue;
      probe.depths.push_back(n);
      probe.ratios.push_back(ratio);
    }
  }
  const std::size_t count = probe.ratios.size();
  if (count < 4) {
    throw DegenerateError("derivative probe: only " + std::to_string(count) +
                          " usable difference quotients before the precision floor");
  }

  const std::size_t begin = count / 2;
  std::vector<double> ns, logs;
  probe.range_lo = std::numeric_limits<double>::infinity();
  probe.range_hi = -probe.range_lo;
  for (std::size_t i = begin; i < count; ++i) {
    probe.range_lo = std::min(probe.range_lo, probe.ratios[i]);
    probe.range_hi = std::max(probe.range_hi, probe.ratios[i]);
    ns.push_back(static_cast<double>(probe.depths[i]));
    logs.push_back(std::log(probe.ratios[i]));
  }
  if (probe.range_hi - probe.range_lo <= kFiniteSpread * probe.range_hi) {
    probe.classification = LimitClass::finite_limit;
    probe.limit = probe.ratios.back();
    return probe;
  }
  const double span = ns.back() - ns.front();
  const double slope = span > 0.0 ? least_squares_slope(ns, logs) : 0.0;
  const double factor = std::exp(std::abs(slope) * span);
  if (slope < 0.0 && factor > kTrendFactor) {
    probe.classification = LimitClass::tends_to_zero;
  } else if (slope > 0.0 && factor > kTrendFactor && probe.range_hi > kDivergence) {
    probe.classification = LimitClass::tends_to_infinity;
  } else {
    probe.classification = LimitClass::oscillates;
  }
  return probe;
}

DetrendResult detrend_exponent_test(const DistributionFunction& F, double t0,
                                    double alpha_hat, const HolderScales& scales,
                                    int degree_max) {
  if (!(scales.base > 1.0) || scales.j_min >= scales.j_max) {
    throw DomainError("detrend scales need base > 1 and j_min < j_max");
  }
  DetrendResult res;
  res.t0 = t0;
  res.alpha_hat = alpha_hat;
  res.degree_max = degree_max >= 0 ? degree_max
                                   : static_cast<int>(std::floor(alpha_hat + kDetrendTol));
  const auto diag = cohomology_diagnostic(F.ifs(), F.psi(), 6);
  res.degenerate = diag.degenerate;
  res.hypothesis_violated = diag.degenerate;
  if (res.degree_max < 1) {
    res.skipped = true;
    res.pass = true;
    return res;
  }

  const double f0 = cdf(F, t0);
  std::vector<double> log_h, log_v;
  for (int j = scales.j_min; j <= scales.j_max; ++j) {
    const double h = std::pow(scales.base, -j);
    std::vector<double> us, dfs;
    for (int c = 1; c <= kDetrendSamples; ++c) {
      const double u = h * c / kDetrendSamples;
      for (double sgn : {-1.0, 1.0}) {
        us.push_back(sgn * u);
        dfs.push_back(cdf(F, t0 + sgn * u) - f0);
      }
    }
    DetrendWindow win;
    win.half_width = h;
    for (int d = 1; d <= res.degree_max; ++d) {
      double num = 0.0, den = 0.0;
      for (std::size_t i = 0; i < us.size(); ++i) {
        const double p = std::pow(us[i], d);
        num += dfs[i] * p;
        den += p * p;
      }
      win.coefficients.push_back(num / den);
    }
    res.windows.push_back(std::move(win));
    const double v = std::max(std::abs(cdf(F, t0 + h) - f0), std::abs(f0 - cdf(F, t0 - h)));
    if (v > 0.0) {
      log_h.push_back(std::log(h));
      log_v.push_back(std::log(v));
    }
  }

  bool all_decay = true;
  for (int d = 0; d < res.degree_max; ++d) {
    bool monotone = true;
    std::vector<double> xs, ys;
    for (std::size_t w = 0; w < res.windows.size(); ++w) {
      const double a = std::abs(res.windows[w].coefficients[d]);
      if (w > 0) {
        const double prev = std::abs(res.windows[w - 1].coefficients[d]);
        if (a > prev * (1.0 + 1e-9)) monotone = false;
      }
      if (a > 0.0) {
        xs.push_back(std::log(res.windows[w].half_width));
        ys.push_back(std::log(a));
      }
    }
    // Identically vanishing coefficients decay trivially.
    const double rate = xs.size() >= 2 ? least_squares_slope(xs, ys)
                                       : std::numeric_limits<double>::infinity();
    res.coefficient_rates.push_back(rate);
    const bool decays = monotone && rate > kDecayRate;
    res.coefficient_decays.push_back(decays);
    all_decay = all_decay && decays;
  }

  if (log_h.size() < 2) throw DegenerateError("detrend test: residual vanishes at every scale");
  const std::size_t w = std::min<std::size_t>(scales.window, log_h.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + w <= log_h.size(); ++i) {
    best = std::min(best, least_squares_slope(std::span(log_h).subspan(i, w),
                                              std::span(log_v).subspan(i, w)));
  }
  res.residual_exponent = best;
  res.pass = all_decay && std::abs(best - alpha_hat) <= kDetrendTol && !res.hypothesis_violated;
  return res;
}

}  // namespace holderspec
