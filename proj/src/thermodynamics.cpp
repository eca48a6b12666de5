#include "holderspec/thermodynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holderspec/errors.hpp"
#include "holderspec/parallel.hpp"

namespace holderspec {

namespace {

void check_alphabets(const IfsSystem& ifs, const Potential& psi) {
  if (psi.alphabet_size() != ifs.size()) {
    throw DomainError("potential alphabet (" + std::to_string(psi.alphabet_size()) +
                      ") differs from the number of maps (" +
                      std::to_string(ifs.size()) + ")");
  }
}

std::vector<double> potential_sums(const IfsSystem& ifs, const Potential& psi,
                                   std::size_t k, unsigned threads = 1) {
  check_alphabets(ifs, psi);
  const std::size_t m = ifs.size();
  const std::uint64_t count = checked_word_count(m, k);
  std::vector<double> out(count);
  parallel_for(count, threads, [&](std::size_t i) {
    out[i] = ergodic_sum(psi, PeriodicWord(word_from_index(i, m, k)), k);
  });
  return out;
}

std::vector<double> normalized_weights(std::vector<double> log_w) {
  const double lse = log_sum_exp(log_w);
  for (double& v : log_w) v = std::exp(v - lse);
  return log_w;
}

// Largest level whose word count stays within a practical table size.
std::size_t feasible_depth(std::size_t alphabet, std::size_t wanted) {
  std::size_t k = 1;
  std::uint64_t count = alphabet;
  while (k < wanted && count * alphabet <= (std::uint64_t{1} << 20)) {
    count *= alphabet;
    ++k;
  }
  return k;
}

}  // namespace

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double mx = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(mx)) return mx;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - mx);
  return mx + std::log(sum);
}

LevelSums level_sums(const IfsSystem& ifs, const Potential& psi, std::size_t k,
                     unsigned threads) {
  if (k == 0) throw DomainError("level_sums needs k >= 1");
  check_alphabets(ifs, psi);
  const std::size_t m = ifs.size();
  const std::uint64_t count = checked_word_count(m, k);
  LevelSums out{m, k, std::vector<double>(count), std::vector<double>(count)};
  parallel_for(count, threads, [&](std::size_t i) {
    const Sequence w(PeriodicWord(word_from_index(i, m, k)));
    out.geometric[i] = ifs.geometric_sum_chain(w, k);
    out.potential[i] = ergodic_sum(psi, w, k);
  });
  return out;
}

double pressure_at_level(const IfsSystem& ifs, const Potential& psi,
                         std::size_t k) {
  if (k == 0) throw DomainError("pressure_at_level needs k >= 1");
  const auto sums = potential_sums(ifs, psi, k);
  return log_sum_exp(sums) / static_cast<double>(k);
}

PressureEstimate pressure(const IfsSystem& ifs, const Potential& psi,
                          std::size_t k_max, double tol) {
  if (k_max < 2) throw DomainError("pressure needs k_max >= 2");
  check_alphabets(ifs, psi);
  if (auto first = psi.first_symbol_values()) {
    return {log_sum_exp(*first), 0.0, 1};
  }
  checked_word_count(ifs.size(), k_max);
  // Increments d_k = log Z_k - log Z_{k-1} approach the pressure with a
  // geometric error; Aitken's delta-squared removes the leading term.
  std::vector<double> inc;
  std::vector<double> acc;
  double log_z_prev = 0.0;
  PressureEstimate est;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double log_z = log_sum_exp(potential_sums(ifs, psi, k));
    inc.push_back(log_z - log_z_prev);
    log_z_prev = log_z;
    const std::size_t n = inc.size();
    if (n >= 3) {
      const double d1 = inc[n - 1] - inc[n - 2];
      const double d2 = inc[n - 1] - 2.0 * inc[n - 2] + inc[n - 3];
      acc.push_back(d2 != 0.0 ? inc[n - 1] - d1 * d1 / d2 : inc[n - 1]);
    }
    if (n < 2) continue;
    const double plain_change = std::abs(inc[n - 1] - inc[n - 2]);
    est.depth_used = k;
    est.value = inc[n - 1];
    est.error_bound = plain_change;
    if (acc.size() >= 2) {
      const double acc_change = std::abs(acc.back() - acc[acc.size() - 2]);
      if (acc_change < plain_change) {
        est.value = acc.back();
        est.error_bound = acc_change;
      }
    }
    if (k >= 3 && est.error_bound < tol) break;
  }
  return est;
}

Potential normalize(const Potential& psi, const IfsSystem& ifs,
                    std::size_t k_max) {
  const auto p = pressure(ifs, psi, k_max);
  return psi.shifted(-p.value);
}

double GibbsWeights::weight(const Word& w) const {
  if (w.size() != depth) throw DomainError("weight lookup needs a word of the table depth");
  return weights.at(word_index(w, alphabet));
}

GibbsWeights gibbs_cylinder_weights(const IfsSystem& ifs, const Potential& psi,
                                    std::size_t n) {
  if (n == 0) throw DomainError("gibbs weights need n >= 1");
  check_alphabets(ifs, psi);
  const std::size_t m = ifs.size();
  const auto first = psi.first_symbol_values();

  const std::size_t check_depth =
      std::max<std::size_t>(2, feasible_depth(m, std::max(n, kDefaultPressureDepth)));
  const auto p = pressure(ifs, psi, check_depth);
  if (std::abs(p.value) >= kNormalizedPressureTol) {
    throw PreconditionError("gibbs weights need a normalized potential; P(psi) = " +
                            std::to_string(p.value));
  }

  GibbsWeights out{m, n, normalized_weights(potential_sums(ifs, psi, n)), 1.0};
  if (!first) {
    std::vector<double> coarse = normalized_weights(potential_sums(ifs, psi, 1));
    double worst = 1.0;
    for (std::size_t d = 1; d <= n; ++d) {
      std::vector<double> fine = normalized_weights(potential_sums(ifs, psi, d + 1));
      worst = std::max(worst, gibbs_consistency_check(GibbsWeights{m, d, coarse, 1.0},
                                                      GibbsWeights{m, d + 1, fine, 1.0}));
      coarse = std::move(fine);
    }
    out.gibbs_constant_estimate = worst;
  }
  return out;
}

double gibbs_consistency_check(const GibbsWeights& coarse,
                               const GibbsWeights& fine) {
  if (coarse.alphabet != fine.alphabet || fine.depth != coarse.depth + 1) {
    throw DomainError("consistency check needs tables of depths n and n+1 "
                      "over the same alphabet");
  }
  const std::size_t m = coarse.alphabet;
  double worst = 1.0;
  for (std::size_t i = 0; i < coarse.weights.size(); ++i) {
    double children = 0.0;
    for (std::size_t j = 0; j < m; ++j) children += fine.weights[i * m + j];
    const double ratio = coarse.weights[i] / children;
    worst = std::max({worst, ratio, 1.0 / ratio});
  }
  return worst;
}

bool CohomologyDiagnostic::cohomologous_to_geometric() const {
  return degenerate && std::abs(ratio_mid() - 1.0) < 1e-6;
}

CohomologyDiagnostic cohomology_diagnostic(const IfsSystem& ifs,
                                           const Potential& psi,
                                           std::size_t ell_max) {
  if (ell_max == 0) throw DomainError("cohomology_diagnostic needs ell_max >= 1");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t ell = 1; ell <= ell_max; ++ell) {
    const LevelSums sums = level_sums(ifs, psi, ell);
    for (std::size_t i = 0; i < sums.potential.size(); ++i) {
      const double r = sums.potential[i] / sums.geometric[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  return {lo, hi, hi - lo < kDegeneracyThreshold};
}

}  // namespace holderspec
