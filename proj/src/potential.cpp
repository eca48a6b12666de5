#include "holderspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "holderspec/errors.hpp"

namespace holderspec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
  }
}

}  // namespace

Potential Potential::bernoulli(std::vector<double> log_weights) {
  if (log_weights.size() < 2 || log_weights.size() > kMaxAlphabet) {
    throw DomainError("bernoulli potential needs between 2 and 64 weights");
  }
  require_finite(log_weights, "bernoulli log weights");
  return Potential(Bernoulli{std::move(log_weights)});
}

Potential Potential::bernoulli_probabilities(const std::vector<double>& p) {
  std::vector<double> logs;
  logs.reserve(p.size());
  for (double x : p) {
    if (!(x > 0.0)) throw DomainError("probabilities must be positive");
    logs.push_back(std::log(x));
  }
  return bernoulli(std::move(logs));
}

Potential Potential::finite_range(std::size_t alphabet, std::size_t depth,
                                  std::vector<double> table) {
  if (depth == 0) throw DomainError("finite-range depth must be >= 1");
  const std::uint64_t expected = checked_word_count(alphabet, depth);
  if (table.size() != expected) {
    throw DomainError("finite-range table needs m^k = " +
                      std::to_string(expected) + " entries, got " +
                      std::to_string(table.size()));
  }
  require_finite(table, "finite-range table");
  return Potential(FiniteRange{alphabet, depth, std::move(table)});
}

Potential Potential::geometric(std::shared_ptr<const IfsSystem> ifs) {
  if (!ifs) throw DomainError("geometric potential needs a system");
  return Potential(Geometric{std::move(ifs)});
}

Potential Potential::combo(double a, std::shared_ptr<const IfsSystem> ifs,
                           double q, std::shared_ptr<const Potential> base,
                           double shift) {
  if (!std::isfinite(a) || !std::isfinite(q) || !std::isfinite(shift)) {
    throw DomainError("combo coefficients must be finite");
  }
  if (a != 0.0 && !ifs) throw DomainError("combo with a geometric part needs a system");
  if (q != 0.0 && !base) throw DomainError("combo with q != 0 needs a base potential");
  if (ifs && base && ifs->size() != base->alphabet_size()) {
    throw DomainError("combo parts disagree on the alphabet size");
  }
  if (!ifs && !base) throw DomainError("combo needs a system or a base potential");
  return Potential(Combo{a, std::move(ifs), q, std::move(base), shift});
}

Potential Potential::mixed_with_geometric(double beta,
                                          std::shared_ptr<const IfsSystem> ifs,
                                          double q) const {
  return combo(beta, std::move(ifs), q, std::make_shared<const Potential>(*this),
               0.0);
}

Potential Potential::shifted(double c) const {
  if (const auto* cb = std::get_if<Combo>(&kind_)) {
    Combo out = *cb;
    out.shift += c;
    return Potential(out);
  }
  std::shared_ptr<const IfsSystem> ifs;
  if (const auto* g = std::get_if<Geometric>(&kind_)) ifs = g->ifs;
  return combo(0.0, ifs, 1.0, std::make_shared<const Potential>(*this), c);
}

std::size_t Potential::alphabet_size() const {
  return std::visit(
      overloaded{
          [](const Bernoulli& b) { return b.log_weights.size(); },
          [](const FiniteRange& f) { return f.alphabet; },
          [](const Geometric& g) { return g.ifs->size(); },
          [](const Combo& c) {
            return c.ifs ? c.ifs->size() : c.base->alphabet_size();
          },
      },
      kind_);
}

double Potential::value(const Sequence& omega) const {
  return ergodic_sum(*this, omega, 1);
}

std::optional<std::vector<double>> Potential::first_symbol_values() const {
  return std::visit(
      overloaded{
          [](const Bernoulli& b) -> std::optional<std::vector<double>> {
            return b.log_weights;
          },
          [](const FiniteRange& f) -> std::optional<std::vector<double>> {
            if (f.depth == 1) return f.table;
            return std::nullopt;
          },
          [](const Geometric& g) -> std::optional<std::vector<double>> {
            if (!g.ifs->all_affine()) return std::nullopt;
            std::vector<double> out;
            for (const auto& m : g.ifs->maps()) out.push_back(std::log(m.coefficients().a));
            return out;
          },
          [this](const Combo& c) -> std::optional<std::vector<double>> {
            const std::size_t m = alphabet_size();
            std::vector<double> out(m, c.shift);
            if (c.a != 0.0) {
              auto g = Potential::geometric(c.ifs).first_symbol_values();
              if (!g) return std::nullopt;
              for (std::size_t i = 0; i < m; ++i) out[i] += c.a * (*g)[i];
            }
            if (c.q != 0.0) {
              auto b = c.base->first_symbol_values();
              if (!b) return std::nullopt;
              for (std::size_t i = 0; i < m; ++i) out[i] += c.q * (*b)[i];
            }
            return out;
          },
      },
      kind_);
}

std::optional<std::size_t> Potential::locality() const {
  return std::visit(
      overloaded{
          [](const Bernoulli&) -> std::optional<std::size_t> { return 1; },
          [](const FiniteRange& f) -> std::optional<std::size_t> { return f.depth; },
          [](const Geometric& g) -> std::optional<std::size_t> {
            if (g.ifs->all_affine()) return 1;
            return std::nullopt;
          },
          [](const Combo& c) -> std::optional<std::size_t> {
            std::size_t k = 1;
            if (c.a != 0.0) {
              auto g = Potential::geometric(c.ifs).locality();
              if (!g) return std::nullopt;
              k = std::max(k, *g);
            }
            if (c.q != 0.0) {
              auto b = c.base->locality();
              if (!b) return std::nullopt;
              k = std::max(k, *b);
            }
            return k;
          },
      },
      kind_);
}

bool Potential::uses_geometry() const {
  if (std::holds_alternative<Geometric>(kind_)) return true;
  if (const auto* c = std::get_if<Combo>(&kind_)) {
    return c->a != 0.0 || (c->q != 0.0 && c->base->uses_geometry());
  }
  return false;
}

double ergodic_sum(const Potential& psi, const Sequence& omega, std::size_t n) {
  if (n == 0) throw DomainError("ergodic sums need n >= 1");
  if (omega.min_alphabet() > psi.alphabet_size()) {
    throw DomainError("sequence " + omega.str() +
                      " uses symbols outside the potential's alphabet");
  }
  return std::visit(
      overloaded{
          [&](const Potential::Bernoulli& b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += b.log_weights[omega.at(i)];
            return s;
          },
          [&](const Potential::FiniteRange& f) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              std::uint64_t idx = 0;
              for (std::size_t j = 0; j < f.depth; ++j) idx = idx * f.alphabet + omega.at(i + j);
              s += f.table[idx];
            }
            return s;
          },
          [&](const Potential::Geometric& g) {
            return g.ifs->geometric_sum_chain(omega, n);
          },
          [&](const Potential::Combo& c) {
            double s = c.shift * static_cast<double>(n);
            if (c.a != 0.0) s += c.a * c.ifs->geometric_sum_chain(omega, n);
            if (c.q != 0.0) s += c.q * ergodic_sum(*c.base, omega, n);
            return s;
          },
      },
      psi.kind());
}

double ergodic_sum(const Potential& psi, const PeriodicWord& w, std::size_t n) {
  return ergodic_sum(psi, Sequence(w), n);
}

double distortion_bound(const Potential& psi, const IfsSystem& ifs,
                        std::size_t n, std::size_t sample_budget,
                        std::uint64_t word_budget, std::uint64_t seed) {
  if (n == 0) throw DomainError("distortion_bound needs n >= 1");
  const std::size_t m = ifs.size();
  if (psi.alphabet_size() != m) throw DomainError("potential and system alphabets differ");

  std::mt19937_64 rng(seed);
  std::vector<PeriodicWord> continuations;
  continuations.emplace_back(Word{0});
  continuations.emplace_back(Word::constant(static_cast<Symbol>(m - 1), 1));
  std::uniform_int_distribution<int> letter(0, static_cast<int>(m) - 1);
  std::uniform_int_distribution<int> period_len(1, 6);
  for (std::size_t i = 0; i < sample_budget; ++i) {
    Word p;
    const int len = period_len(rng);
    for (int j = 0; j < len; ++j) p.push_back(static_cast<Symbol>(letter(rng)));
    continuations.emplace_back(std::move(p));
  }

  std::vector<Word> words;
  bool exhaustive = true;
  try {
    (void)checked_word_count(m, n, word_budget);
  } catch (const CapacityError&) {
    exhaustive = false;
  }
  if (exhaustive) {
    for_each_word(m, n, [&](const Word& w) { words.push_back(w); });
  } else {
    for (std::uint64_t i = 0; i < word_budget; ++i) {
      Word w;
      for (std::size_t j = 0; j < n; ++j) w.push_back(static_cast<Symbol>(letter(rng)));
      words.push_back(std::move(w));
    }
  }

  double worst = 0.0;
  std::vector<double> sums(continuations.size());
  for (const Word& w : words) {
    for (std::size_t c = 0; c < continuations.size(); ++c) {
      sums[c] = ergodic_sum(psi, Sequence(w, continuations[c]), n);
    }
    const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
    worst = std::max(worst, *hi - *lo);
  }
  return worst;
}

}  // namespace holderspec
