#pragma once

// Hölder potentials on the full shift and their ergodic sums.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "holderspec/ifs.hpp"
#include "holderspec/symbolic.hpp"

namespace holderspec {

class Potential {
 public:
  // psi(omega) = log_weights[omega_1].
  struct Bernoulli {
    std::vector<double> log_weights;
  };
  // psi(omega) = table[index(omega_1 ... omega_k)], base-m index with
  // omega_1 most significant.
  struct FiniteRange {
    std::size_t alphabet = 0;
    std::size_t depth = 0;
    std::vector<double> table;
  };
  // The geometric potential of the attached system.
  struct Geometric {
    std::shared_ptr<const IfsSystem> ifs;
  };
  // a * phi + q * base + shift, where phi is the geometric potential of
  // `ifs` (may be null when a == 0) and `base` may be null when q == 0.
  struct Combo {
    double a = 0.0;
    std::shared_ptr<const IfsSystem> ifs;
    double q = 0.0;
    std::shared_ptr<const Potential> base;
    double shift = 0.0;
  };

  static Potential bernoulli(std::vector<double> log_weights);
  // Bernoulli potential log p_i of a probability vector.
  static Potential bernoulli_probabilities(const std::vector<double>& p);
  static Potential finite_range(std::size_t alphabet, std::size_t depth,
                                std::vector<double> table);
  static Potential geometric(std::shared_ptr<const IfsSystem> ifs);
  static Potential combo(double a, std::shared_ptr<const IfsSystem> ifs,
                         double q, std::shared_ptr<const Potential> base,
                         double shift);

  // beta * phi + q * (*this).
  Potential mixed_with_geometric(double beta,
                                 std::shared_ptr<const IfsSystem> ifs,
                                 double q) const;
  // *this + c.
  Potential shifted(double c) const;

  const auto& kind() const { return kind_; }
  std::size_t alphabet_size() const;

  // psi(omega).
  double value(const Sequence& omega) const;

  // Values psi_i when psi depends on the first symbol only (Bernoulli,
  // affine geometric, and combinations of these); nullopt otherwise.
  std::optional<std::vector<double>> first_symbol_values() const;

  // Number of leading symbols psi depends on; nullopt for potentials
  // depending on the whole sequence (anything involving a non-affine
  // geometric part).
  std::optional<std::size_t> locality() const;

  // True when the potential involves the geometric potential of a system.
  bool uses_geometry() const;

 private:
  using Kind = std::variant<Bernoulli, FiniteRange, Geometric, Combo>;
  explicit Potential(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

// S_n psi(omega) = sum_{k<n} psi(sigma^k omega).
double ergodic_sum(const Potential& psi, const Sequence& omega, std::size_t n);
double ergodic_sum(const Potential& psi, const PeriodicWord& w, std::size_t n);

// Empirical sup of |S_n psi(w rho) - S_n psi(w tau)| over length-n words w
// and continuation pairs (rho, tau). The continuations always include the
// constant sequences 0-bar and (m-1)-bar; `sample_budget` further random
// periodic continuations are drawn from a fixed-seed generator. All words
// are visited when m^n <= word_budget, otherwise a fixed-seed sample.
double distortion_bound(const Potential& psi, const IfsSystem& ifs,
                        std::size_t n, std::size_t sample_budget,
                        std::uint64_t word_budget = 4096,
                        std::uint64_t seed = 0x5eed);

}  // namespace holderspec
