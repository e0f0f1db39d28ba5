#pragma once

// Random expected utilities and the stochastic choice rules they induce.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "welfarelab/lottery.hpp"
#include "welfarelab/weights.hpp"

namespace welfarelab {

// How the mass of a utility that is indifferent among several maximizers is
// split. The choice is recorded in every ChoiceDistribution it produces.
enum class TieBreak { kUniform, kLexicographicFirst };

std::string_view to_string(TieBreak tb);
TieBreak parse_tie_break(std::string_view name);

struct Atom {
  VnmUtility utility;
  double weight;
};

// A random expected utility with finite support.
class AtomicReu {
 public:
  explicit AtomicReu(std::vector<Atom> atoms);

  static AtomicReu degenerate(VnmUtility u);

  std::size_t dimension() const noexcept { return atoms_.front().utility.size(); }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  // Weighted mean utility, E_pi[u].
  VnmUtility mean_utility() const;

 private:
  std::vector<Atom> atoms_;
};

// A random expected utility known through a deterministic draw function:
// the same (seed, index) always yields the same utility.
class SamplerReu {
 public:
  using DrawFn = std::function<VnmUtility(std::uint64_t seed, std::uint64_t index)>;

  SamplerReu(std::size_t dimension, DrawFn draw, std::string description = {});

  static SamplerReu degenerate(VnmUtility u);
  static SamplerReu from_atoms(const AtomicReu& pi);
  // mean + sd * N(0, 1) on every policy, then renormalized.
  static SamplerReu gaussian(VnmUtility mean, double sd);
  // mean + scale * standard Gumbel on every policy, then renormalized.
  static SamplerReu gumbel(VnmUtility mean, double scale);
  // Draws agent i with probability alpha_i, then that agent's utility.
  static SamplerReu mixture(std::vector<SamplerReu> agents, const Weights& alpha);

  std::size_t dimension() const noexcept { return dimension_; }
  const std::string& description() const noexcept { return description_; }

  VnmUtility draw(std::uint64_t seed, std::uint64_t index) const;

 private:
  std::size_t dimension_;
  DrawFn draw_;
  std::string description_;
};

class ChoiceDistribution {
 public:
  ChoiceDistribution(DecisionProblem menu, std::vector<double> probs,
                     std::optional<std::vector<double>> std_errors = std::nullopt,
                     std::optional<TieBreak> tie_break = std::nullopt);

  const DecisionProblem& menu() const noexcept { return menu_; }
  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t j) const { return probs_[j]; }
  const std::vector<double>& probs() const noexcept { return probs_; }
  const std::optional<std::vector<double>>& std_errors() const noexcept {
    return std_errors_;
  }
  const std::optional<TieBreak>& tie_break() const noexcept { return tie_break_; }

  // Indices with probability above kSupportTol.
  std::vector<std::size_t> support() const;

 private:
  DecisionProblem menu_;
  std::vector<double> probs_;
  std::optional<std::vector<double>> std_errors_;
  std::optional<TieBreak> tie_break_;
};

// Probabilities at or below this count as zero when reading supports.
inline constexpr double kSupportTol = 1e-12;

// Exact choice probabilities of a finite-support REU.
ChoiceDistribution atoms_choice_distribution(const AtomicReu& pi,
                                             const DecisionProblem& menu,
                                             TieBreak tb = TieBreak::kUniform);

// Monte Carlo choice frequencies with binomial standard errors
// sqrt(p(1-p)/N). Deterministic in (seed, samples) for any thread count.
ChoiceDistribution mc_choice_distribution(const SamplerReu& pi,
                                          const DecisionProblem& menu,
                                          std::uint64_t samples,
                                          std::uint64_t seed,
                                          TieBreak tb = TieBreak::kUniform,
                                          unsigned threads = 0);

// Mass of atoms whose maximizer on the menu is not unique.
double tie_probability(const AtomicReu& pi, const DecisionProblem& menu);

}  // namespace welfarelab
