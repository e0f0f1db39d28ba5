#include "welfarelab/reu.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "welfarelab/errors.hpp"
#include "welfarelab/random.hpp"

namespace welfarelab {

namespace {

constexpr std::uint64_t kMixtureStream = 0x6d697874757265ULL;

void check_dimension(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                "utility dimension " + std::to_string(a) + " vs menu dimension " +
                    std::to_string(b));
  }
}

// Index into `weights` (summing to ~1) selected by a uniform draw.
std::size_t pick_index(std::span<const double> weights, double u) {
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    cumulative += weights[i];
    if (u < cumulative) return i;
  }
  return weights.size() - 1;
}

}  // namespace

std::string_view to_string(TieBreak tb) {
  switch (tb) {
    case TieBreak::kUniform: return "uniform";
    case TieBreak::kLexicographicFirst: return "lexicographic";
  }
  return "uniform";
}

TieBreak parse_tie_break(std::string_view name) {
  if (name == "uniform") return TieBreak::kUniform;
  if (name == "lexicographic") return TieBreak::kLexicographicFirst;
  throw Error(ErrorCode::kSchemaError,
              "unknown tie-break rule '" + std::string(name) + "'");
}

AtomicReu::AtomicReu(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "random utility has no atoms");
  }
  double total = 0.0;
  for (const Atom& a : atoms_) {
    check_dimension(a.utility.size(), atoms_.front().utility.size());
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
      throw Error(ErrorCode::kNegativeMass,
                  "atom weight " + std::to_string(a.weight) + " is not positive");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kSumNotOne, "atom weights sum to " + std::to_string(total));
  }
}

AtomicReu AtomicReu::degenerate(VnmUtility u) {
  return AtomicReu({Atom{std::move(u), 1.0}});
}

VnmUtility AtomicReu::mean_utility() const {
  std::vector<double> mean(dimension(), 0.0);
  for (const Atom& a : atoms_) {
    for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += a.weight * a.utility[k];
  }
  return VnmUtility(std::move(mean));
}

SamplerReu::SamplerReu(std::size_t dimension, DrawFn draw, std::string description)
    : dimension_(dimension), draw_(std::move(draw)), description_(std::move(description)) {
  if (dimension_ == 0 || !draw_) {
    throw Error(ErrorCode::kInvalidArgument, "sampler needs a dimension and a draw function");
  }
}

VnmUtility SamplerReu::draw(std::uint64_t seed, std::uint64_t index) const {
  VnmUtility u = draw_(seed, index);
  check_dimension(u.size(), dimension_);
  return u;
}

SamplerReu SamplerReu::degenerate(VnmUtility u) {
  const std::size_t dim = u.size();
  return SamplerReu(
      dim, [u = std::move(u)](std::uint64_t, std::uint64_t) { return u; },
      "degenerate");
}

SamplerReu SamplerReu::from_atoms(const AtomicReu& pi) {
  std::vector<double> weights;
  for (const Atom& a : pi.atoms()) weights.push_back(a.weight);
  return SamplerReu(
      pi.dimension(),
      [pi, weights](std::uint64_t seed, std::uint64_t index) {
        CounterRng rng(seed, index);
        return pi.atoms()[pick_index(weights, rng.uniform_open())].utility;
      },
      "atoms");
}

SamplerReu SamplerReu::gaussian(VnmUtility mean, double sd) {
  if (!(sd >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "negative sd");
  const std::size_t dim = mean.size();
  return SamplerReu(
      dim,
      [mean = std::move(mean), sd](std::uint64_t seed, std::uint64_t index) {
        CounterRng rng(seed, index);
        std::normal_distribution<double> normal(0.0, sd);
        std::vector<double> u(mean.values().begin(), mean.values().end());
        for (double& v : u) v += normal(rng);
        return VnmUtility(std::move(u));
      },
      "gaussian");
}

SamplerReu SamplerReu::gumbel(VnmUtility mean, double scale) {
  if (!(scale >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "negative scale");
  const std::size_t dim = mean.size();
  return SamplerReu(
      dim,
      [mean = std::move(mean), scale](std::uint64_t seed, std::uint64_t index) {
        CounterRng rng(seed, index);
        std::vector<double> u(mean.values().begin(), mean.values().end());
        for (double& v : u) v += -scale * std::log(-std::log(rng.uniform_open()));
        return VnmUtility(std::move(u));
      },
      "gumbel");
}

SamplerReu SamplerReu::mixture(std::vector<SamplerReu> agents, const Weights& alpha) {
  if (agents.empty() || agents.size() != alpha.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "mixture needs one weight per agent");
  }
  const std::size_t dim = agents.front().dimension();
  for (const auto& a : agents) check_dimension(a.dimension(), dim);
  std::vector<double> w(alpha.values().begin(), alpha.values().end());
  return SamplerReu(
      dim,
      [agents = std::move(agents), w](std::uint64_t seed, std::uint64_t index) {
        CounterRng rng(derive_seed(seed, kMixtureStream), index);
        const std::size_t i = pick_index(w, rng.uniform_open());
        return agents[i].draw(derive_seed(seed, i), index);
      },
      "mixture");
}

ChoiceDistribution::ChoiceDistribution(DecisionProblem menu, std::vector<double> probs,
                                       std::optional<std::vector<double>> std_errors,
                                       std::optional<TieBreak> tie_break)
    : menu_(std::move(menu)),
      probs_(std::move(probs)),
      std_errors_(std::move(std_errors)),
      tie_break_(tie_break) {
  if (probs_.size() != menu_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "choice row has " + std::to_string(probs_.size()) +
                    " entries for a menu of " + std::to_string(menu_.size()));
  }
  if (std_errors_ && std_errors_->size() != probs_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "standard errors misaligned with menu");
  }
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < -1e-12) {
      throw Error(ErrorCode::kNegativeMass, "choice probability " + std::to_string(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::kSumNotOne, "choice probabilities sum to " + std::to_string(total));
  }
}

std::vector<std::size_t> ChoiceDistribution::support() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < probs_.size(); ++j) {
    if (probs_[j] > kSupportTol) out.push_back(j);
  }
  return out;
}

ChoiceDistribution atoms_choice_distribution(const AtomicReu& pi,
                                             const DecisionProblem& menu,
                                             TieBreak tb) {
  check_dimension(pi.dimension(), menu.dimension());
  std::vector<double> probs(menu.size(), 0.0);
  for (const Atom& atom : pi.atoms()) {
    const auto best = argmax_set(menu, atom.utility, kTieTol);
    if (tb == TieBreak::kLexicographicFirst) {
      probs[best.front()] += atom.weight;
    } else {
      const double share = atom.weight / static_cast<double>(best.size());
      for (std::size_t j : best) probs[j] += share;
    }
  }
  return ChoiceDistribution(menu, std::move(probs), std::nullopt, tb);
}

ChoiceDistribution mc_choice_distribution(const SamplerReu& pi,
                                          const DecisionProblem& menu,
                                          std::uint64_t samples, std::uint64_t seed,
                                          TieBreak tb, unsigned threads) {
  if (samples < 1) throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  check_dimension(pi.dimension(), menu.dimension());
  const std::size_t n_alt = menu.size();

  if (threads == 0) threads = default_thread_count();
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, threads), samples));
  // hits[j * (n_alt + 1) + k]: samples in which j was one of k tied
  // maximizers. Integer counts keep the reduction order-free; a uniform
  // tie-break then credits each of the k maximizers with 1/k.
  const std::size_t stride = n_alt + 1;
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(n_alt * stride, 0));
  const std::uint64_t chunk = (samples + workers - 1) / workers;
  parallel_for(workers, workers, [&](std::uint64_t w0, std::uint64_t w1) {
    for (std::uint64_t w = w0; w < w1; ++w) {
      auto& hits = partial[w];
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(samples, begin + chunk);
      for (std::uint64_t i = begin; i < end; ++i) {
        const VnmUtility u = pi.draw(seed, i);
        const auto best = argmax_set(menu, u, kTieTol);
        if (tb == TieBreak::kLexicographicFirst) {
          ++hits[best.front() * stride + 1];
        } else {
          for (std::size_t j : best) ++hits[j * stride + best.size()];
        }
      }
    }
  });

  std::vector<std::uint64_t> hits(n_alt * stride, 0);
  for (const auto& part : partial) {
    for (std::size_t t = 0; t < hits.size(); ++t) hits[t] += part[t];
  }
  const double n = static_cast<double>(samples);
  std::vector<double> probs(n_alt, 0.0), se(n_alt);
  for (std::size_t j = 0; j < n_alt; ++j) {
    for (std::size_t k = 1; k <= n_alt; ++k) {
      const std::uint64_t c = hits[j * stride + k];
      if (c > 0) probs[j] += static_cast<double>(c) / (static_cast<double>(k) * n);
    }
    se[j] = std::sqrt(probs[j] * (1.0 - probs[j]) / n);
  }
  return ChoiceDistribution(menu, std::move(probs), std::move(se), tb);
}

double tie_probability(const AtomicReu& pi, const DecisionProblem& menu) {
  check_dimension(pi.dimension(), menu.dimension());
  double mass = 0.0;
  for (const Atom& atom : pi.atoms()) {
    if (argmax_set(menu, atom.utility, kTieTol).size() > 1) mass += atom.weight;
  }
  return mass;
}

}  // namespace welfarelab
