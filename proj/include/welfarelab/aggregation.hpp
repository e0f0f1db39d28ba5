#pragma once

// Weighted-utilitarian aggregation of agents' stochastic choices, and the
// per-menu checkers that decide whether a planner's choice row is a convex
// combination of the agents' rows (with a separating payoff witness when it
// is not), agreement bounds, and maximality of choice rules.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "welfarelab/lottery.hpp"
#include "welfarelab/reu.hpp"
#include "welfarelab/weights.hpp"

namespace welfarelab {

using AgentModel = std::variant<AtomicReu, SamplerReu>;

class AgentProfile {
 public:
  explicit AgentProfile(std::vector<AgentModel> agents);

  std::size_t size() const noexcept { return agents_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  const AgentModel& operator[](std::size_t i) const { return agents_[i]; }
  bool all_atomic() const;

 private:
  std::vector<AgentModel> agents_;
  std::size_t dimension_;
};

struct McOptions {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

// Each agent's choice row on `menu`: exact for atomic agents, Monte Carlo
// (seeded per agent) for sampled ones.
std::vector<ChoiceDistribution> agent_rows(const AgentProfile& profile,
                                           const DecisionProblem& menu,
                                           TieBreak tb = TieBreak::kUniform,
                                           const McOptions& mc = {});

// The alpha-mixture of atomic agents, with zero-weight atoms dropped and
// equal utilities merged.
AtomicReu mix(const AgentProfile& profile, const Weights& alpha);

// Payoff c per menu alternative and threshold theta.
struct PayoffAssignment {
  std::vector<double> c;
  double theta = 0.0;
};

struct LpVerdict {
  bool feasible = false;
  std::optional<Weights> weights;            // set when feasible
  std::optional<PayoffAssignment> witness;   // set when infeasible
  // min over alpha of || planner - sum_i alpha_i agent_i ||_inf
  double distance = 0.0;
  // c.planner - max_i c.agent_i for the witness (||c||_inf <= 1); 0 if none
  double margin = 0.0;
};

// Minimum witness margin the checkers guarantee.
inline constexpr double kWitnessMargin = 1e-9;

LpVerdict local_weights(const ChoiceDistribution& planner,
                        std::span<const ChoiceDistribution> agents, double tol);

// Same verdict as local_weights, decided through the dual (payoff) side: the
// largest c.planner - max_i c.agent_i over ||c||_1 <= 1 exceeds tol.
LpVerdict respects_pareto_at(const ChoiceDistribution& planner,
                             std::span<const ChoiceDistribution> agents, double tol);

// Probability that two independent choosers pick the same alternative.
double agreement(const ChoiceDistribution& rho, const ChoiceDistribution& rho_hat);

bool agreement_bounds_check(const ChoiceDistribution& planner,
                            std::span<const ChoiceDistribution> agents,
                            const ChoiceDistribution& probe);

// Turns a payoff witness into a probe distribution by an increasing affine
// map, so the witness inequality becomes an agreement-bound violation.
ChoiceDistribution probe_from_witness(const PayoffAssignment& witness,
                                      const DecisionProblem& menu);

struct MaximalityCertificate {
  bool maximal = false;
  std::vector<double> y;      // agent weights attaining the best slack
  double worst_slack = 0.0;   // <= 0; maximal iff >= -1e-9
};

// Maximal at the menu iff some y on the agent simplex makes every support
// point of rho a maximizer of y^T A. Decided by maximizing the worst slack.
MaximalityCertificate maximality(const ChoiceDistribution& rho,
                                 std::span<const ChoiceDistribution> agents);
bool is_maximal(const ChoiceDistribution& rho,
                std::span<const ChoiceDistribution> agents);

// Uniform over the union of the agents' supports.
ChoiceDistribution uniform_support_rule(std::span<const ChoiceDistribution> agents);

// A stochastic choice rule given by its rows on finitely many menus.
class ChoiceRule {
 public:
  ChoiceRule() = default;
  explicit ChoiceRule(std::vector<ChoiceDistribution> rows) : rows_(std::move(rows)) {}

  void add(ChoiceDistribution row) { rows_.push_back(std::move(row)); }
  const ChoiceDistribution* find(const DecisionProblem& menu) const;
  const std::vector<ChoiceDistribution>& rows() const noexcept { return rows_; }

 private:
  std::vector<ChoiceDistribution> rows_;
};

struct RuleFlags {
  bool responsive = true;
  bool consistent = true;
  bool maximal_on_every_menu = true;
  bool dominated_by_uniform_support = false;
};

RuleFlags classify_rule(const ChoiceRule& rho, const AgentProfile& profile,
                        std::span<const DecisionProblem> menus,
                        TieBreak tb = TieBreak::kUniform, const McOptions& mc = {});

struct EuwResult {
  ChoiceDistribution choice;
  std::vector<double> values;   // v.x per alternative, normalized utilities
  VnmUtility social_utility;    // v = sum_i alpha_i E_{pi_i} u
};

// Expected utilitarian welfare: deterministic argmax of the alpha-weighted
// mean utility, ties split by `tb`.
EuwResult euw_choice(const AgentProfile& profile, const Weights& alpha,
                     const DecisionProblem& menu, TieBreak tb = TieBreak::kUniform);

}  // namespace welfarelab
