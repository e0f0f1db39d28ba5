#include "welfarelab/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "welfarelab/errors.hpp"
#include "welfarelab/lp.hpp"
#include "welfarelab/random.hpp"

namespace welfarelab {

namespace {

using lp::Relation;

void check_shared_menu(const ChoiceDistribution& reference,
                       std::span<const ChoiceDistribution> rows) {
  if (rows.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one agent row is required");
  }
  for (const auto& row : rows) {
    if (!(row.menu() == reference.menu())) {
      throw Error(ErrorCode::kMenuMismatch, "choice rows are defined on different menus");
    }
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double max_agent_payoff(std::span<const double> c,
                        std::span<const ChoiceDistribution> agents) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& row : agents) best = std::max(best, dot(c, row.probs()));
  return best;
}

// Margin-maximal separating payoff with ||c||_inf <= 1. Variables are
// c + 1 (in [0, 2]) followed by theta+ and theta-.
PayoffAssignment separating_witness(const ChoiceDistribution& planner,
                                    std::span<const ChoiceDistribution> agents) {
  const std::size_t n = planner.size();
  lp::Problem prob(n + 2);
  for (std::size_t x = 0; x < n; ++x) prob.objective[x] = -planner[x];
  prob.objective[n] = 1.0;
  prob.objective[n + 1] = -1.0;
  for (const auto& row : agents) {
    std::vector<double> coeffs(n + 2, 0.0);
    for (std::size_t x = 0; x < n; ++x) coeffs[x] = row[x];
    coeffs[n] = -1.0;
    coeffs[n + 1] = 1.0;
    prob.add(std::move(coeffs), Relation::kLessEqual, 1.0);
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<double> coeffs(n + 2, 0.0);
    coeffs[x] = 1.0;
    prob.add(std::move(coeffs), Relation::kLessEqual, 2.0);
  }
  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kDomainError, "separation LP did not reach an optimum");
  }
  PayoffAssignment w;
  w.c.resize(n);
  for (std::size_t x = 0; x < n; ++x) w.c[x] = std::clamp(sol.x[x] - 1.0, -1.0, 1.0);
  w.theta = max_agent_payoff(w.c, agents);
  return w;
}

// max over ||c||_1 <= 1 of c.planner - max_i c.agent_i; equals the l_inf
// distance from the planner row to the agents' hull.
double pareto_gap(const ChoiceDistribution& planner,
                  std::span<const ChoiceDistribution> agents) {
  const std::size_t n = planner.size();
  // c+ (n), c- (n), theta+, theta-
  lp::Problem prob(2 * n + 2);
  for (std::size_t x = 0; x < n; ++x) {
    prob.objective[x] = -planner[x];
    prob.objective[n + x] = planner[x];
  }
  prob.objective[2 * n] = 1.0;
  prob.objective[2 * n + 1] = -1.0;
  for (const auto& row : agents) {
    std::vector<double> coeffs(2 * n + 2, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      coeffs[x] = row[x];
      coeffs[n + x] = -row[x];
    }
    coeffs[2 * n] = -1.0;
    coeffs[2 * n + 1] = 1.0;
    prob.add(std::move(coeffs), Relation::kLessEqual, 0.0);
  }
  std::vector<double> norm(2 * n + 2, 0.0);
  for (std::size_t k = 0; k < 2 * n; ++k) norm[k] = 1.0;
  prob.add(std::move(norm), Relation::kLessEqual, 1.0);
  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kDomainError, "Pareto LP did not reach an optimum");
  }
  return std::max(0.0, -sol.objective);
}

void attach_witness(LpVerdict& verdict, const ChoiceDistribution& planner,
                    std::span<const ChoiceDistribution> agents) {
  PayoffAssignment w = separating_witness(planner, agents);
  verdict.margin = dot(w.c, planner.probs()) - w.theta;
  verdict.witness = std::move(w);
}

}  // namespace

AgentProfile::AgentProfile(std::vector<AgentModel> agents) : agents_(std::move(agents)) {
  if (agents_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a profile needs at least one agent");
  }
  auto dim_of = [](const AgentModel& a) {
    return std::visit([](const auto& m) { return m.dimension(); }, a);
  };
  dimension_ = dim_of(agents_.front());
  for (const auto& a : agents_) {
    if (dim_of(a) != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch, "agents have different dimensions");
    }
  }
}

bool AgentProfile::all_atomic() const {
  return std::all_of(agents_.begin(), agents_.end(), [](const AgentModel& a) {
    return std::holds_alternative<AtomicReu>(a);
  });
}

std::vector<ChoiceDistribution> agent_rows(const AgentProfile& profile,
                                           const DecisionProblem& menu, TieBreak tb,
                                           const McOptions& mc) {
  std::vector<ChoiceDistribution> rows;
  rows.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const AgentModel& agent = profile[i];
    if (const auto* atomic = std::get_if<AtomicReu>(&agent)) {
      rows.push_back(atoms_choice_distribution(*atomic, menu, tb));
    } else {
      rows.push_back(mc_choice_distribution(std::get<SamplerReu>(agent), menu, mc.samples,
                                            derive_seed(mc.seed, i), tb, mc.threads));
    }
  }
  return rows;
}

AtomicReu mix(const AgentProfile& profile, const Weights& alpha) {
  if (alpha.size() != profile.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one weight per agent is required");
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto* agent = std::get_if<AtomicReu>(&profile[i]);
    if (agent == nullptr) {
      throw Error(ErrorCode::kNonAtomicAgent,
                  "agent " + std::to_string(i) + " is sampled; mix at the sampling layer");
    }
    if (alpha[i] == 0.0) continue;
    for (const Atom& a : agent->atoms()) {
      auto same = std::find_if(atoms.begin(), atoms.end(),
                               [&](const Atom& b) { return b.utility == a.utility; });
      if (same != atoms.end()) {
        same->weight += alpha[i] * a.weight;
      } else {
        atoms.push_back(Atom{a.utility, alpha[i] * a.weight});
      }
    }
  }
  return AtomicReu(std::move(atoms));
}

LpVerdict local_weights(const ChoiceDistribution& planner,
                        std::span<const ChoiceDistribution> agents, double tol) {
  check_shared_menu(planner, agents);
  const std::size_t m = agents.size();
  const std::size_t n = planner.size();
  // alpha (m), s
  lp::Problem prob(m + 1);
  prob.objective[m] = 1.0;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<double> upper(m + 1), lower(m + 1);
    for (std::size_t i = 0; i < m; ++i) upper[i] = lower[i] = agents[i][x];
    upper[m] = -1.0;
    lower[m] = 1.0;
    prob.add(std::move(upper), Relation::kLessEqual, planner[x]);
    prob.add(std::move(lower), Relation::kGreaterEqual, planner[x]);
  }
  std::vector<double> simplex(m + 1, 1.0);
  simplex[m] = 0.0;
  prob.add(std::move(simplex), Relation::kEqual, 1.0);

  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kDomainError, "hull LP did not reach an optimum");
  }
  LpVerdict verdict;
  verdict.distance = std::max(0.0, sol.x[m]);
  verdict.feasible = verdict.distance <= tol;
  if (verdict.feasible) {
    verdict.weights = Weights::from_solver(std::vector<double>(sol.x.begin(), sol.x.begin() + m));
  } else {
    attach_witness(verdict, planner, agents);
  }
  return verdict;
}

LpVerdict respects_pareto_at(const ChoiceDistribution& planner,
                             std::span<const ChoiceDistribution> agents, double tol) {
  check_shared_menu(planner, agents);
  LpVerdict verdict;
  verdict.distance = pareto_gap(planner, agents);
  verdict.feasible = verdict.distance <= tol;
  if (!verdict.feasible) attach_witness(verdict, planner, agents);
  return verdict;
}

double agreement(const ChoiceDistribution& rho, const ChoiceDistribution& rho_hat) {
  if (!(rho.menu() == rho_hat.menu())) {
    throw Error(ErrorCode::kMenuMismatch, "agreement needs rows on the same menu");
  }
  return dot(rho.probs(), rho_hat.probs());
}

bool agreement_bounds_check(const ChoiceDistribution& planner,
                            std::span<const ChoiceDistribution> agents,
                            const ChoiceDistribution& probe) {
  check_shared_menu(planner, agents);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& row : agents) {
    const double a = agreement(probe, row);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double p = agreement(probe, planner);
  return lo - 1e-9 <= p && p <= hi + 1e-9;
}

ChoiceDistribution probe_from_witness(const PayoffAssignment& witness,
                                      const DecisionProblem& menu) {
  if (witness.c.size() != menu.size()) {
    throw Error(ErrorCode::kMenuMismatch, "witness does not match the menu");
  }
  const double lo = *std::min_element(witness.c.begin(), witness.c.end());
  std::vector<double> probe(witness.c.size());
  double total = 0.0;
  for (std::size_t x = 0; x < probe.size(); ++x) total += (probe[x] = witness.c[x] - lo);
  if (!(total > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "constant payoff cannot separate");
  }
  for (double& v : probe) v /= total;
  return ChoiceDistribution(menu, std::move(probe));
}

MaximalityCertificate maximality(const ChoiceDistribution& rho,
                                 std::span<const ChoiceDistribution> agents) {
  check_shared_menu(rho, agents);
  const std::size_t m = agents.size();
  const std::size_t n = rho.size();
  // y (m), s = -(worst slack)
  lp::Problem prob(m + 1);
  prob.objective[m] = 1.0;
  for (std::size_t x : rho.support()) {
    for (std::size_t other = 0; other < n; ++other) {
      if (other == x) continue;
      std::vector<double> coeffs(m + 1);
      for (std::size_t i = 0; i < m; ++i) coeffs[i] = agents[i][x] - agents[i][other];
      coeffs[m] = 1.0;
      prob.add(std::move(coeffs), Relation::kGreaterEqual, 0.0);
    }
  }
  std::vector<double> simplex(m + 1, 1.0);
  simplex[m] = 0.0;
  prob.add(std::move(simplex), Relation::kEqual, 1.0);
  const lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kDomainError, "maximality LP did not reach an optimum");
  }
  MaximalityCertificate cert;
  cert.y.assign(sol.x.begin(), sol.x.begin() + m);
  cert.worst_slack = -std::max(0.0, sol.x[m]);
  cert.maximal = cert.worst_slack >= -1e-9;
  return cert;
}

bool is_maximal(const ChoiceDistribution& rho, std::span<const ChoiceDistribution> agents) {
  return maximality(rho, agents).maximal;
}

ChoiceDistribution uniform_support_rule(std::span<const ChoiceDistribution> agents) {
  if (agents.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one agent row is required");
  }
  check_shared_menu(agents.front(), agents);
  const std::size_t n = agents.front().size();
  std::vector<bool> in_support(n, false);
  for (const auto& row : agents) {
    for (std::size_t x : row.support()) in_support[x] = true;
  }
  const double count = static_cast<double>(std::count(in_support.begin(), in_support.end(), true));
  std::vector<double> probs(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    if (in_support[x]) probs[x] = 1.0 / count;
  }
  return ChoiceDistribution(agents.front().menu(), std::move(probs));
}

const ChoiceDistribution* ChoiceRule::find(const DecisionProblem& menu) const {
  for (const auto& row : rows_) {
    if (row.menu() == menu) return &row;
  }
  return nullptr;
}

RuleFlags classify_rule(const ChoiceRule& rho, const AgentProfile& profile,
                        std::span<const DecisionProblem> menus, TieBreak tb,
                        const McOptions& mc) {
  RuleFlags flags;
  bool weakly_better_everywhere = true;
  bool strictly_better_somewhere = false;
  for (std::size_t d = 0; d < menus.size(); ++d) {
    const ChoiceDistribution* row = rho.find(menus[d]);
    if (row == nullptr) {
      throw Error(ErrorCode::kMissingMenu,
                  "choice rule is not defined on menu " + std::to_string(d));
    }
    McOptions menu_mc = mc;
    menu_mc.seed = derive_seed(mc.seed, d);
    const auto agents = agent_rows(profile, menus[d], tb, menu_mc);
    for (std::size_t x = 0; x < row->size(); ++x) {
      const bool chosen_by_someone = std::any_of(
          agents.begin(), agents.end(), [x](const auto& a) { return a[x] > kSupportTol; });
      const bool chosen_by_rule = (*row)[x] > kSupportTol;
      if (chosen_by_someone && !chosen_by_rule) flags.responsive = false;
      if (!chosen_by_someone && chosen_by_rule) flags.consistent = false;
    }
    if (!is_maximal(*row, agents)) flags.maximal_on_every_menu = false;

    const ChoiceDistribution uniform = uniform_support_rule(agents);
    for (const auto& a : agents) {
      const double gain = agreement(uniform, a) - agreement(*row, a);
      if (gain < -1e-12) weakly_better_everywhere = false;
      if (gain > 1e-12) strictly_better_somewhere = true;
    }
  }
  flags.dominated_by_uniform_support = weakly_better_everywhere && strictly_better_somewhere;
  return flags;
}

EuwResult euw_choice(const AgentProfile& profile, const Weights& alpha,
                     const DecisionProblem& menu, TieBreak tb) {
  if (alpha.size() != profile.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one weight per agent is required");
  }
  if (profile.dimension() != menu.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "profile and menu dimensions differ");
  }
  std::vector<double> v(profile.dimension(), 0.0);
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto* agent = std::get_if<AtomicReu>(&profile[i]);
    if (agent == nullptr) {
      throw Error(ErrorCode::kNonAtomicAgent,
                  "EUW needs the mean utility of agent " + std::to_string(i));
    }
    const VnmUtility mean = agent->mean_utility();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += alpha[i] * mean[k];
  }
  VnmUtility social(std::move(v));
  ChoiceDistribution choice = atoms_choice_distribution(AtomicReu::degenerate(social), menu, tb);
  return EuwResult{std::move(choice), menu_utilities(menu, social), std::move(social)};
}

}  // namespace welfarelab
