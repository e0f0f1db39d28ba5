#include "welfarelab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "welfarelab/aggregation.hpp"
#include "welfarelab/errors.hpp"
#include "welfarelab/random.hpp"
#include "welfarelab/welfare.hpp"

namespace welfarelab {

namespace {

constexpr double kExact = 1e-12;
constexpr double kPi = std::numbers::pi;
constexpr double kPlanarScale = 0.2;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ReportCheck near(std::string label, std::string basis, double expected, double observed,
                 double tol = kExact) {
  return ReportCheck{std::move(label), std::move(basis), num(expected), num(observed),
                     std::abs(observed - expected) <= tol};
}

ReportCheck flag(std::string label, std::string basis, std::string expected,
                 std::string observed, bool pass) {
  return ReportCheck{std::move(label), std::move(basis), std::move(expected),
                     std::move(observed), pass};
}

double dot2(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return a[0] * b[0] + a[1] * b[1];
}

template <class F>
double integrate(const F& f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-14);
}

// Ranking of the labels by descending value, e.g. "z > y > x".
std::string ranking(const std::array<double, 3>& v, const std::array<const char*, 3>& names) {
  std::array<std::size_t, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  std::string out;
  for (std::size_t k = 0; k < 3; ++k) {
    if (k > 0) out += (v[idx[k - 1]] - v[idx[k]] > kExact) ? " > " : " ~ ";
    out += names[idx[k]];
  }
  return out;
}

DecisionProblem pure_menu(std::size_t n) {
  std::vector<Lottery> alts;
  for (std::size_t k = 0; k < n; ++k) alts.push_back(degenerate_lottery(n, k));
  return DecisionProblem(std::move(alts));
}

double expectation(const ChoiceDistribution& rho, const std::vector<double>& c) {
  double e = 0.0;
  for (std::size_t x = 0; x < rho.size(); ++x) e += rho[x] * c[x];
  return e;
}

}  // namespace

bool ExampleReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ReportCheck& c) { return c.pass; });
}

double ExampleReport::value(const std::string& label) const {
  for (const auto& v : values) {
    if (v.label == label) return v.value;
  }
  throw Error(ErrorCode::kInvalidArgument, "report has no value '" + label + "'");
}

std::string to_text(const ExampleReport& report) {
  std::string out = "example: " + report.name + "\n";
  for (const auto& [key, val] : report.inputs) out += "  input  " + key + " = " + val + "\n";
  for (const auto& v : report.values) out += "  value  " + v.label + " = " + num(v.value) + "\n";
  for (const auto& c : report.checks) {
    out += std::string("  ") + (c.pass ? "PASS" : "FAIL") + "   " + c.label + " [" + c.basis +
           "] expected " + c.expected + ", observed " + c.observed + "\n";
  }
  for (const auto& n : report.notes) out += "  note   " + n + "\n";
  out += std::string("result: ") + (report.all_pass() ? "pass" : "fail") + "\n";
  return out;
}

nlohmann::ordered_json to_json(const ExampleReport& report) {
  nlohmann::ordered_json j;
  j["name"] = report.name;
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [key, val] : report.inputs) j["inputs"][key] = val;
  j["values"] = nlohmann::ordered_json::object();
  for (const auto& v : report.values) j["values"][v.label] = v.value;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back({{"label", c.label},
                           {"basis", c.basis},
                           {"expected", c.expected},
                           {"observed", c.observed},
                           {"pass", c.pass}});
  }
  j["notes"] = report.notes;
  j["pass"] = report.all_pass();
  return j;
}

ExampleReport run_euw_example() {
  ExampleReport r;
  r.name = "euw";
  r.inputs = {{"menu", "{a, b}, u(b) = 0"},
              {"population 1", "u(a) = 1 w.p. 0.9, -1 w.p. 0.1"},
              {"population 2", "u(a) = -1 w.p. 0.7, 1 w.p. 0.3"},
              {"weights", "(0.5, 0.5)"},
              {"payoff c", "c(a) = 1, c(b) = 2"}};

  const DecisionProblem menu = pure_menu(2);
  const AtomicReu pop1({{VnmUtility{1.0, 0.0}, 0.9}, {VnmUtility{-1.0, 0.0}, 0.1}});
  const AtomicReu pop2({{VnmUtility{-1.0, 0.0}, 0.7}, {VnmUtility{1.0, 0.0}, 0.3}});
  const AgentProfile profile({pop1, pop2});
  const Weights equal{0.5, 0.5};

  const EuwResult euw = euw_choice(profile, equal, menu);
  const ChoiceDistribution mixture = atoms_choice_distribution(mix(profile, equal), menu);
  const auto rows = agent_rows(profile, menu);
  const std::vector<double> c{1.0, 2.0};

  const double e_euw = expectation(euw.choice, c);
  const double e1 = expectation(rows[0], c);
  const double e_mix = expectation(mixture, c);
  const double e2 = expectation(rows[1], c);

  const AtomicReu pop2_intense({{VnmUtility{-3.0, 0.0}, 0.7}, {VnmUtility{3.0, 0.0}, 0.3}});
  const AgentProfile intense({pop1, pop2_intense});
  const EuwResult euw_intense = euw_choice(intense, equal, menu);
  // The unnormalized sum over the two populations is twice the equal-weight value.
  const double sum_base = 2.0 * euw.values[0];
  const double sum_intense = 2.0 * euw_intense.values[0];

  r.values = {{"euw rho(a)", euw.choice[0]},
              {"mixture rho(a)", mixture[0]},
              {"E_euw c", e_euw},
              {"E_agent1 c", e1},
              {"E_mixture c", e_mix},
              {"E_agent2 c", e2},
              {"average utility of a (sum)", sum_base},
              {"intensity: average utility of a (sum)", sum_intense},
              {"intensity: euw rho(a)", euw_intense.choice[0]}};

  const LpVerdict euw_verdict = respects_pareto_at(euw.choice, rows, 1e-9);
  const LpVerdict mix_verdict = local_weights(mixture, rows, 1e-9);

  r.checks = {
      near("euw picks a with probability 1", "worked-example", 1.0, euw.choice[0]),
      near("mixture picks a with probability 0.6", "worked-example", 0.6, mixture[0]),
      near("E_euw c", "worked-example", 1.0, e_euw),
      near("E_agent1 c", "worked-example", 1.1, e1),
      near("E_mixture c", "worked-example", 1.4, e_mix),
      near("E_agent2 c", "worked-example", 1.7, e2),
      near("average utility of a", "worked-example", 0.4, sum_base),
      near("intensity: average utility of a", "worked-example", -0.4, sum_intense),
      near("intensity: euw picks b", "worked-example", 1.0, euw_intense.choice[1]),
      flag("c = (1, 2) puts the euw planner below every agent", "independent-check",
           "E_euw c < min_i E_i c", num(e_euw) + " < " + num(std::min(e1, e2)),
           e_euw < std::min(e1, e2)),
      flag("LP certifies the euw Pareto violation", "independent-check", "infeasible",
           euw_verdict.feasible ? "feasible" : "infeasible, margin " + num(euw_verdict.margin),
           !euw_verdict.feasible && euw_verdict.margin >= kWitnessMargin),
      flag("mixture is local behavioral utilitarian", "definition", "feasible",
           mix_verdict.feasible ? "feasible" : "infeasible", mix_verdict.feasible),
  };
  return r;
}

ExampleReport run_diamond_example(TieBreak tb) {
  ExampleReport r;
  r.name = "diamond";
  r.inputs = {{"u1", "(1, 0)"},
              {"u2", "(0, 1)"},
              {"x", "policy 1 for sure"},
              {"y", "each policy with probability 1/2"},
              {"weights", "(0.5, 0.5)"},
              {"tie-break", std::string(to_string(tb))}};

  const VnmUtility u1{1.0, 0.0};
  const VnmUtility u2{0.0, 1.0};
  const AgentProfile profile({AtomicReu::degenerate(u1), AtomicReu::degenerate(u2)});
  const Weights equal{0.5, 0.5};
  const DecisionProblem menu({make_lottery({1.0, 0.0}), make_lottery({0.5, 0.5})});

  const EuwResult euw = euw_choice(profile, equal, menu, tb);
  // Normalization subtracted each agent's last entry; add it back.
  const double offset = 0.5 * u1.offset() + 0.5 * u2.offset();
  const double vx = euw.values[0] + offset;
  const double vy = euw.values[1] + offset;

  const AtomicReu mixed = mix(profile, equal);
  const ChoiceDistribution on_menu = atoms_choice_distribution(mixed, menu, tb);
  const ChoiceDistribution on_policies = atoms_choice_distribution(mixed, pure_menu(2), tb);
  double policy1 = 0.0;
  for (std::size_t j = 0; j < menu.size(); ++j) policy1 += on_menu[j] * menu[j][0];

  r.values = {{"euw V(x)", vx},
              {"euw V(y)", vy},
              {"euw rho(x)", euw.choice[0]},
              {"euw rho(y)", euw.choice[1]},
              {"mixture rho(x | {x, y})", on_menu[0]},
              {"mixture rho(y | {x, y})", on_menu[1]},
              {"mixture P(policy 1 | {x, y})", policy1},
              {"mixture rho(policy 1 | pure policies)", on_policies[0]},
              {"mixture rho(policy 2 | pure policies)", on_policies[1]}};
  r.checks = {
      near("euw V(x) = 1/2", "worked-example", 0.5, vx),
      near("euw V(y) = 1/2", "worked-example", 0.5, vy),
      flag("euw is indifferent between x and y", "worked-example", "tie",
           std::abs(vx - vy) <= kExact ? "tie" : "strict", std::abs(vx - vy) <= kExact),
      near("mixture implements policy 1 with probability 1/2", "worked-example", 0.5,
           on_policies[0]),
      near("mixture implements policy 2 with probability 1/2", "worked-example", 0.5,
           on_policies[1]),
      near("mixture splits {x, y} evenly", "definition", 0.5, on_menu[0]),
  };
  r.notes.push_back("tie-break: " + std::string(to_string(tb)));
  r.notes.push_back("on the menu {x, y} the mixture delivers policy 1 with probability " +
                    num(policy1) + "; the even split of policies is over the pure policies");
  return r;
}

ExampleReport run_median_counterexample() {
  ExampleReport r;
  r.name = "median-counterexample";
  r.inputs = {{"types", "two, equally likely, quasilinear"},
              {"CV(p0, p1)", "type 1: 2, type 2: -1"},
              {"CV(p0, p2)", "type 1: -1, type 2: 2"},
              {"lottery", "50-50 over {p1, p2}"},
              {"sign", "CV as stated in the table: positive means a gain"}};

  const DiscreteCvDistribution p1({2.0, -1.0}, {0.5, 0.5});
  const DiscreteCvDistribution p2({-1.0, 2.0}, {0.5, 0.5});
  const double med1 = p1.quantile(0.5);
  const double med2 = p2.quantile(0.5);
  // Quasilinear and risk neutral: a type values the lottery at its expected CV.
  const double gain1 = 0.5 * 2.0 + 0.5 * -1.0;
  const double gain2 = 0.5 * -1.0 + 0.5 * 2.0;
  const bool pareto_prefers_lottery = gain1 > 0.0 && gain2 > 0.0;
  const bool medians_prefer_status_quo = med1 < 0.0 && med2 < 0.0;

  r.values = {{"CV_med(p1)", med1},     {"CV_med(p2)", med2},
              {"type 1 lottery value", gain1}, {"type 2 lottery value", gain2},
              {"mean CV(p1)", p1.mean()},    {"mean CV(p2)", p2.mean()}};
  r.checks = {
      near("CV_med(p1) = -1", "worked-example", -1.0, med1),
      near("CV_med(p2) = -1", "worked-example", -1.0, med2),
      near("type 1 values the lottery at 0.5", "worked-example", 0.5, gain1),
      near("type 2 values the lottery at 0.5", "worked-example", 0.5, gain2),
      near("mean CV(p1) = 0.5", "independent-check", 0.5, p1.mean()),
      flag("every type gains from the lottery", "worked-example", "true",
           pareto_prefers_lottery ? "true" : "false", pareto_prefers_lottery),
      flag("median CV ranks both prices below the status quo", "worked-example", "true",
           medians_prefer_status_quo ? "true" : "false", medians_prefer_status_quo),
  };
  r.notes.push_back(
      "Pareto ranks the lottery above p0 while weak consistency with the median ranks p0 "
      "above both of its outcomes");
  return r;
}

void CondorcetConfig::validate() const {
  if (!(eta > 0.0 && eta < 0.5)) throw Error(ErrorCode::kConfigError, "eta must lie in (0, 1/2)");
  if (!(delta > 0.0 && delta < 1.0 / (2.0 * kPi))) {
    throw Error(ErrorCode::kConfigError, "delta must lie in (0, 1/(2 pi))");
  }
  if (!(eps_angle > 0.0 && eps_angle < kCondorcetTheta0)) {
    throw Error(ErrorCode::kConfigError, "eps must lie in (0, pi/3)");
  }
  if (samples < 1) throw Error(ErrorCode::kConfigError, "samples must be >= 1");
  if (!(uniform_hi > uniform_lo)) {
    throw Error(ErrorCode::kConfigError, "uniform angle interval is empty");
  }
}

TriangularAngleDensity::TriangularAngleDensity(double edge, double peak)
    : edge_(edge), peak_(peak) {
  if (!(edge_ >= 0.0) || !(peak_ >= 0.0) || !(edge_ + peak_ > 0.0)) {
    throw Error(ErrorCode::kConfigError, "triangular density must be nonnegative");
  }
}

double TriangularAngleDensity::pdf(double theta) const {
  if (theta < 0.0 || theta > 2.0 * kPi) return 0.0;
  const double t = std::min(theta, 2.0 * kPi - theta);
  return (edge_ + (peak_ - edge_) * t / kPi) / raw_mass();
}

double TriangularAngleDensity::sample(double u_half, double u_pos) const {
  // Each half carries mass 1/2; invert edge t + k t^2 = M u / 2 on [0, pi].
  const double k = (peak_ - edge_) / (2.0 * kPi);
  const double c = raw_mass() * u_pos / 2.0;
  const double t = 2.0 * c / (edge_ + std::sqrt(edge_ * edge_ + 4.0 * k * c));
  return u_half < 0.5 ? t : 2.0 * kPi - t;
}

std::array<double, 2> unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

Lottery planar_lottery(const std::array<double, 2>& point) {
  const double a = 1.0 / 3.0 + kPlanarScale * point[0];
  const double b = 1.0 / 3.0 + kPlanarScale * point[1];
  return Lottery({a, b, 1.0 - a - b});
}

VnmUtility planar_utility(const std::array<double, 2>& u) { return VnmUtility({u[0], u[1], 0.0}); }

std::array<std::array<double, 2>, 3> condorcet_points(double eps_angle) {
  const double t = kCondorcetTheta0;
  return {unit_vector(t - eps_angle), unit_vector(5.0 * t - eps_angle),
          unit_vector(3.0 * t - eps_angle)};
}

std::array<std::array<double, 2>, 3> condorcet_base_utilities() {
  const double h = std::sqrt(3.0) / 2.0;
  return {{{1.0, 0.0}, {-0.5, h}, {-0.5, -h}}};
}

std::vector<SamplerReu> condorcet_agents(const CondorcetConfig& cfg) {
  cfg.validate();
  const auto base = condorcet_base_utilities();
  const TriangularAngleDensity tri(1.0 / (2.0 * kPi) - cfg.delta, 1.0 / (2.0 * kPi) + cfg.delta);
  std::vector<SamplerReu> agents;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto ubar = base[i];
    const double eta = cfg.eta, lo = cfg.uniform_lo, hi = cfg.uniform_hi;
    const bool triangular = i == 2;
    agents.emplace_back(
        3,
        [=](std::uint64_t seed, std::uint64_t index) {
          CounterRng rng(seed, index);
          const double u1 = rng.uniform_open();
          const double u2 = rng.uniform_open();
          const double theta = triangular ? tri.sample(u1, u2) : lo + (hi - lo) * u1;
          const auto w = unit_vector(theta);
          return planar_utility({(1.0 - eta) * ubar[0] + eta * w[0],
                                 (1.0 - eta) * ubar[1] + eta * w[1]});
        },
        triangular ? "condorcet agent 3 (triangular angle)" : "condorcet agent (uniform angle)");
  }
  return agents;
}

std::array<double, 2> uniform_angle_mean(double lo, double hi) {
  const double len = hi - lo;
  return {integrate([](double t) { return std::cos(t); }, lo, hi) / len,
          integrate([](double t) { return std::sin(t); }, lo, hi) / len};
}

std::array<double, 2> triangular_angle_mean(const TriangularAngleDensity& f) {
  std::array<double, 2> m{0.0, 0.0};
  for (auto [lo, hi] : {std::pair{0.0, kPi}, std::pair{kPi, 2.0 * kPi}}) {
    m[0] += integrate([&](double t) { return f.pdf(t) * std::cos(t); }, lo, hi);
    m[1] += integrate([&](double t) { return f.pdf(t) * std::sin(t); }, lo, hi);
  }
  return m;
}

ExampleReport run_condorcet_example(const CondorcetConfig& cfg) {
  cfg.validate();
  ExampleReport r;
  r.name = "condorcet";
  r.inputs = {{"eta", num(cfg.eta)},
              {"delta", num(cfg.delta)},
              {"eps", num(cfg.eps_angle)},
              {"theta0", "pi/3"},
              {"samples", std::to_string(cfg.samples)},
              {"seed", std::to_string(cfg.seed)},
              {"uniform angle interval", "[" + num(cfg.uniform_lo) + ", " + num(cfg.uniform_hi) + "]"},
              {"triangular density", "f(0) = f(2pi) = 1/(2pi) - delta, f(pi) = 1/(2pi) + delta"}};

  const auto pts = condorcet_points(cfg.eps_angle);
  const Lottery x = planar_lottery(pts[0]), y = planar_lottery(pts[1]), z = planar_lottery(pts[2]);
  const std::array<DecisionProblem, 3> pairs{DecisionProblem({x, y}), DecisionProblem({y, z}),
                                             DecisionProblem({x, z})};
  // Entry tested per pair: x from {x,y}, y from {y,z}, z from {x,z}.
  const std::array<std::size_t, 3> tested{0, 0, 1};
  const std::array<const char*, 3> pair_names{"rho(x,{x,y})", "rho(y,{y,z})", "rho(z,{x,z})"};
  // true: at least 1 - eta; false: below eta.
  const bool high[3][3] = {{true, true, false}, {true, false, true}, {false, true, true}};

  const auto agents = condorcet_agents(cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      const auto rho = mc_choice_distribution(agents[i], pairs[k], cfg.samples,
                                              derive_seed(cfg.seed, 10 * i + k),
                                              TieBreak::kUniform, cfg.threads);
      const double p = rho[tested[k]];
      const double se = (*rho.std_errors())[tested[k]];
      const std::string label = "agent " + std::to_string(i + 1) + " " + pair_names[k];
      r.values.push_back({label, p});
      r.values.push_back({label + " se", se});
      const bool pass = high[i][k] ? p + 3.0 * se >= 1.0 - cfg.eta : p - 3.0 * se < cfg.eta;
      r.checks.push_back(flag(label, "worked-example",
                              high[i][k] ? ">= " + num(1.0 - cfg.eta) : "< " + num(cfg.eta),
                              num(p) + " (se " + num(se) + ")", pass));
    }
  }

  const TriangularAngleDensity tri(1.0 / (2.0 * kPi) - cfg.delta, 1.0 / (2.0 * kPi) + cfg.delta);
  const auto m_uniform = uniform_angle_mean(cfg.uniform_lo, cfg.uniform_hi);
  const auto m3 = triangular_angle_mean(tri);
  const double claimed = -8.0 * cfg.delta / kPi;
  const bool agrees = std::abs(m3[0] - claimed) <= 1e-9 && std::abs(m3[1]) <= 1e-9;
  r.values.push_back({"agent 3 mean perturbation [0]", m3[0]});
  r.values.push_back({"agent 3 mean perturbation [1]", m3[1]});
  r.values.push_back({"-8 delta / pi", claimed});
  r.values.push_back({"triangular density mass", tri.raw_mass()});
  r.checks.push_back(flag("agent 3 mean perturbation vs (-8 delta/pi, 0)", "independent-check",
                          "(" + num(claimed) + ", 0)",
                          "(" + num(m3[0]) + ", " + num(m3[1]) + ")" +
                              (agrees ? ", agrees" : ", corrected value"),
                          true));
  r.notes.push_back(agrees ? "quadrature agrees with (-8 delta/pi, 0) for the perturbation"
                           : "quadrature gives (" + num(m3[0]) + ", " + num(m3[1]) +
                                 ") instead of (-8 delta/pi, 0)");

  const auto base = condorcet_base_utilities();
  std::array<double, 2> social{0.0, 0.0};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& m = i == 2 ? m3 : m_uniform;
    for (std::size_t d = 0; d < 2; ++d) social[d] += (1.0 - cfg.eta) * base[i][d] + cfg.eta * m[d];
  }
  const std::array<double, 3> euw_values{dot2(social, pts[0]), dot2(social, pts[1]),
                                         dot2(social, pts[2])};
  const std::string euw_rank = ranking(euw_values, {"x", "y", "z"});
  r.values.push_back({"E sum u [0]", social[0]});
  r.values.push_back({"E sum u [1]", social[1]});
  r.values.push_back({"euw V(x)", euw_values[0]});
  r.values.push_back({"euw V(y)", euw_values[1]});
  r.values.push_back({"euw V(z)", euw_values[2]});
  r.checks.push_back(flag("euw ranking", "worked-example", "z > y > x", euw_rank,
                          euw_rank == "z > y > x"));

  const SamplerReu mixture = SamplerReu::mixture(agents, Weights::uniform(3));
  const DecisionProblem xyz({x, y, z});
  const auto rho_mix = mc_choice_distribution(mixture, xyz, cfg.samples,
                                              derive_seed(cfg.seed, 99), TieBreak::kUniform,
                                              cfg.threads);
  const std::array<const char*, 3> names{"x", "y", "z"};
  for (std::size_t j = 0; j < 3; ++j) {
    r.values.push_back({std::string("mixture rho(") + names[j] + ",{x,y,z})", rho_mix[j]});
  }
  const double least = std::min({rho_mix[0], rho_mix[1], rho_mix[2]});
  r.checks.push_back(flag("mixture puts at least 0.25 on each of x, y, z", "independent-check",
                          ">= 0.25", num(least), least >= 0.25));

  // Variants reported for comparison only.
  const auto m_quarter = uniform_angle_mean(0.0, kPi / 2.0);
  std::array<double, 2> social_quarter{0.0, 0.0};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& m = i == 2 ? m3 : m_quarter;
    for (std::size_t d = 0; d < 2; ++d) {
      social_quarter[d] += (1.0 - cfg.eta) * base[i][d] + cfg.eta * m[d];
    }
  }
  r.values.push_back({"[0, pi/2] variant: agent 1-2 mean perturbation [0]", m_quarter[0]});
  r.values.push_back({"[0, pi/2] variant: agent 1-2 mean perturbation [1]", m_quarter[1]});
  r.notes.push_back("with agent 1-2 angles uniform on [0, pi/2] the mean perturbation is (" +
                    num(m_quarter[0]) + ", " + num(m_quarter[1]) + "), not zero; euw ranking " +
                    ranking({dot2(social_quarter, pts[0]), dot2(social_quarter, pts[1]),
                             dot2(social_quarter, pts[2])},
                            {"x", "y", "z"}));

  const TriangularAngleDensity literal(1.0 - cfg.delta, 1.0 / (2.0 * kPi) + cfg.delta);
  const auto m_literal = triangular_angle_mean(literal);
  std::array<double, 2> social_literal{0.0, 0.0};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& m = i == 2 ? m_literal : m_uniform;
    for (std::size_t d = 0; d < 2; ++d) {
      social_literal[d] += (1.0 - cfg.eta) * base[i][d] + cfg.eta * m[d];
    }
  }
  r.values.push_back({"edges 1 - delta: unscaled mass", literal.raw_mass()});
  r.values.push_back({"edges 1 - delta: mean perturbation [0]", m_literal[0]});
  r.notes.push_back("with edges f(0) = f(2pi) = 1 - delta the density has mass " +
                    num(literal.raw_mass()) + "; rescaled, its mean is (" + num(m_literal[0]) +
                    ", " + num(m_literal[1]) + ") and the euw ranking is " +
                    ranking({dot2(social_literal, pts[0]), dot2(social_literal, pts[1]),
                             dot2(social_literal, pts[2])},
                            {"x", "y", "z"}));
  r.notes.push_back("E sum u = eta * sum of mean perturbations; only its direction matters for "
                    "the ranking");
  return r;
}

}  // namespace welfarelab
