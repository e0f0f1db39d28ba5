#include "welfarelab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "welfarelab/aggregation.hpp"
#include "welfarelab/errors.hpp"
#include "welfarelab/random.hpp"
#include "welfarelab/scenario_file.hpp"
#include "welfarelab/scenarios.hpp"
#include "welfarelab/welfare.hpp"

namespace welfarelab {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kPlannerStream = 0x706c616e6e6572ULL;
constexpr std::uint64_t kMenuStream = 0x6d656e7573ULL;
constexpr std::uint64_t kProbeStream = 0x70726f6265ULL;
constexpr int kProbeCount = 1000;

struct RunConfig {
  std::string scenario;
  std::uint64_t seed = 0;
  std::uint64_t samples = 100000;
  double tol = 1e-9;
  std::string format = "text";
  std::string output;
  unsigned threads = 0;
};

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<double>& v, const char* sep = " ") {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k > 0) out += sep;
    out += g17(v[k]);
  }
  return out;
}

// Verdicts that do not fit an exit code of their own.
struct Outcome {
  std::string text;
  int code = kExitOk;
};

std::vector<std::string> menu_labels(const ScenarioFile& file, const std::string& id,
                                     std::size_t size) {
  for (const auto& [name, members] : file.menu_members) {
    if (name == id) return members;
  }
  std::vector<std::string> out;
  for (std::size_t k = 0; k < size; ++k) out.push_back("alt" + std::to_string(k + 1));
  return out;
}

SamplerReu as_sampler(const AgentModel& m) {
  if (const auto* a = std::get_if<AtomicReu>(&m)) return SamplerReu::from_atoms(*a);
  return std::get<SamplerReu>(m);
}

McOptions mc_options(const RunConfig& cfg) { return McOptions{cfg.samples, cfg.seed, cfg.threads}; }

struct NamedRow {
  std::string name;
  ChoiceDistribution row;
};

std::string emit_rows(const RunConfig& cfg, const std::string& menu_id,
                      const std::vector<std::string>& labels, TieBreak tb,
                      const std::vector<NamedRow>& rows) {
  std::ostringstream os;
  if (cfg.format == "csv") {
    os << "row,alternative,probability,std_error\n";
    for (const auto& r : rows) {
      for (std::size_t j = 0; j < r.row.size(); ++j) {
        os << csv_field(r.name) << ',' << csv_field(labels[j]) << ',' << g17(r.row[j]) << ',';
        if (r.row.std_errors()) os << g17((*r.row.std_errors())[j]);
        os << '\n';
      }
    }
  } else if (cfg.format == "json") {
    Json j = {{"menu", menu_id}, {"alternatives", labels}, {"tie_break", std::string(to_string(tb))}};
    j["rows"] = Json::array();
    for (const auto& r : rows) {
      Json rj = {{"name", r.name}, {"probs", r.row.probs()}};
      rj["std_errors"] = r.row.std_errors() ? Json(*r.row.std_errors()) : Json(nullptr);
      j["rows"].push_back(rj);
    }
    os << j.dump(2) << '\n';
  } else {
    os << "menu " << menu_id << " (tie-break " << to_string(tb) << ")\n";
    os << "alternatives:";
    for (const auto& l : labels) os << ' ' << l;
    os << '\n';
    for (const auto& r : rows) {
      os << r.name << ": " << join(r.row.probs()) << '\n';
      if (r.row.std_errors()) os << r.name << " se: " << join(*r.row.std_errors()) << '\n';
    }
  }
  return os.str();
}

// Weights typed by the user: invalid ones are input errors.
Weights user_weights(const std::vector<double>& w) {
  try {
    return Weights(w);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidArgument, e.what());
  }
}

Weights planner_weights(const std::vector<double>& w, std::size_t agents) {
  Weights alpha = user_weights(w);
  if (alpha.size() != agents) {
    throw Error(ErrorCode::kInvalidArgument,
                "need one weight per agent (" + std::to_string(agents) + ")");
  }
  return alpha;
}

Outcome cmd_choice(const RunConfig& cfg, const ScenarioFile& file, const std::string& menu_id,
                   const std::string& planner_id, const std::vector<double>& weights) {
  const DecisionProblem& menu = file.menu(menu_id);
  const AgentProfile profile = file.profile();
  const auto agents = agent_rows(profile, menu, file.tie_break, mc_options(cfg));
  std::vector<NamedRow> rows;
  for (std::size_t i = 0; i < agents.size(); ++i) rows.push_back({file.agents[i].name, agents[i]});

  std::optional<PlannerSpec> planner;
  std::string planner_name;
  if (!planner_id.empty()) {
    planner = file.planner(planner_id);
    planner_name = "planner " + planner_id;
  } else if (!weights.empty()) {
    planner = PlannerSpec{PlannerSpec::Kind::kWeights, weights, {}};
    planner_name = "planner";
  }
  if (planner) {
    switch (planner->kind) {
      case PlannerSpec::Kind::kWeights: {
        const Weights alpha = planner_weights(planner->weights, profile.size());
        if (profile.all_atomic()) {
          rows.push_back({planner_name, atoms_choice_distribution(mix(profile, alpha), menu,
                                                                  file.tie_break)});
        } else {
          std::vector<SamplerReu> samplers;
          for (std::size_t i = 0; i < profile.size(); ++i) samplers.push_back(as_sampler(profile[i]));
          rows.push_back({planner_name,
                          mc_choice_distribution(SamplerReu::mixture(std::move(samplers), alpha),
                                                 menu, cfg.samples,
                                                 derive_seed(cfg.seed, kPlannerStream),
                                                 file.tie_break, cfg.threads)});
        }
        break;
      }
      case PlannerSpec::Kind::kEuwWeights:
        rows.push_back({planner_name,
                        euw_choice(profile, planner_weights(planner->weights, profile.size()),
                                   menu, file.tie_break)
                            .choice});
        break;
      case PlannerSpec::Kind::kRows: {
        auto it = planner->rows.find(menu_id);
        if (it == planner->rows.end()) {
          throw Error(ErrorCode::kMissingMenu,
                      "planner " + planner_id + " has no row for menu " + menu_id);
        }
        rows.push_back({planner_name, ChoiceDistribution(menu, it->second)});
        break;
      }
    }
  }
  return {emit_rows(cfg, menu_id, menu_labels(file, menu_id, menu.size()), file.tie_break, rows)};
}

DecisionProblem random_menu(std::size_t dim, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(derive_seed(seed, kMenuStream), index);
  const std::size_t size = 2 + static_cast<std::size_t>(rng() % 5);
  std::vector<Lottery> alts;
  while (alts.size() < size) {
    std::vector<double> w(dim);
    double total = 0.0;
    for (double& v : w) total += (v = -std::log(rng.uniform_open()));
    for (double& v : w) v /= total;
    Lottery l(std::move(w));
    bool fresh = true;
    for (const auto& a : alts) fresh = fresh && !a.approx_equal(l);
    if (fresh) alts.push_back(std::move(l));
  }
  return DecisionProblem(std::move(alts));
}

ChoiceDistribution random_probe(const DecisionProblem& menu, std::uint64_t seed,
                                std::uint64_t index) {
  CounterRng rng(seed, index);
  std::vector<double> p(menu.size());
  double total = 0.0;
  for (double& v : p) total += (v = -std::log(rng.uniform_open()));
  for (double& v : p) v /= total;
  return ChoiceDistribution(menu, std::move(p));
}

Outcome cmd_check(const RunConfig& cfg, const ScenarioFile& file, const std::string& planner_id,
                  const std::vector<double>& weights, const std::vector<std::string>& menu_ids,
                  std::uint64_t random_menus) {
  const AgentProfile profile = file.profile();
  PlannerSpec planner;
  std::string planner_name = "weights";
  if (!planner_id.empty()) {
    planner = file.planner(planner_id);
    planner_name = planner_id;
  } else if (!weights.empty()) {
    planner = PlannerSpec{PlannerSpec::Kind::kWeights, weights, {}};
  } else {
    throw Error(ErrorCode::kInvalidArgument, "give --planner or --weights");
  }

  std::vector<std::pair<std::string, DecisionProblem>> menus;
  if (random_menus > 0) {
    if (planner.kind == PlannerSpec::Kind::kRows) {
      throw Error(ErrorCode::kInvalidArgument, "a planner given by rows cannot face random menus");
    }
    for (std::uint64_t d = 0; d < random_menus; ++d) {
      menus.emplace_back("random-" + std::to_string(d + 1),
                         random_menu(profile.dimension(), cfg.seed, d));
    }
  } else if (!menu_ids.empty()) {
    for (const auto& id : menu_ids) menus.emplace_back(id, file.menu(id));
  } else {
    menus = file.menus;
  }
  if (menus.empty()) throw Error(ErrorCode::kSchemaError, "no menus to check");

  std::vector<Json> results;
  std::size_t violations = 0;
  std::string first_violation;
  for (std::size_t d = 0; d < menus.size(); ++d) {
    const auto& [id, menu] = menus[d];
    McOptions mc = mc_options(cfg);
    mc.seed = derive_seed(cfg.seed, d);
    const auto agents = agent_rows(profile, menu, file.tie_break, mc);

    std::optional<ChoiceDistribution> row;
    switch (planner.kind) {
      case PlannerSpec::Kind::kWeights: {
        // A weighted utilitarian planner's row is the weighted sum of the agents' rows.
        const Weights alpha = planner_weights(planner.weights, profile.size());
        std::vector<double> p(menu.size(), 0.0);
        for (std::size_t i = 0; i < agents.size(); ++i) {
          for (std::size_t x = 0; x < p.size(); ++x) p[x] += alpha[i] * agents[i][x];
        }
        row.emplace(menu, std::move(p));
        break;
      }
      case PlannerSpec::Kind::kEuwWeights:
        row.emplace(euw_choice(profile, planner_weights(planner.weights, profile.size()), menu,
                               file.tie_break)
                        .choice);
        break;
      case PlannerSpec::Kind::kRows: {
        auto it = planner.rows.find(id);
        if (it == planner.rows.end()) {
          throw Error(ErrorCode::kMissingMenu, "planner " + planner_id + " has no row for menu " + id);
        }
        row.emplace(menu, it->second);
        break;
      }
    }

    const LpVerdict hull = local_weights(*row, agents, cfg.tol);
    const LpVerdict pareto = respects_pareto_at(*row, agents, cfg.tol);
    Json r = {{"menu", id},
              {"planner_row", row->probs()},
              {"local_weights", hull.feasible},
              {"respects_pareto", pareto.feasible},
              {"distance", hull.distance}};
    if (hull.weights) {
      r["weights"] = std::vector<double>(hull.weights->values().begin(), hull.weights->values().end());
      int violated = 0;
      const std::uint64_t probe_seed = derive_seed(derive_seed(cfg.seed, kProbeStream), d);
      for (int k = 0; k < kProbeCount; ++k) {
        if (!agreement_bounds_check(*row, agents, random_probe(menu, probe_seed, k))) ++violated;
      }
      r["probes"] = kProbeCount;
      r["probe_violations"] = violated;
    }
    const LpVerdict& certified = hull.witness ? hull : pareto;
    if (certified.witness) {
      r["witness"] = {{"c", certified.witness->c}, {"theta", certified.witness->theta},
                      {"margin", certified.margin}};
      const auto probe = probe_from_witness(*certified.witness, menu);
      r["probe"] = probe.probs();
      r["probe_violates_agreement_bounds"] = !agreement_bounds_check(*row, agents, probe);
    }
    if (!hull.feasible || !pareto.feasible) {
      if (violations++ == 0) first_violation = id;
    }
    results.push_back(std::move(r));
  }

  const std::string summary =
      violations == 0 ? "no violation found on " + std::to_string(menus.size()) + " menus"
                      : "violation certified at menu " + first_violation + " (" +
                            std::to_string(violations) + " of " + std::to_string(menus.size()) +
                            " menus)";
  std::ostringstream os;
  if (cfg.format == "json") {
    Json j = {{"planner", planner_name}, {"tol", cfg.tol}, {"menus", results}, {"summary", summary}};
    os << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    os << "menu,local_weights,respects_pareto,distance,margin,witness_c,weights\n";
    for (const auto& r : results) {
      os << csv_field(r["menu"].get<std::string>()) << ','
         << (r["local_weights"].get<bool>() ? "true" : "false") << ','
         << (r["respects_pareto"].get<bool>() ? "true" : "false") << ','
         << g17(r["distance"].get<double>()) << ',';
      if (r.contains("witness")) {
        os << g17(r["witness"]["margin"].get<double>()) << ','
           << join(r["witness"]["c"].get<std::vector<double>>()) << ',';
      } else {
        os << ",,";
      }
      if (r.contains("weights")) os << join(r["weights"].get<std::vector<double>>());
      os << '\n';
    }
  } else {
    for (const auto& r : results) {
      os << "menu " << r["menu"].get<std::string>() << ": "
         << (r["local_weights"].get<bool>() ? "within the agents' hull" : "outside the agents' hull")
         << ", distance " << g17(r["distance"].get<double>()) << '\n';
      if (r.contains("weights")) {
        os << "  weights " << join(r["weights"].get<std::vector<double>>()) << "; "
           << r["probe_violations"].get<int>() << " of " << kProbeCount
           << " probes violate the agreement bounds\n";
      }
      if (r.contains("witness")) {
        os << "  witness c = " << join(r["witness"]["c"].get<std::vector<double>>())
           << ", theta " << g17(r["witness"]["theta"].get<double>()) << ", margin "
           << g17(r["witness"]["margin"].get<double>()) << '\n';
        os << "  probe from witness violates agreement bounds: "
           << (r["probe_violates_agreement_bounds"].get<bool>() ? "yes" : "no") << '\n';
      }
    }
    os << summary << '\n';
  }
  return {os.str(), violations == 0 ? kExitOk : kExitViolation};
}

Outcome cmd_cv(const RunConfig& cfg, const ScenarioFile& file, const std::string& change_id,
               std::vector<double> taus, const std::vector<double>& alpha_in,
               std::size_t cdf_grid, bool simulate) {
  const WelfareScenario& scen = file.welfare_scenario();
  const PriceChange& change = file.price_change(change_id);
  const Weights alpha = alpha_in.empty() ? scen.shares() : user_weights(alpha_in);
  if (taus.empty()) taus = {0.5};

  struct Row {
    std::string measure;
    std::optional<double> tau;
    std::string value;
    std::optional<double> number = std::nullopt;  // set for numeric rows
  };
  std::vector<Row> rows;
  auto add = [&rows](std::string measure, std::optional<double> tau, double x) {
    rows.push_back({std::move(measure), tau, g17(x), x});
  };
  for (double tau : taus) {
    add("distributional", tau, distributional_cv(scen, alpha, tau, change));
    add("stochastic", tau, stochastic_cv(scen, alpha, tau, change));
  }
  add("mean", std::nullopt, mean_cv(scen, alpha, change));

  if (change.moved_goods().size() <= 1) {
    const MedianMeanReport d = median_mean_diagnosis(scen, alpha, change);
    add("diagnosis.median", std::nullopt, d.median);
    add("diagnosis.mean", std::nullopt, d.mean);
    rows.push_back({"diagnosis.ordering", std::nullopt, to_string(d.ordering)});
    rows.push_back({"diagnosis.curvature", std::nullopt, to_string(d.curvature)});
    rows.push_back({"diagnosis.predicted", std::nullopt,
                    d.predicted ? to_string(*d.predicted) : "none"});
    rows.push_back({"diagnosis.matches", std::nullopt, d.matches ? "true" : "false"});
    rows.push_back({"diagnosis.median_at_atom", std::nullopt, d.median_at_atom ? "true" : "false"});
  } else {
    rows.push_back({"diagnosis", std::nullopt, "multiple prices move"});
  }

  if (simulate) {
    auto samples = simulate_cv_samples(scen, alpha, change, cfg.samples, cfg.seed, cfg.threads);
    double sum = 0.0;
    for (double s : samples) sum += s;
    const double n = static_cast<double>(samples.size());
    double ss = 0.0;
    for (double s : samples) ss += (s - sum / n) * (s - sum / n);
    std::sort(samples.begin(), samples.end());
    add("simulated.mean", std::nullopt, sum / n);
    add("simulated.mean_se", std::nullopt, std::sqrt(ss / (n > 1.0 ? n - 1.0 : 1.0) / n));
    for (double tau : taus) {
      // Empirical inf{z : F_N(z) >= tau}.
      const auto k = static_cast<std::size_t>(std::ceil(tau * n - 1e-12));
      add("simulated.quantile", tau, samples[std::max<std::size_t>(k, 1) - 1]);
    }
  }

  std::string cdf_csv;
  if (cdf_grid > 0) cdf_csv = CvCurve(scen, alpha, change).to_csv(cdf_grid);

  std::ostringstream os;
  if (cfg.format == "json") {
    Json j = {{"change", change_id}, {"alpha", alpha.values()}};
    j["rows"] = Json::array();
    for (const auto& r : rows) {
      j["rows"].push_back({{"measure", r.measure},
                           {"tau", r.tau ? Json(*r.tau) : Json(nullptr)},
                           {"value", r.number ? Json(*r.number) : Json(r.value)}});
    }
    if (cdf_grid > 0) {
      Json grid = Json::array();
      std::istringstream lines(cdf_csv);
      std::string line;
      std::getline(lines, line);
      while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        grid.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
      }
      j["cdf"] = grid;
    }
    os << j.dump(2) << '\n';
  } else if (cfg.format == "csv") {
    os << "measure,tau,value\n";
    for (const auto& r : rows) {
      os << r.measure << ',' << (r.tau ? g17(*r.tau) : "") << ',' << csv_field(r.value) << '\n';
    }
    if (cdf_grid > 0) os << '\n' << cdf_csv;
  } else {
    os << "price change " << change_id << ", alpha " << join(std::vector<double>(
                                                            alpha.values().begin(), alpha.values().end()))
       << '\n';
    for (const auto& r : rows) {
      os << r.measure;
      if (r.tau) os << " tau=" << g17(*r.tau);
      os << ": " << r.value << '\n';
    }
    if (cdf_grid > 0) os << cdf_csv;
  }
  return {os.str()};
}

struct ExampleOverrides {
  std::optional<double> eta, delta, eps, lo, hi;
  std::string tie_break;
};

Outcome cmd_example(const RunConfig& cfg, const std::string& name, const ExampleOverrides& ov,
                    bool samples_given) {
  ExampleReport report;
  if (name == "euw") {
    report = run_euw_example();
  } else if (name == "diamond") {
    report = run_diamond_example(ov.tie_break.empty() ? TieBreak::kUniform
                                                      : parse_tie_break(ov.tie_break));
  } else if (name == "median-counterexample") {
    report = run_median_counterexample();
  } else if (name == "condorcet") {
    CondorcetConfig c;
    if (ov.eta) c.eta = *ov.eta;
    if (ov.delta) c.delta = *ov.delta;
    if (ov.eps) c.eps_angle = *ov.eps;
    if (ov.lo) c.uniform_lo = *ov.lo;
    if (ov.hi) c.uniform_hi = *ov.hi;
    if (samples_given) c.samples = cfg.samples;
    c.seed = cfg.seed;
    c.threads = cfg.threads;
    report = run_condorcet_example(c);
  } else {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown example '" + name + "' (euw, diamond, condorcet, median-counterexample)");
  }

  std::ostringstream os;
  if (cfg.format == "json") {
    os << to_json(report).dump(2) << '\n';
  } else if (cfg.format == "csv") {
    os << "kind,label,value\n";
    for (const auto& v : report.values) os << "value," << csv_field(v.label) << ',' << g17(v.value) << '\n';
    for (const auto& c : report.checks) {
      os << "check," << csv_field(c.label) << ',' << (c.pass ? "pass" : "fail") << '\n';
    }
  } else {
    os << to_text(report);
  }
  return {os.str(), report.all_pass() ? kExitOk : kExitViolation};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Utilitarian social choice and distributional welfare measures", "welfarelab"};
  app.fallthrough();
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--scenario", cfg.scenario, "Scenario file (JSON)");
  app.add_option("--seed", cfg.seed, "Random seed; WELFARELAB_SEED overrides it");
  auto* samples_opt = app.add_option("--samples", cfg.samples, "Monte Carlo samples")
                          ->check(CLI::PositiveNumber);
  app.add_option("--tol", cfg.tol, "Tolerance of the utilitarian checks")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--output", cfg.output, "Write results to this path");
  app.add_option("--threads", cfg.threads, "Worker threads (0: automatic)");

  auto* choice = app.add_subcommand("choice", "Choice distributions of agents and a planner on a menu");
  std::string menu_id, planner_id;
  std::vector<double> weights;
  choice->add_option("--menu", menu_id, "Menu id")->required();
  choice->add_option("--planner", planner_id, "Planner id from the scenario");
  choice->add_option("--weights", weights, "Weighted utilitarian planner weights")->delimiter(',');

  auto* check = app.add_subcommand("check-utilitarian",
                                   "Check a planner against the agents menu by menu");
  std::vector<std::string> check_menus;
  std::uint64_t random_menus = 0;
  check->add_option("--planner", planner_id, "Planner id from the scenario");
  check->add_option("--weights", weights, "Weighted utilitarian planner weights")->delimiter(',');
  check->add_option("--menu", check_menus, "Menu ids (default: all menus in the file)");
  check->add_option("--random-menus", random_menus, "Check on N random menus instead");

  auto* cv = app.add_subcommand("cv", "Compensating-variation measures for a price change");
  std::string change_id;
  std::vector<double> taus, alpha;
  std::size_t cdf_grid = 0;
  bool simulate = false;
  cv->add_option("--change", change_id, "Price change id")->required();
  cv->add_option("--tau", taus, "Quantile levels")->delimiter(',');
  cv->add_option("--alpha", alpha, "Type weights (default: population shares)")->delimiter(',');
  cv->add_option("--cdf-grid", cdf_grid, "Also emit the CDF on this many grid points");
  cv->add_flag("--simulate", simulate, "Also estimate the measures from simulated CV draws");

  auto* example = app.add_subcommand("example", "Run a worked example");
  std::string example_name;
  ExampleOverrides ov;
  example->add_option("name", example_name, "euw | diamond | condorcet | median-counterexample")
      ->required();
  example->add_option("--eta", ov.eta, "Condorcet: perturbation weight");
  example->add_option("--delta", ov.delta, "Condorcet: triangular density tilt");
  example->add_option("--eps", ov.eps, "Condorcet: lottery angle offset");
  example->add_option("--uniform-lo", ov.lo, "Condorcet: agents 1-2 angle interval start");
  example->add_option("--uniform-hi", ov.hi, "Condorcet: agents 1-2 angle interval end");
  example->add_option("--tie-break", ov.tie_break, "Diamond: uniform | lexicographic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (const char* env = std::getenv("WELFARELAB_SEED"); env != nullptr && *env != '\0') {
      try {
        std::size_t used = 0;
        const std::string s(env);
        cfg.seed = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
      } catch (const std::exception&) {
        throw Error(ErrorCode::kInvalidArgument, "WELFARELAB_SEED is not an unsigned integer");
      }
    }

    auto scenario = [&]() {
      if (cfg.scenario.empty()) throw Error(ErrorCode::kInvalidArgument, "--scenario is required");
      return load_scenario(cfg.scenario);
    };

    Outcome result;
    if (choice->parsed()) {
      result = cmd_choice(cfg, scenario(), menu_id, planner_id, weights);
    } else if (check->parsed()) {
      result = cmd_check(cfg, scenario(), planner_id, weights, check_menus, random_menus);
    } else if (cv->parsed()) {
      result = cmd_cv(cfg, scenario(), change_id, taus, alpha, cdf_grid, simulate);
    } else {
      result = cmd_example(cfg, example_name, ov, samples_opt->count() > 0);
    }

    if (cfg.output.empty()) {
      out << result.text;
    } else {
      std::ofstream file(cfg.output, std::ios::binary);
      if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + cfg.output + "'");
      file << result.text;
    }
    return result.code;
  } catch (const Error& e) {
    err << "welfarelab: " << e.what() << '\n';
    return is_input_error(e.code()) ? kExitInputError : kExitDomainError;
  } catch (const std::exception& e) {
    err << "welfarelab: " << e.what() << '\n';
    return kExitDomainError;
  }
}

}  // namespace welfarelab
