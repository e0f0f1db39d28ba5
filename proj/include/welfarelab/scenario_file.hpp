#pragma once

// JSON scenario documents. A file may carry a social-choice section
// (lotteries, menus, agent profile, planners), a welfare section (goods,
// income, consumer types, price changes), or both. Every key is checked
// against the schema before anything is built; errors name the JSON path.
//
//   {
//     "lotteries": {"a": [1, 0], "b": [0, 1]},
//     "menus": {"D": ["a", "b"]},
//     "profile": {
//       "tie_break": "uniform",
//       "agents": [
//         {"name": "pop1", "atoms": [{"utility": [1, 0], "weight": 0.9},
//                                    {"utility": [-1, 0], "weight": 0.1}]},
//         {"name": "noisy", "sampler": {"kind": "gaussian", "mean": [1, 0], "sd": 0.5}}
//       ]
//     },
//     "planners": {
//       "mix": {"weights": [0.5, 0.5]},
//       "euw": {"euw_weights": [0.5, 0.5]},
//       "fixed": {"rows": {"D": [1, 0]}}
//     },
//     "welfare": {
//       "goods": ["g1", "g2"], "income": 10,
//       "types": [{"name": "t", "share": 1,
//                  "utility": [{"form": "cobb-douglas", "coef": 1, "intercept": 0},
//                              {"form": "linear", "coef": 2, "intercept": 0.5}]}]
//     },
//     "price_changes": {"up": {"p0": [1, 1], "p1": [1, 2]}}
//   }

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "welfarelab/aggregation.hpp"
#include "welfarelab/lottery.hpp"
#include "welfarelab/reu.hpp"
#include "welfarelab/welfare.hpp"

namespace welfarelab {

struct SamplerSpec {
  std::string kind;  // "gaussian" or "gumbel"
  std::vector<double> mean;
  double scale = 0.0;  // sd for gaussian, scale for gumbel
};

struct AgentSpec {
  std::string name;
  std::optional<AtomicReu> atoms;
  std::optional<SamplerSpec> sampler;

  AgentModel build() const;
};

struct PlannerSpec {
  enum class Kind { kWeights, kEuwWeights, kRows };
  Kind kind = Kind::kWeights;
  std::vector<double> weights;                          // kWeights, kEuwWeights
  std::map<std::string, std::vector<double>> rows;      // kRows, by menu id
};

struct ScenarioFile {
  std::vector<std::pair<std::string, Lottery>> lotteries;
  std::vector<std::pair<std::string, std::vector<std::string>>> menu_members;
  std::vector<std::pair<std::string, DecisionProblem>> menus;
  TieBreak tie_break = TieBreak::kUniform;
  std::vector<AgentSpec> agents;
  std::vector<std::pair<std::string, PlannerSpec>> planners;
  std::optional<WelfareScenario> welfare;
  std::vector<std::pair<std::string, PriceChange>> price_changes;

  bool has_profile() const { return !agents.empty(); }
  AgentProfile profile() const;  // SchemaError when the file has none
  const DecisionProblem& menu(const std::string& id) const;          // MissingMenu
  const PlannerSpec& planner(const std::string& id) const;           // SchemaError
  const PriceChange& price_change(const std::string& id) const;      // SchemaError
  const WelfareScenario& welfare_scenario() const;                   // SchemaError
};

ScenarioFile parse_scenario(const nlohmann::ordered_json& doc);
ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario(const std::string& path);

nlohmann::ordered_json to_json(const ScenarioFile& file);

}  // namespace welfarelab
