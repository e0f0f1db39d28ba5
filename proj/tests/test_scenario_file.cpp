#include <doctest.h>

#include <string>

#include "welfarelab/errors.hpp"
#include "welfarelab/scenario_file.hpp"

using namespace welfarelab;

namespace {

const std::string kDir = std::string(WELFARELAB_SOURCE_DIR) + "/scenarios/";

const char* kSmall = R"({
  "lotteries": {"a": [1, 0], "b": [0, 1], "c": [0.25, 0.75]},
  "menus": {"D": ["a", "b"], "E": ["a", "b", "c"]},
  "profile": {
    "tie_break": "uniform",
    "agents": [
      {"name": "one", "atoms": [{"utility": [1, 0], "weight": 0.9},
                                {"utility": [-1, 0], "weight": 0.1}]},
      {"name": "noisy", "sampler": {"kind": "gaussian", "mean": [1, 0], "sd": 0.5}}
    ]
  },
  "planners": {
    "mix": {"weights": [0.5, 0.5]},
    "euw": {"euw_weights": [0.5, 0.5]},
    "fixed": {"rows": {"D": [1, 0]}}
  },
  "welfare": {
    "goods": ["g1", "g2"], "income": 10,
    "types": [{"name": "t", "share": 1,
               "utility": [{"form": "cobb-douglas", "coef": 1, "intercept": 0},
                           {"form": "linear", "coef": 2, "intercept": 0.5}]}]
  },
  "price_changes": {"up": {"p0": [1, 1], "p1": [1, 2]}}
})";

// Replace the first occurrence of `from` in the small document.
std::string edited(const std::string& from, const std::string& to) {
  std::string s = kSmall;
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

std::string schema_message(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchemaError);
    return e.what();
  }
  FAIL("document was accepted");
  return {};
}

}  // namespace

TEST_CASE("parse the documented example") {
  const auto f = parse_scenario_text(kSmall);
  CHECK(f.lotteries.size() == 3);
  CHECK(f.menu("E").size() == 3);
  CHECK(f.menu("D")[0][0] == 1.0);
  CHECK(f.agents.size() == 2);
  CHECK(f.agents[0].atoms.has_value());
  CHECK(f.agents[1].sampler->kind == "gaussian");
  CHECK(f.agents[1].sampler->scale == 0.5);
  CHECK(f.planner("fixed").kind == PlannerSpec::Kind::kRows);
  CHECK(f.planner("euw").kind == PlannerSpec::Kind::kEuwWeights);
  CHECK(f.planner("mix").weights == std::vector<double>{0.5, 0.5});
  CHECK(f.welfare_scenario().goods().size() == 2);
  CHECK(f.price_change("up").p1()[1] == 2.0);
  CHECK(f.profile().size() == 2);
}

TEST_CASE("lookups of absent ids") {
  const auto f = parse_scenario_text(kSmall);
  try {
    f.menu("nope");
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingMenu);
  }
  CHECK_THROWS_AS(f.planner("nope"), Error);
  CHECK_THROWS_AS(f.price_change("nope"), Error);
  const auto bare = parse_scenario_text(R"({"lotteries": {"a": [1]}})");
  CHECK_FALSE(bare.has_profile());
  CHECK_THROWS_AS(bare.profile(), Error);
  CHECK_THROWS_AS(bare.welfare_scenario(), Error);
}

TEST_CASE("round trip through JSON is stable") {
  const auto f = parse_scenario_text(kSmall);
  const auto once = to_json(f);
  const auto g = parse_scenario(once);
  CHECK(to_json(g) == once);
  CHECK(g.menu("E")[2][1] == 0.75);
  CHECK(g.planner("fixed").rows.at("D") == std::vector<double>{1.0, 0.0});
  CHECK(g.agents[0].atoms->atoms().size() == 2);
  CHECK(g.welfare_scenario().income() == 10.0);
  for (const char* name : {"euw.json", "sampled.json", "cobb_douglas.json", "quasilinear.json"}) {
    const auto h = load_scenario(kDir + name);
    CHECK(to_json(parse_scenario(to_json(h))) == to_json(h));
  }
}

TEST_CASE("unknown keys are reported with their path") {
  auto msg = schema_message(edited("\"tie_break\"", "\"tiebreak\""));
  CHECK(msg.find("$.profile.tiebreak") != std::string::npos);
  msg = schema_message(edited("\"sd\": 0.5", "\"sd\": 0.5, \"mu\": 1"));
  CHECK(msg.find("$.profile.agents[1].sampler.mu") != std::string::npos);
  msg = schema_message(edited("\"lotteries\"", "\"lottery\""));
  CHECK(msg.find("$.lottery") != std::string::npos);
  msg = schema_message(edited("\"intercept\": 0}", "\"intercept\": 0, \"x\": 1}"));
  CHECK(msg.find("x") != std::string::npos);
}

TEST_CASE("malformed values are schema errors") {
  schema_message(edited("[0.25, 0.75]", "[0.25, 0.7]"));    // not a distribution
  schema_message(edited("[0.25, 0.75]", "[0.25, \"x\"]"));  // not a number
  schema_message(edited("[0.25, 0.75]", "[0.25, 0.5, 0.25]"));  // wrong length
  schema_message(edited("\"gaussian\"", "\"cauchy\""));
  schema_message(edited("\"weight\": 0.1", "\"weight\": 0.2"));
  schema_message(edited("\"sd\": 0.5", "\"scale\": 0.5"));
  schema_message(edited("\"uniform\"", "\"coin\""));
  schema_message("{not json");
  schema_message("[1, 2]");
  auto msg = schema_message(edited("[\"a\", \"b\", \"c\"]", "[\"a\", \"b\", \"q\"]"));
  CHECK(msg.find("$.menus.E") != std::string::npos);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_scenario(kDir + "does-not-exist.json"), Error);
}

TEST_CASE("shipped scenario files parse") {
  const auto euw = load_scenario(kDir + "euw.json");
  CHECK(euw.menu("D").size() == 2);
  CHECK(euw.planners.size() == 3);
  const auto sampled = load_scenario(kDir + "sampled.json");
  CHECK(sampled.agents.size() == 3);
  CHECK(sampled.menu("wide").size() == 5);
  const auto cd = load_scenario(kDir + "cobb_douglas.json");
  CHECK(cd.price_changes.size() == 4);
  CHECK(cd.welfare_scenario().types().size() == 2);
  const auto ql = load_scenario(kDir + "quasilinear.json");
  CHECK(ql.welfare.has_value());
}
