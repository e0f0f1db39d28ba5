#include "welfarelab/scenario_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "welfarelab/errors.hpp"

namespace welfarelab {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::kSchemaError, "at " + path + ": " + msg);
}

void expect_object(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void allow_keys(const Json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  expect_object(j, path);
  for (const auto& [key, _] : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* a) { return key == a; });
    if (!known) fail(path + "." + key, "unknown key");
  }
}

const Json& require(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

double get_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::vector<double> get_numbers(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(get_number(j[k], path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

// Runs a constructor and re-labels its validation errors with the path.
template <class F>
auto at_path(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchemaError) throw;
    fail(path, e.what());
  }
}

AtomicReu parse_atoms(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of atoms");
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    allow_keys(j[k], p, {"utility", "weight"});
    auto u = get_numbers(require(j[k], p, "utility"), p + ".utility");
    const double w = get_number(require(j[k], p, "weight"), p + ".weight");
    atoms.push_back(Atom{at_path(p + ".utility", [&] { return VnmUtility(std::move(u)); }), w});
  }
  return at_path(path, [&] { return AtomicReu(std::move(atoms)); });
}

SamplerSpec parse_sampler(const Json& j, const std::string& path) {
  allow_keys(j, path, {"kind", "mean", "sd", "scale"});
  SamplerSpec s;
  s.kind = get_string(require(j, path, "kind"), path + ".kind");
  s.mean = get_numbers(require(j, path, "mean"), path + ".mean");
  if (s.kind == "gaussian") {
    if (j.contains("scale")) fail(path + ".scale", "gaussian samplers take 'sd'");
    s.scale = get_number(require(j, path, "sd"), path + ".sd");
  } else if (s.kind == "gumbel") {
    if (j.contains("sd")) fail(path + ".sd", "gumbel samplers take 'scale'");
    s.scale = get_number(require(j, path, "scale"), path + ".scale");
  } else {
    fail(path + ".kind", "unknown sampler kind '" + s.kind + "'");
  }
  if (s.mean.empty()) fail(path + ".mean", "empty mean utility");
  if (!(s.scale >= 0.0)) fail(path, "scale must be nonnegative");
  return s;
}

void parse_profile(const Json& j, ScenarioFile& f) {
  const std::string path = "$.profile";
  allow_keys(j, path, {"tie_break", "agents"});
  if (j.contains("tie_break")) {
    const std::string tb = get_string(j["tie_break"], path + ".tie_break");
    f.tie_break = at_path(path + ".tie_break", [&] { return parse_tie_break(tb); });
  }
  const Json& agents = require(j, path, "agents");
  if (!agents.is_array() || agents.empty()) fail(path + ".agents", "expected a nonempty array");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string p = path + ".agents[" + std::to_string(i) + "]";
    allow_keys(agents[i], p, {"name", "atoms", "sampler"});
    AgentSpec a;
    a.name = agents[i].contains("name") ? get_string(agents[i]["name"], p + ".name")
                                        : "agent" + std::to_string(i + 1);
    const bool has_atoms = agents[i].contains("atoms");
    const bool has_sampler = agents[i].contains("sampler");
    if (has_atoms == has_sampler) fail(p, "exactly one of 'atoms' or 'sampler' is required");
    if (has_atoms) a.atoms = parse_atoms(agents[i]["atoms"], p + ".atoms");
    if (has_sampler) a.sampler = parse_sampler(agents[i]["sampler"], p + ".sampler");
    f.agents.push_back(std::move(a));
  }
  const std::size_t dim = std::visit([](const auto& m) { return m.dimension(); },
                                     f.agents.front().build());
  for (std::size_t i = 0; i < f.agents.size(); ++i) {
    const std::size_t d = std::visit([](const auto& m) { return m.dimension(); },
                                     f.agents[i].build());
    if (d != dim) {
      fail(path + ".agents[" + std::to_string(i) + "]", "dimension differs from agent 1");
    }
  }
  if (!f.menus.empty() && f.menus.front().second.dimension() != dim) {
    fail(path, "agent dimension " + std::to_string(dim) + " differs from the lotteries");
  }
}

void parse_planners(const Json& j, ScenarioFile& f) {
  const std::string path = "$.planners";
  expect_object(j, path);
  for (const auto& [id, spec] : j.items()) {
    const std::string p = path + "." + id;
    allow_keys(spec, p, {"weights", "euw_weights", "rows"});
    if (spec.size() != 1) fail(p, "exactly one of 'weights', 'euw_weights', 'rows' is required");
    PlannerSpec ps;
    if (spec.contains("weights")) {
      ps.kind = PlannerSpec::Kind::kWeights;
      ps.weights = get_numbers(spec["weights"], p + ".weights");
    } else if (spec.contains("euw_weights")) {
      ps.kind = PlannerSpec::Kind::kEuwWeights;
      ps.weights = get_numbers(spec["euw_weights"], p + ".euw_weights");
    } else {
      ps.kind = PlannerSpec::Kind::kRows;
      expect_object(spec["rows"], p + ".rows");
      for (const auto& [menu_id, row] : spec["rows"].items()) {
        const std::string rp = p + ".rows." + menu_id;
        auto probs = get_numbers(row, rp);
        const DecisionProblem& menu = at_path(rp, [&]() -> const DecisionProblem& {
          return f.menu(menu_id);
        });
        at_path(rp, [&] { return ChoiceDistribution(menu, probs); });
        ps.rows[menu_id] = std::move(probs);
      }
    }
    if (ps.kind != PlannerSpec::Kind::kRows) {
      at_path(p, [&] { return Weights(ps.weights); });
      if (!f.agents.empty() && ps.weights.size() != f.agents.size()) {
        fail(p, "needs one weight per agent (" + std::to_string(f.agents.size()) + ")");
      }
    }
    f.planners.emplace_back(id, std::move(ps));
  }
}

void parse_welfare(const Json& j, ScenarioFile& f) {
  const std::string path = "$.welfare";
  allow_keys(j, path, {"goods", "income", "types"});
  const Json& goods_j = require(j, path, "goods");
  if (!goods_j.is_array()) fail(path + ".goods", "expected an array of names");
  std::vector<std::string> goods;
  for (std::size_t g = 0; g < goods_j.size(); ++g) {
    goods.push_back(get_string(goods_j[g], path + ".goods[" + std::to_string(g) + "]"));
  }
  const double income = get_number(require(j, path, "income"), path + ".income");
  const Json& types_j = require(j, path, "types");
  if (!types_j.is_array()) fail(path + ".types", "expected an array");
  std::vector<ConsumerType> types;
  for (std::size_t i = 0; i < types_j.size(); ++i) {
    const std::string p = path + ".types[" + std::to_string(i) + "]";
    allow_keys(types_j[i], p, {"name", "share", "utility"});
    ConsumerType t;
    t.name = types_j[i].contains("name") ? get_string(types_j[i]["name"], p + ".name")
                                         : "type" + std::to_string(i + 1);
    t.share = get_number(require(types_j[i], p, "share"), p + ".share");
    const Json& us = require(types_j[i], p, "utility");
    if (!us.is_array()) fail(p + ".utility", "expected an array, one entry per good");
    for (std::size_t g = 0; g < us.size(); ++g) {
      const std::string up = p + ".utility[" + std::to_string(g) + "]";
      allow_keys(us[g], up, {"form", "coef", "intercept"});
      GoodUtility u;
      const std::string form = get_string(require(us[g], up, "form"), up + ".form");
      u.form = at_path(up + ".form", [&] { return parse_utility_form(form); });
      u.coef = get_number(require(us[g], up, "coef"), up + ".coef");
      if (us[g].contains("intercept")) u.intercept = get_number(us[g]["intercept"], up + ".intercept");
      t.utility.push_back(u);
    }
    types.push_back(std::move(t));
  }
  f.welfare = at_path(path, [&] {
    return WelfareScenario(std::move(goods), income, std::move(types));
  });
}

void parse_price_changes(const Json& j, ScenarioFile& f) {
  const std::string path = "$.price_changes";
  expect_object(j, path);
  for (const auto& [id, spec] : j.items()) {
    const std::string p = path + "." + id;
    allow_keys(spec, p, {"p0", "p1"});
    auto p0 = get_numbers(require(spec, p, "p0"), p + ".p0");
    auto p1 = get_numbers(require(spec, p, "p1"), p + ".p1");
    PriceChange change = at_path(p, [&] { return PriceChange(std::move(p0), std::move(p1)); });
    if (f.welfare && change.size() != f.welfare->num_goods()) {
      fail(p, "price vectors must have one entry per good");
    }
    f.price_changes.emplace_back(id, std::move(change));
  }
}

}  // namespace

AgentModel AgentSpec::build() const {
  if (atoms) return *atoms;
  const VnmUtility mean(sampler->mean);
  if (sampler->kind == "gaussian") return SamplerReu::gaussian(mean, sampler->scale);
  return SamplerReu::gumbel(mean, sampler->scale);
}

AgentProfile ScenarioFile::profile() const {
  if (agents.empty()) throw Error(ErrorCode::kSchemaError, "scenario has no 'profile' section");
  std::vector<AgentModel> models;
  for (const auto& a : agents) models.push_back(a.build());
  return AgentProfile(std::move(models));
}

const DecisionProblem& ScenarioFile::menu(const std::string& id) const {
  for (const auto& [name, menu] : menus) {
    if (name == id) return menu;
  }
  throw Error(ErrorCode::kMissingMenu, "no menu '" + id + "'");
}

const PlannerSpec& ScenarioFile::planner(const std::string& id) const {
  for (const auto& [name, p] : planners) {
    if (name == id) return p;
  }
  throw Error(ErrorCode::kSchemaError, "no planner '" + id + "'");
}

const PriceChange& ScenarioFile::price_change(const std::string& id) const {
  for (const auto& [name, c] : price_changes) {
    if (name == id) return c;
  }
  throw Error(ErrorCode::kSchemaError, "no price change '" + id + "'");
}

const WelfareScenario& ScenarioFile::welfare_scenario() const {
  if (!welfare) throw Error(ErrorCode::kSchemaError, "scenario has no 'welfare' section");
  return *welfare;
}

ScenarioFile parse_scenario(const Json& doc) {
  allow_keys(doc, "$",
             {"lotteries", "menus", "profile", "planners", "welfare", "price_changes"});
  ScenarioFile f;
  if (doc.contains("lotteries")) {
    expect_object(doc["lotteries"], "$.lotteries");
    for (const auto& [id, probs] : doc["lotteries"].items()) {
      const std::string p = "$.lotteries." + id;
      auto v = get_numbers(probs, p);
      f.lotteries.emplace_back(id, at_path(p, [&] { return make_lottery(v); }));
    }
  }
  if (doc.contains("menus")) {
    expect_object(doc["menus"], "$.menus");
    for (const auto& [id, members] : doc["menus"].items()) {
      const std::string p = "$.menus." + id;
      if (!members.is_array() || members.empty()) fail(p, "expected a nonempty array of lottery ids");
      std::vector<std::string> names;
      std::vector<Lottery> alts;
      for (std::size_t k = 0; k < members.size(); ++k) {
        const std::string mp = p + "[" + std::to_string(k) + "]";
        const std::string name = get_string(members[k], mp);
        auto it = std::find_if(f.lotteries.begin(), f.lotteries.end(),
                               [&](const auto& l) { return l.first == name; });
        if (it == f.lotteries.end()) fail(mp, "unknown lottery '" + name + "'");
        names.push_back(name);
        alts.push_back(it->second);
      }
      f.menus.emplace_back(id, at_path(p, [&] { return DecisionProblem(std::move(alts)); }));
      f.menu_members.emplace_back(id, std::move(names));
    }
  }
  if (doc.contains("profile")) parse_profile(doc["profile"], f);
  if (doc.contains("planners")) parse_planners(doc["planners"], f);
  if (doc.contains("welfare")) parse_welfare(doc["welfare"], f);
  if (doc.contains("price_changes")) parse_price_changes(doc["price_changes"], f);
  return f;
}

ScenarioFile parse_scenario_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, std::string("malformed JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kSchemaError, "cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

nlohmann::ordered_json to_json(const ScenarioFile& f) {
  Json doc = Json::object();
  if (!f.lotteries.empty()) {
    doc["lotteries"] = Json::object();
    for (const auto& [id, l] : f.lotteries) {
      doc["lotteries"][id] = std::vector<double>(l.probs().begin(), l.probs().end());
    }
  }
  if (!f.menu_members.empty()) {
    doc["menus"] = Json::object();
    for (const auto& [id, names] : f.menu_members) doc["menus"][id] = names;
  }
  if (!f.agents.empty()) {
    Json agents = Json::array();
    for (const auto& a : f.agents) {
      Json aj = {{"name", a.name}};
      if (a.atoms) {
        Json atoms = Json::array();
        for (const Atom& at : a.atoms->atoms()) {
          atoms.push_back({{"utility", std::vector<double>(at.utility.values().begin(),
                                                           at.utility.values().end())},
                           {"weight", at.weight}});
        }
        aj["atoms"] = atoms;
      } else {
        Json s = {{"kind", a.sampler->kind}, {"mean", a.sampler->mean}};
        s[a.sampler->kind == "gaussian" ? "sd" : "scale"] = a.sampler->scale;
        aj["sampler"] = s;
      }
      agents.push_back(aj);
    }
    doc["profile"] = {{"tie_break", std::string(to_string(f.tie_break))}, {"agents", agents}};
  }
  if (!f.planners.empty()) {
    doc["planners"] = Json::object();
    for (const auto& [id, p] : f.planners) {
      switch (p.kind) {
        case PlannerSpec::Kind::kWeights: doc["planners"][id] = {{"weights", p.weights}}; break;
        case PlannerSpec::Kind::kEuwWeights:
          doc["planners"][id] = {{"euw_weights", p.weights}};
          break;
        case PlannerSpec::Kind::kRows: {
          Json rows = Json::object();
          for (const auto& [menu_id, row] : p.rows) rows[menu_id] = row;
          doc["planners"][id] = {{"rows", rows}};
          break;
        }
      }
    }
  }
  if (f.welfare) {
    Json types = Json::array();
    for (const auto& t : f.welfare->types()) {
      Json us = Json::array();
      for (const auto& u : t.utility) {
        us.push_back({{"form", to_string(u.form)}, {"coef", u.coef}, {"intercept", u.intercept}});
      }
      types.push_back({{"name", t.name}, {"share", t.share}, {"utility", us}});
    }
    doc["welfare"] = {
        {"goods", f.welfare->goods()}, {"income", f.welfare->income()}, {"types", types}};
  }
  if (!f.price_changes.empty()) {
    doc["price_changes"] = Json::object();
    for (const auto& [id, c] : f.price_changes) {
      doc["price_changes"][id] = {{"p0", c.p0()}, {"p1", c.p1()}};
    }
  }
  return doc;
}

}  // namespace welfarelab
