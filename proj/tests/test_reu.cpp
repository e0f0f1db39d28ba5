#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "welfarelab/errors.hpp"
#include "welfarelab/reu.hpp"
#include "welfarelab/scenarios.hpp"

using namespace welfarelab;

namespace {

const DecisionProblem kAb({make_lottery({1.0, 0.0}), make_lottery({0.0, 1.0})});

AtomicReu population(double p_like) {
  return AtomicReu({{VnmUtility{1.0, 0.0}, p_like}, {VnmUtility{-1.0, 0.0}, 1.0 - p_like}});
}

oracle::Mat to_mat(const DecisionProblem& d) {
  oracle::Mat m;
  for (const auto& x : d) m.emplace_back(x.probs().begin(), x.probs().end());
  return m;
}

DecisionProblem random_menu(std::size_t size, std::size_t dim, std::mt19937_64& rng) {
  std::vector<Lottery> alts;
  for (std::size_t j = 0; j < size; ++j) alts.emplace_back(oracle::random_simplex(dim, rng));
  return DecisionProblem(std::move(alts));
}

}  // namespace

TEST_CASE("atoms_choice_distribution on the two-population example") {
  const auto row = atoms_choice_distribution(population(0.9), kAb);
  CHECK(row[0] == doctest::Approx(0.9).epsilon(1e-12));
  CHECK(row[1] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(row.tie_break() == TieBreak::kUniform);
  CHECK_FALSE(row.std_errors().has_value());
}

TEST_CASE("indifferent atom is split by the tie-break rule") {
  const auto zero = AtomicReu::degenerate(VnmUtility{0.0, 0.0});
  const auto uniform = atoms_choice_distribution(zero, kAb, TieBreak::kUniform);
  CHECK(uniform[0] == 0.5);
  CHECK(uniform[1] == 0.5);
  const auto lex = atoms_choice_distribution(zero, kAb, TieBreak::kLexicographicFirst);
  CHECK(lex[0] == 1.0);
  CHECK(lex[1] == 0.0);
  CHECK(lex.tie_break() == TieBreak::kLexicographicFirst);
}

TEST_CASE("atoms_choice_distribution matches per-atom enumeration") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const DecisionProblem d = random_menu(3, 3, rng);
    oracle::Mat utils;
    std::vector<Atom> atoms;
    const auto w = oracle::random_simplex(4, rng);
    for (int a = 0; a < 4; ++a) {
      std::vector<double> u{n(rng), n(rng), 0.0};
      if (a == 3 && t % 3 == 0) u = {0.0, 0.0, 0.0};  // force a tie now and then
      utils.push_back(u);
      atoms.push_back({VnmUtility(u), w[a]});
    }
    const auto row = atoms_choice_distribution(AtomicReu(atoms), d);
    const auto expect = oracle::atoms_row(to_mat(d), utils, w);
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(row[j] - expect[j]) <= 1e-12);
  }
}

TEST_CASE("atoms_choice_distribution is invariant to atom order and splitting") {
  const DecisionProblem d({make_lottery({1.0, 0.0, 0.0}), make_lottery({0.0, 1.0, 0.0}),
                           make_lottery({0.2, 0.2, 0.6})});
  const AtomicReu a({{VnmUtility{1.0, 0.5, 0.0}, 0.3}, {VnmUtility{-1.0, 2.0, 0.0}, 0.7}});
  const AtomicReu b({{VnmUtility{-1.0, 2.0, 0.0}, 0.4}, {VnmUtility{1.0, 0.5, 0.0}, 0.3},
                     {VnmUtility{-1.0, 2.0, 0.0}, 0.3}});
  const auto ra = atoms_choice_distribution(a, d);
  const auto rb = atoms_choice_distribution(b, d);
  for (std::size_t j = 0; j < d.size(); ++j) CHECK(std::abs(ra[j] - rb[j]) <= 1e-12);
  // Regular instance: tie-break rule does not matter.
  CHECK(tie_probability(a, d) == 0.0);
  const auto lex = atoms_choice_distribution(a, d, TieBreak::kLexicographicFirst);
  for (std::size_t j = 0; j < d.size(); ++j) CHECK(lex[j] == ra[j]);
}

TEST_CASE("atoms_choice_distribution rejects dimension mismatch") {
  const auto pi = AtomicReu::degenerate(VnmUtility{1.0, 0.0, 0.0});
  CHECK_THROWS_AS(atoms_choice_distribution(pi, kAb), Error);
}

TEST_CASE("degenerate sampler reproduces the single-atom row exactly") {
  const DecisionProblem d({make_lottery({1.0, 0.0, 0.0}), make_lottery({0.3, 0.3, 0.4}),
                           make_lottery({0.0, 0.0, 1.0})});
  for (const VnmUtility& u : {VnmUtility{1.0, 0.2, 0.0}, VnmUtility{0.0, 0.0, 0.0}}) {
    const auto exact = atoms_choice_distribution(AtomicReu::degenerate(u), d);
    const auto mc = mc_choice_distribution(SamplerReu::degenerate(u), d, 1000, 5);
    for (std::size_t j = 0; j < d.size(); ++j) CHECK(mc[j] == exact[j]);
  }
}

TEST_CASE("Gumbel sampler matches the binary logit probability") {
  const double scale = 0.7;
  const VnmUtility mean{0.4, 0.1, 0.0};
  const DecisionProblem d({make_lottery({1.0, 0.0, 0.0}), make_lottery({0.0, 1.0, 0.0})});
  const auto row = mc_choice_distribution(SamplerReu::gumbel(mean, scale), d, 200000, 3);
  const auto p = oracle::softmax({0.4 / scale, 0.1 / scale});
  REQUIRE(row.std_errors().has_value());
  const double se = (*row.std_errors())[0];
  CHECK(se == doctest::Approx(std::sqrt(row[0] * (1 - row[0]) / 200000.0)).epsilon(1e-12));
  CHECK(std::abs(row[0] - p[0]) <= 3 * se);
}

TEST_CASE("Condorcet agent 1 prefers x to y") {
  CondorcetConfig cfg;
  const auto agents = condorcet_agents(cfg);
  const auto pts = condorcet_points(cfg.eps_angle);
  const DecisionProblem xy({planar_lottery(pts[0]), planar_lottery(pts[1])});
  const auto row = mc_choice_distribution(agents[0], xy, 100000, 1);
  CHECK(row[0] + 3 * (*row.std_errors())[0] >= 1 - cfg.eta);
}

TEST_CASE("Monte Carlo rows do not depend on the thread count") {
  const DecisionProblem d({make_lottery({1.0, 0.0, 0.0}), make_lottery({0.0, 1.0, 0.0}),
                           make_lottery({0.0, 0.0, 1.0})});
  const auto pi = SamplerReu::gaussian(VnmUtility{0.3, 0.2, 0.0}, 1.0);
  const auto one = mc_choice_distribution(pi, d, 50000, 17, TieBreak::kUniform, 1);
  const auto four = mc_choice_distribution(pi, d, 50000, 17, TieBreak::kUniform, 4);
  CHECK(one.probs() == four.probs());
  CHECK(*one.std_errors() == *four.std_errors());
  const auto other = mc_choice_distribution(pi, d, 50000, 18, TieBreak::kUniform, 1);
  CHECK(other.probs() != one.probs());
}

TEST_CASE("Monte Carlo error shrinks like one over root N") {
  const DecisionProblem d({make_lottery({1.0, 0.0, 0.0}), make_lottery({0.0, 1.0, 0.0}),
                           make_lottery({0.0, 0.0, 1.0})});
  const AtomicReu pi({{VnmUtility{1.0, 0.0, 0.0}, 0.2}, {VnmUtility{0.0, 1.0, 0.0}, 0.5},
                      {VnmUtility{-1.0, -1.0, 0.0}, 0.3}});
  const auto exact = atoms_choice_distribution(pi, d);
  const auto sampler = SamplerReu::from_atoms(pi);
  // Averaged over seeds, the mean squared error should scale by about 1/4
  // when N grows by 4.
  auto mse = [&](std::uint64_t n) {
    double total = 0.0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const auto row = mc_choice_distribution(sampler, d, n, seed);
      for (std::size_t j = 0; j < d.size(); ++j) total += std::pow(row[j] - exact[j], 2);
    }
    return total / 40.0;
  };
  const double ratio = mse(4000) / mse(16000);
  CHECK(ratio > 2.0);
  CHECK(ratio < 8.0);
}

TEST_CASE("mixture sampler averages the agents' rows") {
  const DecisionProblem d({make_lottery({1.0, 0.0}), make_lottery({0.0, 1.0})});
  const auto mix = SamplerReu::mixture(
      {SamplerReu::from_atoms(population(0.9)), SamplerReu::from_atoms(population(0.3))},
      Weights{0.25, 0.75});
  const auto row = mc_choice_distribution(mix, d, 100000, 2);
  const double expect = 0.25 * 0.9 + 0.75 * 0.3;
  CHECK(std::abs(row[0] - expect) <= 3 * (*row.std_errors())[0]);
  CHECK_THROWS_AS(SamplerReu::mixture({SamplerReu::from_atoms(population(0.9))}, Weights{0.5, 0.5}),
                  Error);
}

TEST_CASE("tie_probability") {
  const DecisionProblem d({make_lottery({1.0, 0.0, 0.0}), make_lottery({0.0, 1.0, 0.0})});
  const AtomicReu pi({{VnmUtility{1.0, 1.0, 0.0}, 0.35}, {VnmUtility{1.0, 0.0, 0.0}, 0.65}});
  CHECK(tie_probability(pi, d) == doctest::Approx(0.35).epsilon(1e-12));
  CHECK(tie_probability(population(0.9), kAb) == 0.0);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const DecisionProblem menu = random_menu(4, 3, rng);
    std::vector<Atom> atoms;
    double tied = 0.0;
    const auto w = oracle::random_simplex(3, rng);
    for (int a = 0; a < 3; ++a) {
      std::vector<double> u{n(rng), n(rng), 0.0};
      if (oracle::argmax(to_mat(menu), u).size() > 1) tied += w[a];
      atoms.push_back({VnmUtility(u), w[a]});
    }
    CHECK(tied == 0.0);
    CHECK(tie_probability(AtomicReu(atoms), menu) == 0.0);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(AtomicReu({}), Error);
  CHECK_THROWS_AS(AtomicReu({{VnmUtility{1.0, 0.0}, 0.5}}), Error);
  CHECK_THROWS_AS(AtomicReu({{VnmUtility{1.0, 0.0}, 1.2}, {VnmUtility{0.0, 0.0}, -0.2}}), Error);
  CHECK_THROWS_AS(ChoiceDistribution(kAb, {0.7, 0.7}), Error);
  CHECK_THROWS_AS(ChoiceDistribution(kAb, {1.0}), Error);
  CHECK_THROWS_AS(mc_choice_distribution(SamplerReu::degenerate(VnmUtility{1.0, 0.0}), kAb, 0, 1),
                  Error);
  CHECK(parse_tie_break("uniform") == TieBreak::kUniform);
  CHECK(parse_tie_break(to_string(TieBreak::kLexicographicFirst)) == TieBreak::kLexicographicFirst);
  CHECK_THROWS_AS(parse_tie_break("coin"), Error);
}
