#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "welfarelab/errors.hpp"
#include "welfarelab/lottery.hpp"

using namespace welfarelab;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

oracle::Vec to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }

oracle::Mat to_mat(const DecisionProblem& d) {
  oracle::Mat m;
  for (const auto& x : d) m.push_back(to_vec(x.probs()));
  return m;
}

DecisionProblem random_menu(std::size_t size, std::size_t dim, std::mt19937_64& rng) {
  std::vector<Lottery> alts;
  for (std::size_t j = 0; j < size; ++j) alts.emplace_back(oracle::random_simplex(dim, rng));
  return DecisionProblem(std::move(alts));
}

VnmUtility random_utility(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> u(dim);
  for (double& x : u) x = n(rng);
  return VnmUtility(u);
}

}  // namespace

TEST_CASE("make_lottery validates mass") {
  const Lottery one = make_lottery({1.0});
  CHECK(one.size() == 1);
  CHECK(one[0] == 1.0);

  const Lottery coin = make_lottery({0.5, 0.5});
  CHECK(coin[0] == 0.5);
  CHECK(coin[1] == 0.5);

  CHECK(code_of([] { make_lottery({0.5, 0.6}); }) == ErrorCode::kSumNotOne);
  CHECK(code_of([] { make_lottery({1.5, -0.5}); }) == ErrorCode::kNegativeMass);
  CHECK(code_of([] { make_lottery(std::vector<double>{}); }) == ErrorCode::kInvalidArgument);
  // Within tolerance is accepted.
  CHECK_NOTHROW(make_lottery({0.5, 0.5 + 5e-13}));
  CHECK_NOTHROW(make_lottery({1.0 + 5e-13, -5e-13}));
}

TEST_CASE("VnmUtility normalizes the last policy to zero") {
  const VnmUtility u{3.0, 1.0, 2.0};
  CHECK(u[0] == 1.0);
  CHECK(u[1] == -1.0);
  CHECK(u[2] == 0.0);
  CHECK(u.offset() == 2.0);
  CHECK(VnmUtility{0.0, 0.0}.is_zero());
  CHECK(VnmUtility{5.0, 5.0}.is_zero());
}

TEST_CASE("DecisionProblem rejects duplicates and empty menus") {
  CHECK(code_of([] { DecisionProblem({}); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] {
          DecisionProblem({make_lottery({1.0, 0.0}), make_lottery({1.0, 0.0})});
        }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] {
          DecisionProblem({make_lottery({1.0, 0.0}), make_lottery({1.0, 0.0, 0.0})});
        }) == ErrorCode::kDimensionMismatch);
  const DecisionProblem d({make_lottery({0.0, 1.0}), make_lottery({1.0, 0.0})});
  CHECK(d[0][1] == 1.0);  // construction order kept
}

TEST_CASE("expected_utility") {
  CHECK(expected_utility(VnmUtility{1.0, 0.0}, make_lottery({1.0, 0.0})) == 1.0);
  CHECK(expected_utility(VnmUtility{1.0, 0.0}, make_lottery({0.5, 0.5})) == 0.5);
  const Lottery third({1.0 / 3, 1.0 / 3, 1.0 / 3});
  CHECK(expected_utility(VnmUtility{2.0, -1.0, 0.0}, third) ==
        doctest::Approx(oracle::dot({2.0, -1.0, 0.0}, {1.0 / 3, 1.0 / 3, 1.0 / 3})).epsilon(1e-12));
  CHECK(expected_utility(VnmUtility{2.0, -1.0, 0.0}, third) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(code_of([] { expected_utility(VnmUtility{1.0, 0.0}, make_lottery({1.0, 0.0, 0.0})); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("expected_utility is linear in the lottery") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const auto x = oracle::random_simplex(4, rng);
    const auto y = oracle::random_simplex(4, rng);
    const double lam = unit(rng);
    std::vector<double> mixed(4);
    for (int k = 0; k < 4; ++k) mixed[k] = lam * x[k] + (1 - lam) * y[k];
    const VnmUtility u = random_utility(4, rng);
    const double lhs = expected_utility(u, Lottery(mixed));
    const double rhs = lam * expected_utility(u, Lottery(x)) + (1 - lam) * expected_utility(u, Lottery(y));
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("argmax_set") {
  const DecisionProblem diamond({make_lottery({1.0, 0.0}), make_lottery({0.5, 0.5})});
  CHECK(argmax_set(diamond, VnmUtility{1.0, 0.0}, 0.0) == std::vector<std::size_t>{0});
  CHECK(argmax_set(diamond, VnmUtility{0.0, 0.0}, 0.0) == std::vector<std::size_t>{0, 1});

  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const DecisionProblem d = random_menu(5, 4, rng);
    const VnmUtility u = random_utility(4, rng);
    CHECK(argmax_set(d, u, 1e-12) == oracle::argmax(to_mat(d), to_vec(u.values())));
  }
  CHECK(code_of([&] { argmax_set(diamond, VnmUtility{1.0, 0.0, 0.0}, 0.0); }) ==
        ErrorCode::kDimensionMismatch);
}

TEST_CASE("argmax_set is invariant under positive affine transforms") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> scale(0.1, 10.0), shift(-5.0, 5.0);
  for (int t = 0; t < 100; ++t) {
    const DecisionProblem d = random_menu(4, 3, rng);
    const VnmUtility u = random_utility(3, rng);
    const double a = scale(rng), b = shift(rng);
    std::vector<double> v;
    for (double x : u.values()) v.push_back(a * x + b);
    CHECK(argmax_set(d, u, 0.0) == argmax_set(d, VnmUtility(v), 0.0));
  }
}

TEST_CASE("in_normal_cone") {
  const DecisionProblem diamond({make_lottery({1.0, 0.0}), make_lottery({0.5, 0.5})});
  CHECK_FALSE(in_normal_cone(diamond, 1, VnmUtility{1.0, 0.0}));
  CHECK(in_normal_cone(diamond, 0, VnmUtility{1.0, 0.0}));
  CHECK(in_normal_cone(diamond, 1, VnmUtility{0.0, 0.0}));
  CHECK(code_of([&] { in_normal_cone(diamond, 2, VnmUtility{1.0, 0.0}); }) ==
        ErrorCode::kIndexOutOfRange);

  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const DecisionProblem d = random_menu(4, 3, rng);
    const VnmUtility u = random_utility(3, rng);
    const auto best = argmax_set(d, u, 1e-12);
    for (std::size_t j = 0; j < d.size(); ++j) {
      const bool member = std::find(best.begin(), best.end(), j) != best.end();
      CHECK(member == in_normal_cone(d, j, u));
    }
  }
}
