#pragma once

// Seeded random welfare scenarios shared by the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "welfarelab/welfare.hpp"

namespace gen {

struct Instance {
  welfarelab::WelfareScenario scen;
  welfarelab::Weights alpha;
  welfarelab::PriceChange change;
};

// 2-4 goods, 1-3 types, Cobb-Douglas with coefficients in [0.3, 1] so that
// exp(W) = e^c t^b is concave. `single_increase` moves one price up;
// otherwise every price moves by an independent draw in [-1, 1.5].
inline Instance cobb_douglas(std::uint64_t seed, bool single_increase = false) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> goods_dist(2, 4), types_dist(1, 3);
  std::uniform_real_distribution<double> income_dist(8.0, 20.0), price_dist(0.5, 4.0),
      coef_dist(0.3, 1.0), icpt_dist(-1.0, 1.0), move_dist(-1.0, 1.5), up_dist(0.3, 2.5),
      share_dist(0.2, 1.0);
  const int z = goods_dist(rng), ntypes = types_dist(rng);
  const double income = income_dist(rng);
  std::vector<std::string> goods;
  for (int k = 0; k < z; ++k) goods.push_back("g" + std::to_string(k));
  std::vector<welfarelab::ConsumerType> types;
  double total = 0.0;
  std::vector<double> raw;
  for (int i = 0; i < ntypes; ++i) raw.push_back(share_dist(rng)), total += raw.back();
  for (int i = 0; i < ntypes; ++i) {
    welfarelab::ConsumerType t;
    t.name = "t" + std::to_string(i);
    t.share = raw[i] / total;
    for (int k = 0; k < z; ++k) {
      t.utility.push_back({welfarelab::UtilityForm::kCobbDouglas, coef_dist(rng), icpt_dist(rng)});
    }
    types.push_back(std::move(t));
  }
  std::vector<double> p0, p1;
  for (int k = 0; k < z; ++k) p0.push_back(price_dist(rng));
  p1 = p0;
  if (single_increase) {
    std::uniform_int_distribution<int> which(0, z - 1);
    p1[which(rng)] += up_dist(rng);
  } else {
    for (double& p : p1) p = std::max(0.2, p + move_dist(rng));
  }
  welfarelab::WelfareScenario scen(goods, income, types);
  welfarelab::Weights alpha = scen.shares();
  return {std::move(scen), std::move(alpha), welfarelab::PriceChange(p0, p1)};
}

}  // namespace gen
