#include "welfarelab/weights.hpp"

#include <cmath>
#include <string>

#include "welfarelab/errors.hpp"

namespace welfarelab {

Weights::Weights(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "weights must be nonempty");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < alpha_.size(); ++i) {
    if (!std::isfinite(alpha_[i]) || alpha_[i] < 0.0) {
      throw Error(ErrorCode::kNegativeMass,
                  "weight " + std::to_string(i) + " is " +
                      std::to_string(alpha_[i]));
    }
    total += alpha_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kSumNotOne,
                "weights sum to " + std::to_string(total));
  }
}

Weights Weights::uniform(std::size_t m) {
  return Weights(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

Weights Weights::from_solver(std::vector<double> alpha) {
  double total = 0.0;
  for (double& a : alpha) {
    if (a < 0.0 && a > -1e-9) a = 0.0;
    total += a;
  }
  if (total > 0.0 && std::abs(total - 1.0) < 1e-6) {
    for (double& a : alpha) a /= total;
  }
  return Weights(std::move(alpha));
}

}  // namespace welfarelab
