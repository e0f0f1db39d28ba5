#include "welfarelab/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "welfarelab/errors.hpp"

namespace welfarelab {

namespace {

void check_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

}  // namespace

Lottery::Lottery(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "lottery needs at least one policy");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    if (!std::isfinite(probs_[k])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "non-finite mass at policy " + std::to_string(k));
    }
    if (probs_[k] < -kSimplexTol) {
      throw Error(ErrorCode::kNegativeMass,
                  "policy " + std::to_string(k) + " has mass " +
                      std::to_string(probs_[k]));
    }
    total += probs_[k];
  }
  if (std::abs(total - 1.0) > kSimplexTol) {
    throw Error(ErrorCode::kSumNotOne,
                "lottery mass sums to " + std::to_string(total));
  }
}

bool Lottery::approx_equal(const Lottery& other) const {
  if (size() != other.size()) return false;
  for (std::size_t k = 0; k < size(); ++k) {
    if (std::abs(probs_[k] - other.probs_[k]) > kSimplexTol) return false;
  }
  return true;
}

Lottery make_lottery(std::span<const double> weights) {
  return Lottery(std::vector<double>(weights.begin(), weights.end()));
}

Lottery make_lottery(std::initializer_list<double> weights) {
  return Lottery(std::vector<double>(weights));
}

Lottery degenerate_lottery(std::size_t num_policies, std::size_t k) {
  if (k >= num_policies) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "policy " + std::to_string(k) + " of " +
                    std::to_string(num_policies));
  }
  std::vector<double> probs(num_policies, 0.0);
  probs[k] = 1.0;
  return Lottery(std::move(probs));
}

VnmUtility::VnmUtility(std::vector<double> raw) : values_(std::move(raw)) {
  if (values_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "utility needs at least one policy");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite utility entry");
    }
  }
  offset_ = values_.back();
  for (double& v : values_) v -= offset_;
  values_.back() = 0.0;
}

bool VnmUtility::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

DecisionProblem::DecisionProblem(std::vector<Lottery> alternatives)
    : alternatives_(std::move(alternatives)) {
  if (alternatives_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "decision problem is empty");
  }
  const std::size_t dim = alternatives_.front().size();
  for (std::size_t j = 0; j < alternatives_.size(); ++j) {
    check_same_size(alternatives_[j].size(), dim, "menu alternative dimension");
    for (std::size_t k = 0; k < j; ++k) {
      if (alternatives_[j].approx_equal(alternatives_[k])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "alternatives " + std::to_string(k) + " and " +
                        std::to_string(j) + " coincide");
      }
    }
  }
}

double expected_utility(const VnmUtility& u, const Lottery& x) {
  check_same_size(u.size(), x.size(), "utility vs lottery");
  double total = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) total += u[k] * x[k];
  return total;
}

std::vector<double> menu_utilities(const DecisionProblem& menu,
                                   const VnmUtility& u) {
  std::vector<double> values;
  values.reserve(menu.size());
  for (const Lottery& x : menu) values.push_back(expected_utility(u, x));
  return values;
}

std::vector<std::size_t> argmax_set(const DecisionProblem& menu,
                                    const VnmUtility& u, double tol) {
  if (tol < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "negative tie tolerance");
  }
  const std::vector<double> values = menu_utilities(menu, u);
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] >= best - tol) out.push_back(j);
  }
  return out;
}

bool in_normal_cone(const DecisionProblem& menu, std::size_t j,
                    const VnmUtility& u) {
  if (j >= menu.size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "alternative " + std::to_string(j) + " of " +
                    std::to_string(menu.size()));
  }
  const std::vector<double> values = menu_utilities(menu, u);
  return std::all_of(values.begin(), values.end(),
                     [&](double v) { return values[j] >= v - kTieTol; });
}

}  // namespace welfarelab
