#pragma once

// Lotteries over a finite policy set, normalized vNM utilities and finite
// menus of lotteries. All types are immutable once constructed.

#include <cstddef>
#include <span>
#include <vector>

namespace welfarelab {

// Tolerance for simplex validation and for utility ties.
inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kTieTol = 1e-12;

class Lottery {
 public:
  // Validates non-negativity and unit mass; see make_lottery.
  explicit Lottery(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::span<const double> probs() const noexcept { return probs_; }

  // Component-wise equality within kSimplexTol.
  bool approx_equal(const Lottery& other) const;

  friend bool operator==(const Lottery&, const Lottery&) = default;

 private:
  std::vector<double> probs_;
};

Lottery make_lottery(std::span<const double> weights);
Lottery make_lottery(std::initializer_list<double> weights);

// Degenerate lottery on policy `k` out of `num_policies`.
Lottery degenerate_lottery(std::size_t num_policies, std::size_t k);

// A vNM utility normalized so that the last policy has utility 0. The
// constant removed during normalization is kept as offset() so callers can
// report values on the original scale.
class VnmUtility {
 public:
  explicit VnmUtility(std::vector<double> raw);
  VnmUtility(std::initializer_list<double> raw)
      : VnmUtility(std::vector<double>(raw)) {}

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const noexcept { return values_; }
  double offset() const noexcept { return offset_; }

  bool is_zero() const;

  friend bool operator==(const VnmUtility& a, const VnmUtility& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
  double offset_ = 0.0;
};

class DecisionProblem {
 public:
  explicit DecisionProblem(std::vector<Lottery> alternatives);

  std::size_t size() const noexcept { return alternatives_.size(); }
  std::size_t dimension() const noexcept { return alternatives_.front().size(); }
  const Lottery& operator[](std::size_t j) const { return alternatives_[j]; }
  const std::vector<Lottery>& alternatives() const noexcept {
    return alternatives_;
  }

  auto begin() const noexcept { return alternatives_.begin(); }
  auto end() const noexcept { return alternatives_.end(); }

  friend bool operator==(const DecisionProblem&,
                         const DecisionProblem&) = default;

 private:
  std::vector<Lottery> alternatives_;
};

double expected_utility(const VnmUtility& u, const Lottery& x);

// Expected utility of every alternative of `menu`, in menu order.
std::vector<double> menu_utilities(const DecisionProblem& menu,
                                   const VnmUtility& u);

// Indices j with u.x_j >= max_k u.x_k - tol, ascending. Never empty.
std::vector<std::size_t> argmax_set(const DecisionProblem& menu,
                                    const VnmUtility& u, double tol);

// True iff u is maximized at alternative j of the menu (ties within kTieTol).
bool in_normal_cone(const DecisionProblem& menu, std::size_t j,
                    const VnmUtility& u);

}  // namespace welfarelab
