#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace welfarelab {

// A probability vector over agents or consumer types: entries >= 0 summing
// to one within 1e-12.
class Weights {
 public:
  explicit Weights(std::vector<double> alpha);
  Weights(std::initializer_list<double> alpha)
      : Weights(std::vector<double>(alpha)) {}

  static Weights uniform(std::size_t m);

  // Clamps tiny negatives and rescales; used for solver output whose entries
  // carry rounding noise. Still rejects genuinely invalid input.
  static Weights from_solver(std::vector<double> alpha);

  std::size_t size() const noexcept { return alpha_.size(); }
  double operator[](std::size_t i) const { return alpha_[i]; }
  std::span<const double> values() const noexcept { return alpha_; }

 private:
  std::vector<double> alpha_;
};

}  // namespace welfarelab
