#pragma once

// Logit demand over Z goods with Gumbel taste shocks, and the distribution of
// compensating variation (CV) a price change induces across consumers.
//
// Sign convention: CV is the payment owed to a consumer after the change,
// v(p', y + CV | e) = v(p0, y | e). A price increase has CV >= 0.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "welfarelab/weights.hpp"

namespace welfarelab {

enum class UtilityForm { kCobbDouglas, kLinear };

std::string to_string(UtilityForm form);
UtilityForm parse_utility_form(const std::string& name);

// W(t) for t = remaining income after buying the good.
//   kCobbDouglas: coef * log(t) + intercept    (t > 0)
//   kLinear:      coef * t / income + intercept
struct GoodUtility {
  UtilityForm form = UtilityForm::kCobbDouglas;
  double coef = 1.0;
  double intercept = 0.0;
};

struct ConsumerType {
  std::string name;
  double share = 1.0;
  std::vector<GoodUtility> utility;  // one per good
};

class WelfareScenario {
 public:
  WelfareScenario(std::vector<std::string> goods, double income,
                  std::vector<ConsumerType> types);

  std::size_t num_goods() const noexcept { return goods_.size(); }
  std::size_t num_types() const noexcept { return types_.size(); }
  double income() const noexcept { return income_; }
  const std::vector<std::string>& goods() const noexcept { return goods_; }
  const std::vector<ConsumerType>& types() const noexcept { return types_; }
  Weights shares() const;

  // W^i_x(t); -inf when a Cobb-Douglas good is unaffordable.
  double w(std::size_t type, std::size_t good, double t) const;

 private:
  std::vector<std::string> goods_;
  double income_;
  std::vector<ConsumerType> types_;
};

class PriceChange {
 public:
  PriceChange(std::vector<double> p0, std::vector<double> p1);

  std::size_t size() const noexcept { return p0_.size(); }
  const std::vector<double>& p0() const noexcept { return p0_; }
  const std::vector<double>& p1() const noexcept { return p1_; }

  // Goods by ascending price change; order()[k] is the original index of the
  // k-th smallest change (stable for equal changes).
  const std::vector<std::size_t>& order() const noexcept { return order_; }
  // Sorted changes, sorted_delta()[k] = delta of good order()[k].
  const std::vector<double>& sorted_delta() const noexcept { return sorted_delta_; }
  double lowest_delta() const noexcept { return sorted_delta_.front(); }
  double highest_delta() const noexcept { return sorted_delta_.back(); }

  bool is_null() const;
  // Indices of goods whose price moves.
  std::vector<std::size_t> moved_goods() const;

 private:
  std::vector<double> p0_, p1_;
  std::vector<std::size_t> order_;
  std::vector<double> sorted_delta_;
};

// Softmax of W^i_x(y_eff - p_x) over goods.
std::vector<double> logit_shares(const WelfareScenario& scen, std::size_t type,
                                 const std::vector<double>& p, double y_eff);

// sum_i alpha_i logit_shares(i).
std::vector<double> aggregate_demand(const WelfareScenario& scen, const Weights& alpha,
                                     const std::vector<double>& p, double y_eff);

// G(a) = P(CV <= a) under the alpha-weighted population.
double cv_cdf(const WelfareScenario& scen, const Weights& alpha, const PriceChange& change,
              double a);

// CV draws: type from alpha, i.i.d. standard Gumbel shocks, root by bisection.
// Bitwise identical for any thread count.
std::vector<double> simulate_cv_samples(const WelfareScenario& scen, const Weights& alpha,
                                        const PriceChange& change, std::uint64_t n,
                                        std::uint64_t seed, unsigned threads = 0);

// T(tau) = inf{z : G(z) >= tau}.
double distributional_cv(const WelfareScenario& scen, const Weights& alpha, double tau,
                         const PriceChange& change);

// E[CV] = integral of a dG(a), by adaptive Gauss-Kronrod on G.
double mean_cv(const WelfareScenario& scen, const Weights& alpha, const PriceChange& change);

// Probability the alpha-population picks (p', y + x) from the binary menu
// {(p0, y), (p', y + x)}, from the logit over both budget sets jointly.
double binary_choice_probability(const WelfareScenario& scen, const Weights& alpha,
                                 const PriceChange& change, double x);

// inf{x : binary_choice_probability(x) >= tau}.
double stochastic_cv(const WelfareScenario& scen, const Weights& alpha, double tau,
                     const PriceChange& change);

// The CV distribution as a function, with CSV export.
class CvCurve {
 public:
  CvCurve(WelfareScenario scen, Weights alpha, PriceChange change);

  double lower() const noexcept { return change_.lowest_delta(); }
  double upper() const noexcept { return change_.highest_delta(); }
  double cdf(double a) const { return cv_cdf(scen_, alpha_, change_, a); }
  double quantile(double tau) const { return distributional_cv(scen_, alpha_, tau, change_); }
  double mean() const { return mean_cv(scen_, alpha_, change_); }

  // "a,G" header then `points` evenly spaced rows over [lower, upper].
  std::string to_csv(std::size_t points) const;

 private:
  WelfareScenario scen_;
  Weights alpha_;
  PriceChange change_;
};

// Finitely many CV values, for type-level examples.
class DiscreteCvDistribution {
 public:
  DiscreteCvDistribution(std::vector<double> values, std::vector<double> weights);

  double cdf(double a) const;
  double quantile(double tau) const;
  double mean() const;

  const std::vector<double>& values() const noexcept { return values_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::vector<double> values_, weights_;
};

enum class Curvature { kConvex, kConcave, kLinear, kIndefinite };
enum class Ordering { kMedianBelow, kEqual, kMedianAbove };

std::string to_string(Curvature c);
std::string to_string(Ordering o);

struct MedianMeanReport {
  double median = 0.0;
  double mean = 0.0;
  Ordering ordering = Ordering::kEqual;
  bool increase = true;               // which single price moves, and how
  std::size_t good = 0;
  Curvature curvature = Curvature::kLinear;
  std::optional<Ordering> predicted;  // strict side the shape rules out; none if indefinite
  bool matches = true;                // observed ordering consistent with the prediction
  // G jumps past 1/2 at the median, so the shape of G between its atoms does
  // not decide the ordering.
  bool median_at_atom = false;
};

// Median vs mean for a single-price change, with the shifted aggregate demand
// h(a) certified convex or concave by second differences on 1000 points.
MedianMeanReport median_mean_diagnosis(const WelfareScenario& scen, const Weights& alpha,
                                       const PriceChange& change);

// Curvature of samples on an even grid; tolerance relative to max |h|.
Curvature classify_curvature(const std::vector<double>& h);

struct MeasureComparison {
  double base_to_first = 0.0;   // CV(p0 -> p1)
  double base_to_second = 0.0;  // CV(p0 -> p2)
  double direct = 0.0;          // CV(p1 -> p2)
  bool reversal = false;
};

struct ScitovskyReport {
  MeasureComparison mean;
  MeasureComparison median;
};

ScitovskyReport scitovsky_probe(const WelfareScenario& scen, const Weights& alpha,
                                const std::vector<double>& p0, const std::vector<double>& p1,
                                const std::vector<double>& p2);

}  // namespace welfarelab
