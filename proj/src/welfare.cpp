#include "welfarelab/welfare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "welfarelab/errors.hpp"
#include "welfarelab/random.hpp"

namespace welfarelab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSampleTol = 1e-10;
constexpr double kOrderTol = 1e-8;

void check_inputs(const WelfareScenario& scen, const Weights& alpha,
                  const std::vector<double>& p) {
  if (alpha.size() != scen.num_types()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "weights cover " + std::to_string(alpha.size()) + " types, scenario has " +
                    std::to_string(scen.num_types()));
  }
  if (p.size() != scen.num_goods()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "price vector has " + std::to_string(p.size()) + " entries for " +
                    std::to_string(scen.num_goods()) + " goods");
  }
}

void check_change(const WelfareScenario& scen, const Weights& alpha, const PriceChange& change) {
  check_inputs(scen, alpha, change.p0());
  for (std::size_t g = 0; g < change.size(); ++g) {
    if (change.p0()[g] >= scen.income() || change.p1()[g] >= scen.income()) {
      throw Error(ErrorCode::kDomainError,
                  "price of " + scen.goods()[g] + " is not below income");
    }
  }
}

void check_tau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau must lie in (0, 1)");
  }
}

// Softmax over values that may include -inf; at least one must be finite.
std::vector<double> softmax(const std::vector<double>& v) {
  const double top = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(top)) {
    throw Error(ErrorCode::kDomainError, "no good is affordable");
  }
  std::vector<double> out(v.size());
  double total = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) total += (out[k] = std::exp(v[k] - top));
  for (double& s : out) s /= total;
  return out;
}

// Smallest z in (lo, hi] with g(z) >= tau, given g(lo) < tau <= g(hi). When a
// knot (a point where g may jump) lands in the final bracket and already
// clears tau, it is returned exactly.
template <class G>
double lowest_crossing(const G& g, double tau, double lo, double hi,
                       const std::vector<double>& knots) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= 1e-13 * std::max(1.0, std::abs(hi))) break;
    if (g(mid) >= tau) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  for (double k : knots) {
    if (k > lo && k <= hi && g(k) >= tau) return k;
  }
  return hi;
}

std::vector<double> change_knots(const PriceChange& change) {
  std::vector<double> knots = change.sorted_delta();
  knots.push_back(0.0);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  return knots;
}

}  // namespace

std::string to_string(UtilityForm form) {
  return form == UtilityForm::kCobbDouglas ? "cobb-douglas" : "linear";
}

UtilityForm parse_utility_form(const std::string& name) {
  if (name == "cobb-douglas") return UtilityForm::kCobbDouglas;
  if (name == "linear") return UtilityForm::kLinear;
  throw Error(ErrorCode::kSchemaError, "unknown utility form '" + name + "'");
}

WelfareScenario::WelfareScenario(std::vector<std::string> goods, double income,
                                 std::vector<ConsumerType> types)
    : goods_(std::move(goods)), income_(income), types_(std::move(types)) {
  if (goods_.empty()) throw Error(ErrorCode::kConfigError, "scenario has no goods");
  if (types_.empty()) throw Error(ErrorCode::kConfigError, "scenario has no consumer types");
  if (!(income_ > 0.0) || !std::isfinite(income_)) {
    throw Error(ErrorCode::kConfigError, "income must be positive");
  }
  for (const auto& t : types_) {
    if (t.utility.size() != goods_.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "type '" + t.name + "' specifies " + std::to_string(t.utility.size()) +
                      " utilities for " + std::to_string(goods_.size()) + " goods");
    }
    for (const auto& u : t.utility) {
      if (!(u.coef > 0.0) || !std::isfinite(u.coef) || !std::isfinite(u.intercept)) {
        throw Error(ErrorCode::kConfigError,
                    "type '" + t.name + "' needs positive finite coefficients");
      }
    }
  }
  shares();  // validates
}

Weights WelfareScenario::shares() const {
  std::vector<double> s;
  for (const auto& t : types_) s.push_back(t.share);
  return Weights(std::move(s));
}

double WelfareScenario::w(std::size_t type, std::size_t good, double t) const {
  const GoodUtility& u = types_[type].utility[good];
  if (u.form == UtilityForm::kLinear) return u.coef * t / income_ + u.intercept;
  if (!(t > 0.0)) return -kInf;
  return u.coef * std::log(t) + u.intercept;
}

PriceChange::PriceChange(std::vector<double> p0, std::vector<double> p1)
    : p0_(std::move(p0)), p1_(std::move(p1)) {
  if (p0_.empty() || p0_.size() != p1_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "price vectors must share a nonzero length");
  }
  for (std::size_t g = 0; g < p0_.size(); ++g) {
    if (!std::isfinite(p0_[g]) || !std::isfinite(p1_[g])) {
      throw Error(ErrorCode::kConfigError, "prices must be finite");
    }
  }
  order_.resize(p0_.size());
  std::iota(order_.begin(), order_.end(), 0);
  std::stable_sort(order_.begin(), order_.end(), [this](std::size_t a, std::size_t b) {
    return p1_[a] - p0_[a] < p1_[b] - p0_[b];
  });
  for (std::size_t g : order_) sorted_delta_.push_back(p1_[g] - p0_[g]);
}

bool PriceChange::is_null() const { return p0_ == p1_; }

std::vector<std::size_t> PriceChange::moved_goods() const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < p0_.size(); ++g) {
    if (p0_[g] != p1_[g]) out.push_back(g);
  }
  return out;
}

std::vector<double> logit_shares(const WelfareScenario& scen, std::size_t type,
                                 const std::vector<double>& p, double y_eff) {
  if (type >= scen.num_types()) {
    throw Error(ErrorCode::kIndexOutOfRange, "type " + std::to_string(type));
  }
  if (p.size() != scen.num_goods()) {
    throw Error(ErrorCode::kDimensionMismatch, "price vector length differs from goods");
  }
  std::vector<double> v(p.size());
  for (std::size_t g = 0; g < p.size(); ++g) {
    const double t = y_eff - p[g];
    if (scen.types()[type].utility[g].form == UtilityForm::kCobbDouglas && !(t > 0.0)) {
      throw Error(ErrorCode::kDomainError,
                  "income " + std::to_string(y_eff) + " does not cover the price of " +
                      scen.goods()[g]);
    }
    v[g] = scen.w(type, g, t);
  }
  return softmax(v);
}

std::vector<double> aggregate_demand(const WelfareScenario& scen, const Weights& alpha,
                                     const std::vector<double>& p, double y_eff) {
  check_inputs(scen, alpha, p);
  std::vector<double> q(p.size(), 0.0);
  for (std::size_t i = 0; i < scen.num_types(); ++i) {
    if (alpha[i] == 0.0) continue;
    const auto s = logit_shares(scen, i, p, y_eff);
    for (std::size_t g = 0; g < q.size(); ++g) q[g] += alpha[i] * s[g];
  }
  return q;
}

double cv_cdf(const WelfareScenario& scen, const Weights& alpha, const PriceChange& change,
              double a) {
  check_change(scen, alpha, change);
  const auto& delta = change.sorted_delta();
  if (a < delta.front()) return 0.0;
  if (a >= delta.back()) return 1.0;
  const auto j = static_cast<std::size_t>(
      std::upper_bound(delta.begin(), delta.end(), a) - delta.begin());
  const auto& order = change.order();
  std::vector<double> p(change.size());
  double income = scen.income();
  if (a >= 0.0) {
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t g = order[k];
      p[g] = k < j ? change.p1()[g] : change.p0()[g] + a;
    }
    income += a;
  } else {
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t g = order[k];
      p[g] = k < j ? change.p1()[g] - a : change.p0()[g];
    }
  }
  const auto q = aggregate_demand(scen, alpha, p, income);
  double g_val = 0.0;
  for (std::size_t k = 0; k < j; ++k) g_val += q[order[k]];
  return std::clamp(g_val, 0.0, 1.0);
}

std::vector<double> simulate_cv_samples(const WelfareScenario& scen, const Weights& alpha,
                                        const PriceChange& change, std::uint64_t n,
                                        std::uint64_t seed, unsigned threads) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one sample");
  check_change(scen, alpha, change);
  const std::size_t goods = scen.num_goods();
  const double y = scen.income();
  const double lo0 = change.lowest_delta() - 1.0;
  const double hi0 = change.highest_delta() + 1.0;
  std::vector<double> weights(alpha.values().begin(), alpha.values().end());
  std::vector<double> out(n);

  parallel_for(n, threads == 0 ? default_thread_count() : threads,
               [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<double> eps(goods);
    for (std::uint64_t s = begin; s < end; ++s) {
      CounterRng rng(seed, s);
      const double u = rng.uniform_open();
      std::size_t type = weights.size() - 1;
      double cumulative = 0.0;
      for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        cumulative += weights[i];
        if (u < cumulative) {
          type = i;
          break;
        }
      }
      for (double& e : eps) e = -std::log(-std::log(rng.uniform_open()));

      double target = -kInf;
      for (std::size_t g = 0; g < goods; ++g) {
        target = std::max(target, scen.w(type, g, y - change.p0()[g]) + eps[g]);
      }
      auto gap = [&](double x) {
        double best = -kInf;
        for (std::size_t g = 0; g < goods; ++g) {
          best = std::max(best, scen.w(type, g, y + x - change.p1()[g]) + eps[g]);
        }
        return best - target;
      };
      double lo = lo0, hi = hi0;
      if (!(gap(lo) < 0.0) || !(gap(hi) > 0.0)) {
        throw Error(ErrorCode::kBracketError,
                    "compensated value is not bracketed for sample " + std::to_string(s));
      }
      while (hi - lo > kSampleTol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (gap(mid) >= 0.0) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      out[s] = 0.5 * (lo + hi);
    }
  });
  return out;
}

double distributional_cv(const WelfareScenario& scen, const Weights& alpha, double tau,
                         const PriceChange& change) {
  check_tau(tau);
  check_change(scen, alpha, change);
  auto g = [&](double a) { return cv_cdf(scen, alpha, change, a); };
  return lowest_crossing(g, tau, change.lowest_delta() - 1.0, change.highest_delta(),
                         change_knots(change));
}

double mean_cv(const WelfareScenario& scen, const Weights& alpha, const PriceChange& change) {
  check_change(scen, alpha, change);
  const double lo = change.lowest_delta();
  const double hi = change.highest_delta();
  if (hi <= lo) return hi;
  std::vector<double> cuts;
  for (double k : change_knots(change)) {
    if (k >= lo && k <= hi) cuts.push_back(k);
  }
  auto g = [&](double a) { return cv_cdf(scen, alpha, change, a); };
  double area = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] <= cuts[k]) continue;
    area += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, cuts[k], cuts[k + 1],
                                                                          15, 1e-12);
  }
  return hi - area;
}

double binary_choice_probability(const WelfareScenario& scen, const Weights& alpha,
                                 const PriceChange& change, double x) {
  check_change(scen, alpha, change);
  const std::size_t goods = scen.num_goods();
  const double y = scen.income();
  std::vector<double> best(goods);
  std::vector<bool> changed_side(goods);
  double d = 0.0;
  for (std::size_t i = 0; i < scen.num_types(); ++i) {
    if (alpha[i] == 0.0) continue;
    for (std::size_t g = 0; g < goods; ++g) {
      const double after = scen.w(i, g, y + x - change.p1()[g]);
      const double before = scen.w(i, g, y - change.p0()[g]);
      changed_side[g] = after >= before;
      best[g] = std::max(after, before);
    }
    const auto s = softmax(best);
    double pi = 0.0;
    for (std::size_t g = 0; g < goods; ++g) {
      if (changed_side[g]) pi += s[g];
    }
    d += alpha[i] * pi;
  }
  return std::clamp(d, 0.0, 1.0);
}

double stochastic_cv(const WelfareScenario& scen, const Weights& alpha, double tau,
                     const PriceChange& change) {
  check_tau(tau);
  check_change(scen, alpha, change);
  auto d = [&](double x) { return binary_choice_probability(scen, alpha, change, x); };
  double lo = change.lowest_delta() - 1.0;
  double hi = change.highest_delta() + 1.0;
  if (!(d(lo) < tau) || !(d(hi) >= tau)) {
    throw Error(ErrorCode::kBracketError, "binary choice probability does not cross tau");
  }
  return lowest_crossing(d, tau, lo, hi, change_knots(change));
}

CvCurve::CvCurve(WelfareScenario scen, Weights alpha, PriceChange change)
    : scen_(std::move(scen)), alpha_(std::move(alpha)), change_(std::move(change)) {
  check_change(scen_, alpha_, change_);
}

std::string CvCurve::to_csv(std::size_t points) const {
  if (points < 2) throw Error(ErrorCode::kInvalidArgument, "CDF grid needs at least 2 points");
  std::string out = "a,G\n";
  char line[96];
  const double lo = lower(), hi = upper();
  for (std::size_t k = 0; k < points; ++k) {
    const double a =
        k + 1 == points ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    std::snprintf(line, sizeof line, "%.17g,%.17g\n", a, cdf(a));
    out += line;
  }
  return out;
}

DiscreteCvDistribution::DiscreteCvDistribution(std::vector<double> values,
                                               std::vector<double> weights) {
  if (values.empty() || values.size() != weights.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one weight per CV value is required");
  }
  Weights checked(weights);
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  for (std::size_t k : idx) {
    if (!std::isfinite(values[k])) throw Error(ErrorCode::kConfigError, "CV values must be finite");
    values_.push_back(values[k]);
    weights_.push_back(checked[k]);
  }
}

double DiscreteCvDistribution::cdf(double a) const {
  double total = 0.0;
  for (std::size_t k = 0; k < values_.size() && values_[k] <= a; ++k) total += weights_[k];
  return std::min(total, 1.0);
}

double DiscreteCvDistribution::quantile(double tau) const {
  check_tau(tau);
  double total = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    total += weights_[k];
    if (total >= tau - 1e-12) return values_[k];
  }
  return values_.back();
}

double DiscreteCvDistribution::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) m += weights_[k] * values_[k];
  return m;
}

std::string to_string(Curvature c) {
  switch (c) {
    case Curvature::kConvex: return "convex";
    case Curvature::kConcave: return "concave";
    case Curvature::kLinear: return "linear";
    case Curvature::kIndefinite: return "indefinite";
  }
  return "indefinite";
}

std::string to_string(Ordering o) {
  switch (o) {
    case Ordering::kMedianBelow: return "median<mean";
    case Ordering::kEqual: return "median=mean";
    case Ordering::kMedianAbove: return "median>mean";
  }
  return "median=mean";
}

Curvature classify_curvature(const std::vector<double>& h) {
  if (h.size() < 3) return Curvature::kLinear;
  double scale = 0.0;
  for (double v : h) scale = std::max(scale, std::abs(v));
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
  bool convex = true, concave = true;
  for (std::size_t k = 1; k + 1 < h.size(); ++k) {
    const double d2 = h[k + 1] - 2.0 * h[k] + h[k - 1];
    if (d2 < -tol) convex = false;
    if (d2 > tol) concave = false;
  }
  if (convex && concave) return Curvature::kLinear;
  if (convex) return Curvature::kConvex;
  if (concave) return Curvature::kConcave;
  return Curvature::kIndefinite;
}

MedianMeanReport median_mean_diagnosis(const WelfareScenario& scen, const Weights& alpha,
                                       const PriceChange& change) {
  check_change(scen, alpha, change);
  const auto moved = change.moved_goods();
  if (moved.size() > 1) {
    throw Error(ErrorCode::kMultiPriceChange,
                std::to_string(moved.size()) + " prices move; the diagnosis needs one");
  }
  MedianMeanReport r;
  if (moved.empty()) {
    r.predicted = Ordering::kEqual;
    return r;
  }
  const std::size_t g = moved.front();
  const double delta = change.p1()[g] - change.p0()[g];
  r.good = g;
  r.increase = delta > 0.0;
  r.median = distributional_cv(scen, alpha, 0.5, change);
  r.mean = mean_cv(scen, alpha, change);
  if (r.median < r.mean - kOrderTol) {
    r.ordering = Ordering::kMedianBelow;
  } else if (r.median > r.mean + kOrderTol) {
    r.ordering = Ordering::kMedianAbove;
  } else {
    r.ordering = Ordering::kEqual;
  }

  constexpr std::size_t kGrid = 1000;
  std::vector<double> h(kGrid);
  const double y = scen.income();
  for (std::size_t k = 0; k < kGrid; ++k) {
    const double frac = static_cast<double>(k) / static_cast<double>(kGrid - 1);
    std::vector<double> p = change.p0();
    if (r.increase) {
      const double a = delta * frac;
      p[g] = change.p0()[g] + a;
      h[k] = aggregate_demand(scen, alpha, p, y + a)[g];
    } else {
      const double a = delta * (1.0 - frac);  // from delta up to 0
      p[g] = change.p1()[g] - a;
      h[k] = aggregate_demand(scen, alpha, p, y)[g];
    }
  }
  r.curvature = classify_curvature(h);

  const bool convex = r.curvature == Curvature::kConvex;
  const bool concave = r.curvature == Curvature::kConcave;
  if (r.curvature == Curvature::kLinear) {
    r.predicted = Ordering::kEqual;
  } else if (convex || concave) {
    r.predicted = (convex == r.increase) ? Ordering::kMedianBelow : Ordering::kMedianAbove;
  }
  if (r.predicted) {
    switch (*r.predicted) {
      case Ordering::kMedianBelow: r.matches = r.median <= r.mean + kOrderTol; break;
      case Ordering::kMedianAbove: r.matches = r.median >= r.mean - kOrderTol; break;
      case Ordering::kEqual: r.matches = r.ordering == Ordering::kEqual; break;
    }
  }

  for (double knot : {0.0, delta}) {
    if (r.median == knot) {
      const double left = knot - 1e-9 * std::max(1.0, std::abs(delta));
      if (cv_cdf(scen, alpha, change, left) < 0.5) r.median_at_atom = true;
    }
  }
  return r;
}

ScitovskyReport scitovsky_probe(const WelfareScenario& scen, const Weights& alpha,
                                const std::vector<double>& p0, const std::vector<double>& p1,
                                const std::vector<double>& p2) {
  const PriceChange to_first(p0, p1), to_second(p0, p2), direct(p1, p2);
  auto compare = [](double via_first, double via_second, double d) {
    MeasureComparison m{via_first, via_second, d, false};
    // CV is compensation owed, so lower means better.
    const double via = via_second - via_first;
    if (std::abs(via) > 1e-9 && std::abs(d) > 1e-9) m.reversal = (via > 0.0) != (d > 0.0);
    return m;
  };
  ScitovskyReport r;
  r.mean = compare(mean_cv(scen, alpha, to_first), mean_cv(scen, alpha, to_second),
                   mean_cv(scen, alpha, direct));
  r.median = compare(distributional_cv(scen, alpha, 0.5, to_first),
                     distributional_cv(scen, alpha, 0.5, to_second),
                     distributional_cv(scen, alpha, 0.5, direct));
  return r;
}

}  // namespace welfarelab
