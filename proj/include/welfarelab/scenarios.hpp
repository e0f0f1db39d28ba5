#pragma once

// Scripted worked examples. Each run_* function rebuilds an example from
// scratch and returns a report of computed values plus checks against the
// values the example is expected to reproduce.

#include <array>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "welfarelab/lottery.hpp"
#include "welfarelab/reu.hpp"

namespace welfarelab {

struct ReportValue {
  std::string label;
  double value;
};

struct ReportCheck {
  std::string label;
  // "worked-example": a number stated in the example itself.
  // "independent-check": recomputed here by a different route.
  // "definition": forced by the definitions involved.
  std::string basis;
  std::string expected;
  std::string observed;
  bool pass;
};

struct ExampleReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<ReportValue> values;
  std::vector<ReportCheck> checks;
  std::vector<std::string> notes;

  bool all_pass() const;
  double value(const std::string& label) const;  // throws if absent
};

std::string to_text(const ExampleReport& report);
nlohmann::ordered_json to_json(const ExampleReport& report);

ExampleReport run_euw_example();
ExampleReport run_diamond_example(TieBreak tb = TieBreak::kUniform);
ExampleReport run_median_counterexample();

inline constexpr double kCondorcetTheta0 = std::numbers::pi / 3.0;

struct CondorcetConfig {
  double eta = 0.1;
  double delta = 0.05;
  double eps_angle = kCondorcetTheta0 / 4.0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  // Support of the uniform perturbation angle of agents 1 and 2.
  double uniform_lo = 0.0;
  double uniform_hi = 2.0 * std::numbers::pi;
  unsigned threads = 0;

  void validate() const;  // ConfigError
};

// Angle density on [0, 2pi], linear from f(0) = edge up to f(pi) = peak and
// back down to f(2pi) = edge, rescaled to integrate to one.
class TriangularAngleDensity {
 public:
  TriangularAngleDensity(double edge, double peak);

  double edge() const noexcept { return edge_; }
  double peak() const noexcept { return peak_; }
  // Integral of the unscaled density; 1 when edge + peak = 1/pi.
  double raw_mass() const noexcept { return std::numbers::pi * (edge_ + peak_); }

  double pdf(double theta) const;
  // Inverse-CDF draw from two uniforms on (0, 1).
  double sample(double u_half, double u_pos) const;

 private:
  double edge_, peak_;
};

// w(theta) = (cos theta, sin theta).
std::array<double, 2> unit_vector(double theta);

// Planar points and utilities mapped onto three policies: a lottery is
// (1/3 + s c, 1/3 + s d, rest) with s = 1/5, a utility is (u1, u2, 0).
Lottery planar_lottery(const std::array<double, 2>& point);
VnmUtility planar_utility(const std::array<double, 2>& u);

// x, y, z at angles theta0 - eps, 5 theta0 - eps, 3 theta0 - eps.
std::array<std::array<double, 2>, 3> condorcet_points(double eps_angle);
std::array<std::array<double, 2>, 3> condorcet_base_utilities();

// (1 - eta) ubar_i + eta w(theta_i) for the three agents.
std::vector<SamplerReu> condorcet_agents(const CondorcetConfig& cfg);

// E[w(theta)] by adaptive quadrature.
std::array<double, 2> uniform_angle_mean(double lo, double hi);
std::array<double, 2> triangular_angle_mean(const TriangularAngleDensity& f);

ExampleReport run_condorcet_example(const CondorcetConfig& cfg = {});

}  // namespace welfarelab
