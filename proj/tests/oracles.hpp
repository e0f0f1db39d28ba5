#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's own algorithms: choices are brute-force scans over plain
// vectors, hull membership and maximality are grid searches, and the CV
// references are closed forms or direct empirical counts.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

// Indices of the menu (rows = lotteries) maximizing u, by a full scan.
inline std::vector<std::size_t> argmax(const Mat& menu, const Vec& u, double tol = 1e-12) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& x : menu) best = std::max(best, dot(u, x));
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < menu.size(); ++j) {
    if (dot(u, menu[j]) >= best - tol) out.push_back(j);
  }
  return out;
}

// Choice row of a finite-support REU: each atom's mass split evenly over its
// maximizers.
inline Vec atoms_row(const Mat& menu, const Mat& utilities, const Vec& weights) {
  Vec row(menu.size(), 0.0);
  for (std::size_t a = 0; a < utilities.size(); ++a) {
    const auto best = argmax(menu, utilities[a]);
    for (std::size_t j : best) row[j] += weights[a] / static_cast<double>(best.size());
  }
  return row;
}

inline Vec softmax(const Vec& v) {
  const double mx = *std::max_element(v.begin(), v.end());
  Vec e(v.size());
  double s = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) s += (e[k] = std::exp(v[k] - mx));
  for (double& x : e) x /= s;
  return e;
}

inline double logsumexp(const Vec& v) {
  const double mx = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - mx);
  return mx + std::log(s);
}

// Every point of the probability simplex in m <= 3 dimensions on a grid of
// the given step.
inline Mat simplex_grid(std::size_t m, std::size_t steps) {
  Mat out;
  const double h = 1.0 / static_cast<double>(steps);
  if (m == 1) return {{1.0}};
  if (m == 2) {
    for (std::size_t i = 0; i <= steps; ++i) out.push_back({i * h, 1.0 - i * h});
    return out;
  }
  for (std::size_t i = 0; i <= steps; ++i) {
    for (std::size_t j = 0; i + j <= steps; ++j) {
      out.push_back({i * h, j * h, std::max(0.0, 1.0 - (i + j) * h)});
    }
  }
  return out;
}

inline Vec combine(const Mat& rows, const Vec& y) {
  Vec out(rows.front().size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += y[i] * rows[i][j];
  }
  return out;
}

// min over grid weights of || planner - sum_i y_i rows_i ||_inf. Exceeds
// the true distance by at most 2 / steps.
inline double hull_distance_grid(const Vec& planner, const Mat& rows, std::size_t steps) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& y : simplex_grid(rows.size(), steps)) {
    const Vec mixed = combine(rows, y);
    double d = 0.0;
    for (std::size_t j = 0; j < planner.size(); ++j) d = std::max(d, std::abs(planner[j] - mixed[j]));
    best = std::min(best, d);
  }
  return best;
}

// Whether every support point of rho maximizes y^T A at this y.
inline bool support_maximizes(const Vec& rho, const Mat& rows, const Vec& y, double tol) {
  const Vec score = combine(rows, y);
  const double best = *std::max_element(score.begin(), score.end());
  for (std::size_t j = 0; j < rho.size(); ++j) {
    if (rho[j] > 1e-12 && score[j] < best - tol) return false;
  }
  return true;
}

// Candidate agent weights for the maximality search: a grid plus every
// vertex of the arrangement of tie lines {score_j = score_k} and simplex
// edges. The set of y making a support optimal is a polytope cut out by those
// lines, so when it is non-empty it contains one of these vertices.
inline Mat maximality_candidates(const Mat& rows, std::size_t steps) {
  const std::size_t m = rows.size();
  const std::size_t n = rows.front().size();
  Mat out = simplex_grid(m, steps);
  if (m == 1) return out;
  // Constraints a . t = b on the free coordinates t (y_m = 1 - sum t).
  struct Line {
    Vec a;
    double b;
  };
  std::vector<Line> lines;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      Line l{Vec(m - 1), 0.0};
      const double last = rows[m - 1][j] - rows[m - 1][k];
      for (std::size_t i = 0; i + 1 < m; ++i) l.a[i] = (rows[i][j] - rows[i][k]) - last;
      l.b = -last;
      lines.push_back(l);
    }
  }
  for (std::size_t i = 0; i + 1 < m; ++i) {
    Line l{Vec(m - 1, 0.0), 0.0};
    l.a[i] = 1.0;
    lines.push_back(l);
  }
  lines.push_back({Vec(m - 1, 1.0), 1.0});
  auto push = [&](const Vec& t) {
    Vec y(t);
    double rest = 1.0;
    for (double v : t) rest -= v;
    y.push_back(rest);
    for (double v : y) {
      if (v < -1e-12) return;
    }
    for (double& v : y) v = std::max(v, 0.0);
    out.push_back(y);
  };
  if (m == 2) {
    for (const auto& l : lines) {
      if (std::abs(l.a[0]) > 1e-14) push({l.b / l.a[0]});
    }
    return out;
  }
  for (std::size_t p = 0; p < lines.size(); ++p) {
    for (std::size_t q = p + 1; q < lines.size(); ++q) {
      const auto& l1 = lines[p];
      const auto& l2 = lines[q];
      const double det = l1.a[0] * l2.a[1] - l1.a[1] * l2.a[0];
      if (std::abs(det) < 1e-14) continue;
      push({(l1.b * l2.a[1] - l1.a[1] * l2.b) / det, (l1.a[0] * l2.b - l1.b * l2.a[0]) / det});
    }
  }
  return out;
}

inline bool maximal_by_search(const Vec& rho, const Mat& rows, std::size_t steps, double tol = 1e-9) {
  for (const auto& y : maximality_candidates(rows, steps)) {
    if (support_maximizes(rho, rows, y, tol)) return true;
  }
  return false;
}

// Mean CV when every good has the linear form b (y - p) / y + c_x for one
// type: the change in log-sum welfare, converted to money at rate y / b.
inline double quasilinear_mean_cv(double income, double b, const Vec& intercepts, const Vec& p0,
                                  const Vec& p1) {
  Vec v0(p0.size()), v1(p1.size());
  for (std::size_t k = 0; k < p0.size(); ++k) {
    v0[k] = b * (income - p0[k]) / income + intercepts[k];
    v1[k] = b * (income - p1[k]) / income + intercepts[k];
  }
  return income / b * (logsumexp(v0) - logsumexp(v1));
}

// sup_a |F_N(a) - G(a)| evaluated at every sample point from both sides.
// G is evaluated with a slack window so that atoms of G sitting exactly at a
// sample value (bisection noise ~1e-10) are not counted as distance.
template <class Cdf>
double ks_distance(std::vector<double> samples, const Cdf& cdf, double slack = 1e-9) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double above = static_cast<double>(k + 1) / n;  // F_N at the sample
    const double below = static_cast<double>(k) / n;      // F_N just before it
    const double g_hi = cdf(samples[k] + slack);
    const double g_lo = cdf(samples[k] - slack);
    worst = std::max(worst, std::max(0.0, above - g_hi));
    worst = std::max(worst, std::max(0.0, g_lo - below));
  }
  return worst;
}

// Empirical tau-quantile inf{z : F_N(z) >= tau}.
inline double empirical_quantile(std::vector<double> samples, double tau) {
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  std::size_t k = static_cast<std::size_t>(std::ceil(tau * n - 1e-12));
  if (k == 0) k = 1;
  return samples[k - 1];
}

// Random probability vector (normalized exponentials).
template <class Rng>
Vec random_simplex(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  Vec v(n);
  double s = 0.0;
  for (double& x : v) s += (x = e(rng));
  for (double& x : v) x /= s;
  return v;
}

}  // namespace oracle
