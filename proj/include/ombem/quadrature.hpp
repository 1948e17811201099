#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "ombem/detail/gauss_nodes.hpp"
#include "ombem/errors.hpp"

namespace ombem {

/// A quadrature rule on its reference cell: [-1,1] for Gauss rules, (0,1]
/// for the endpoint-corrected logarithmic rules (singularity at 0).
struct QuadRule {
  enum class Kind { gauss, alpert_log };
  std::vector<double> nodes;
  std::vector<double> weights;
  int exactness_degree = 0;  // polynomial degree for gauss, nominal order for alpert_log
  Kind kind = Kind::gauss;
};

inline QuadRule gauss_rule(int n) {
  if (n < 1) throw ConfigError("gauss_rule: need at least one point");
  std::vector<long double> x, w;
  detail::gauss_legendre_ld(n, x, w);
  QuadRule rule;
  rule.nodes.assign(x.begin(), x.end());
  rule.weights.assign(w.begin(), w.end());
  rule.exactness_degree = 2 * n - 1;
  rule.kind = QuadRule::Kind::gauss;
  return rule;
}

namespace detail {

// Monomial coefficients of the shifted Legendre polynomial P_k(2t-1).
inline std::vector<long double> shifted_legendre_coeffs(int k) {
  // Represent P_0..P_k in t after substituting x = 2t-1.
  std::vector<std::vector<long double>> p(k + 1);
  p[0] = {1.0L};
  if (k >= 1) p[1] = {-1.0L, 2.0L};
  for (int m = 2; m <= k; ++m) {
    // P_m(x) = ((2m-1) x P_{m-1} - (m-1) P_{m-2}) / m, with x = 2t - 1
    std::vector<long double> pm(m + 1, 0.0L);
    for (std::size_t j = 0; j < p[m - 1].size(); ++j) {
      pm[j + 1] += (2.0L * m - 1.0L) * 2.0L * p[m - 1][j] / m;
      pm[j] += (2.0L * m - 1.0L) * (-1.0L) * p[m - 1][j] / m;
    }
    for (std::size_t j = 0; j < p[m - 2].size(); ++j)
      pm[j] -= (m - 1.0L) * p[m - 2][j] / m;
    p[m] = pm;
  }
  return p[k];
}

inline long double eval_poly(const std::vector<long double>& c, long double t) {
  long double v = 0.0L;
  for (std::size_t j = c.size(); j-- > 0;) v = v * t + c[j];
  return v;
}

// Dense solve with partial pivoting, long double, for the small moment systems.
inline std::vector<long double> solve_dense_ld(std::vector<std::vector<long double>> A,
                                               std::vector<long double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      long double f = A[r][col] / A[col][col];
      for (int c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<long double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    long double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
    x[r] = s / A[r][r];
  }
  return x;
}

// Reference rule on [0,1] with 2p nodes, exact for t^k and t^k log t,
// k = 0..p-1. Nodes are the 2p-point Gauss-Legendre nodes; weights are
// moment-matched in a shifted-Legendre basis.
struct LogPanelRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

inline const LogPanelRule& log_panel_rule(int p) {
  static std::map<int, LogPanelRule> cache;
  auto it = cache.find(p);
  if (it != cache.end()) return it->second;

  const int m = 2 * p;
  std::vector<long double> x, w;
  gauss_legendre_ld(m, x, w);
  LogPanelRule rule;
  rule.nodes.resize(m);
  for (int i = 0; i < m; ++i) rule.nodes[i] = 0.5L * (x[i] + 1.0L);

  std::vector<std::vector<long double>> A(m, std::vector<long double>(m));
  std::vector<long double> rhs(m);
  for (int k = 0; k < p; ++k) {
    auto coef = shifted_legendre_coeffs(k);
    // row 2k: P_k(2t-1); row 2k+1: P_k(2t-1) log t
    for (int i = 0; i < m; ++i) {
      long double pv = eval_poly(coef, rule.nodes[i]);
      A[2 * k][i] = pv;
      A[2 * k + 1][i] = pv * std::log(rule.nodes[i]);
    }
    long double m0 = (k == 0) ? 1.0L : 0.0L;
    long double m1 = 0.0L;  // int_0^1 P_k(2t-1) log t dt = sum c_j * (-1/(j+1)^2)
    for (std::size_t j = 0; j < coef.size(); ++j)
      m1 -= coef[j] / ((j + 1.0L) * (j + 1.0L));
    rhs[2 * k] = m0;
    rhs[2 * k + 1] = m1;
  }
  rule.weights = solve_dense_ld(A, rhs);
  return cache.emplace(p, std::move(rule)).first->second;
}

}  // namespace detail

// Endpoint-corrected composite rule for integrands phi(x) log x + psi(x) on
// (0,1] with phi, psi smooth. Panels are power-graded toward the singular
// endpoint; the innermost panel uses a generalized rule exact for low-degree
// polynomial and polynomial-times-log terms, the remaining panels use Gauss
// with geometric subdivision capping the panel aspect ratio.
inline QuadRule alpert_log_rule(int order, int n) {
  if (order < 2 || order > 12)
    throw ConfigError("alpert_log_rule: supported orders are 2..12");
  if (n < 1) throw ConfigError("alpert_log_rule: need at least one panel");

  const int pg = order / 2 + 1;  // Gauss points per smooth panel
  const auto& panel0 = detail::log_panel_rule(pg);
  std::vector<long double> gx, gw;
  detail::gauss_legendre_ld(pg, gx, gw);

  QuadRule rule;
  rule.kind = QuadRule::Kind::alpert_log;
  rule.exactness_degree = order;

  const long double q = order;
  auto breakpoint = [&](int j) {
    return std::pow(static_cast<long double>(j) / n, q);
  };

  // innermost panel with the log-exact rule
  const long double b1 = breakpoint(1);
  for (std::size_t i = 0; i < panel0.nodes.size(); ++i) {
    rule.nodes.push_back(static_cast<double>(b1 * panel0.nodes[i]));
    rule.weights.push_back(static_cast<double>(b1 * panel0.weights[i]));
  }

  auto add_gauss_panel = [&](long double a, long double b) {
    const long double half = 0.5L * (b - a);
    const long double mid = 0.5L * (a + b);
    for (int i = 0; i < pg; ++i) {
      rule.nodes.push_back(static_cast<double>(mid + half * gx[i]));
      rule.weights.push_back(static_cast<double>(half * gw[i]));
    }
  };

  const long double max_ratio = 4.0L;
  for (int j = 1; j < n; ++j) {
    long double a = breakpoint(j);
    long double b = breakpoint(j + 1);
    // subdivide geometrically whenever the panel spans too many scales
    long double ratio = b / a;
    if (ratio <= max_ratio) {
      add_gauss_panel(a, b);
    } else {
      int pieces = static_cast<int>(std::ceil(std::log(ratio) / std::log(max_ratio)));
      long double factor = std::pow(ratio, 1.0L / pieces);
      long double lo = a;
      for (int piece = 0; piece < pieces; ++piece) {
        long double hi = (piece + 1 == pieces) ? b : lo * factor;
        add_gauss_panel(lo, hi);
        lo = hi;
      }
    }
  }
  return rule;
}

/// Apply a rule to a callable on its reference cell.
template <class F>
double integrate(const QuadRule& rule, F&& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

}  // namespace ombem
