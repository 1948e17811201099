#pragma once

#include <cmath>
#include <vector>

namespace ombem::detail {

// Gauss-Legendre nodes and weights on [-1, 1], computed to long double
// precision by Newton iteration on P_n with Chebyshev starting guesses.
inline void gauss_legendre_ld(int n, std::vector<long double>& x,
                              std::vector<long double>& w) {
  x.assign(n, 0.0L);
  w.assign(n, 0.0L);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double t = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double p0, p1, dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      p0 = 1.0L;
      p1 = t;
      for (int k = 2; k <= n; ++k) {
        long double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0L);
      long double dt = p1 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-21L) break;
    }
    // recompute P_{n-1} at the converged node for the weight
    p0 = 1.0L;
    p1 = t;
    for (int k = 2; k <= n; ++k) {
      long double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (t * p1 - p0) / (t * t - 1.0L);
    x[i] = -t;
    x[n - 1 - i] = t;
    long double wi = 2.0L / ((1.0L - t * t) * dp * dp);
    w[i] = wi;
    w[n - 1 - i] = wi;
  }
  if (n % 2 == 1) x[n / 2] = 0.0L;  // exact midpoint for odd rules
}

}  // namespace ombem::detail
