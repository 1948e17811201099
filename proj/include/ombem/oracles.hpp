#pragma once

// Reference implementations used to cross-check the fast paths. These stay
// deliberately independent of the closed-form code they validate: everything
// here goes through adaptive quadrature of defining integrals.

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "ombem/detail/gauss_nodes.hpp"
#include "ombem/kernels.hpp"

namespace ombem::oracles {

namespace detail {

struct PairRule {
  std::vector<double> x10, w10, x20, w20;
};

inline const PairRule& pair_rule() {
  static const PairRule r = [] {
    PairRule out;
    std::vector<long double> x, w;
    ombem::detail::gauss_legendre_ld(10, x, w);
    out.x10.assign(x.begin(), x.end());
    out.w10.assign(w.begin(), w.end());
    ombem::detail::gauss_legendre_ld(20, x, w);
    out.x20.assign(x.begin(), x.end());
    out.w20.assign(w.begin(), w.end());
    return out;
  }();
  return r;
}

inline double panel(const std::vector<double>& x, const std::vector<double>& w,
                    const std::function<double(double)>& f, double a, double b) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * f(mid + half * x[i]);
  return half * acc;
}

inline double adaptive_rec(const std::function<double(double)>& f, double a,
                           double b, double tol, int depth) {
  const auto& r = pair_rule();
  const double coarse = panel(r.x10, r.w10, f, a, b);
  const double fine = panel(r.x20, r.w20, f, a, b);
  const double err = std::fabs(fine - coarse);
  // the relative floor keeps the recursion from chasing roundoff
  if (depth > 24 || err <= tol || err <= 1e-15 * std::fabs(fine)) return fine;
  const double m = 0.5 * (a + b);
  return adaptive_rec(f, a, m, 0.5 * tol, depth + 1) +
         adaptive_rec(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss quadrature with an absolute tolerance.
inline double adaptive_integrate(const std::function<double(double)>& f, double a,
                                 double b, double tol = 1e-13) {
  return detail::adaptive_rec(f, a, b, tol, 0);
}

/// K(k) and E(k) by adaptive quadrature of the defining integrals.
inline std::pair<double, double> elliptic_KE_quadrature(double k) {
  const double k2 = k * k;
  auto fK = [k2](double t) {
    const double s = std::sin(t);
    return 1.0 / std::sqrt(1.0 - k2 * s * s);
  };
  auto fE = [k2](double t) {
    const double s = std::sin(t);
    return std::sqrt(1.0 - k2 * s * s);
  };
  return {adaptive_integrate(fK, 0.0, 0.5 * M_PI, 1e-14),
          adaptive_integrate(fE, 0.0, 0.5 * M_PI, 1e-14)};
}

/// I_mn by direct adaptive quadrature of its two defining half-range
/// integrals (the two-modulus split form), independent of the K/E closed
/// forms used by the implementation.
inline double imn_quadrature(int m, int n, double r1, double r2, double zhat) {
  const double dsq = (r1 - r2) * (r1 - r2) + zhat * zhat;
  const double rho2 = (r1 + r2) * (r1 + r2) + zhat * zhat;
  const double k1sq = 4.0 * r1 * r2 / dsq;
  const double k2sq = 4.0 * r1 * r2 / rho2;
  auto f1 = [&](double t) {
    const double s2 = std::sin(t) * std::sin(t);
    return std::pow(1.0 - 2.0 * s2, n) / std::pow(1.0 + k1sq * s2, 0.5 * m);
  };
  auto f2 = [&](double t) {
    const double s2 = std::sin(t) * std::sin(t);
    return std::pow(2.0 * s2 - 1.0, n) / std::pow(1.0 - k2sq * s2, 0.5 * m);
  };
  const double I1 = adaptive_integrate(f1, 0.0, 0.5 * M_PI, 1e-14);
  const double I2 = adaptive_integrate(f2, 0.0, 0.5 * M_PI, 1e-14);
  return 2.0 / std::pow(dsq, 0.5 * m) * I1 + 2.0 / std::pow(rho2, 0.5 * m) * I2;
}

/// Azimuthal ring integral of the 3D Stokeslet, normalized so it matches the
/// reduced kernel: S_oracle = -8 pi * int_0^{2pi} P(phi') dphi' with P the
/// (r,z)-projected Stokeslet between the target point and the source ring.
inline Eigen::Matrix2d ring_kernel_oracle(double r, double rp, double dz,
                                          double tol = 1e-12) {
  Eigen::Matrix2d out;
  const Eigen::Vector3d x(r, 0.0, dz);  // target at phi = 0, source ring at z' = 0
  const Eigen::Vector3d er_x(1.0, 0.0, 0.0);
  const Eigen::Vector3d ez(0.0, 0.0, 1.0);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      auto f = [&](double phi) {
        const Eigen::Vector3d xp(rp * std::cos(phi), rp * std::sin(phi), 0.0);
        const Eigen::Vector3d er_p(std::cos(phi), std::sin(phi), 0.0);
        const Eigen::Matrix3d G = stokeslet(x - xp);
        const Eigen::Vector3d ta = (a == 0) ? er_x : ez;
        const Eigen::Vector3d tb = (b == 0) ? er_p : ez;
        return ta.dot(G * tb);
      };
      out(a, b) = -8.0 * M_PI * adaptive_integrate(f, 0.0, 2.0 * M_PI, tol);
    }
  }
  return out;
}

/// Power series value of int_0^1 sin(x) log(x) dx.
inline double sin_log_integral_series() {
  double sum = 0.0;
  double fact = 1.0;  // (2k+1)!
  for (int k = 0; k < 12; ++k) {
    if (k > 0) fact *= (2.0 * k) * (2.0 * k + 1.0);
    const double term = 1.0 / (fact * (2.0 * k + 2.0) * (2.0 * k + 2.0));
    sum += (k % 2 == 0) ? -term : term;
  }
  return sum;
}

}  // namespace ombem::oracles
