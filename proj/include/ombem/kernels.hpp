#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ombem/detail/gauss_nodes.hpp"
#include "ombem/elliptic.hpp"
#include "ombem/errors.hpp"

namespace ombem {

// Closeness of the modulus to 1 at which the public kernel entry points
// refuse and defer to the singular quadrature path.
inline constexpr double kernel_modulus_cutoff = 1.0 - 1e-14;

/// The 2x2 azimuthally integrated Stokeslet kernel sample at one (r, r', dz).
struct KernelSample {
  Eigen::Matrix2d S;  // rows/cols ordered (r, z); units 1/length
  double r, rp, dz;
};

namespace detail {

// The family of half-range ring integrals
//   J_mn(k) = int_0^{pi/2} (2 sin^2 t - 1)^n (1 - k^2 sin^2 t)^{-m/2} dt
// for m in {1,3}, n in {0,1,2}, evaluated in long double.
//
// For moderate and large moduli everything reduces to K and E. For small
// moduli those reductions lose digits to cancellation, so the defining
// integral (smooth there) is integrated directly with a fixed Gauss rule.
struct RingIntegralSet {
  long double m1[3];  // J_1n
  long double m3[3];  // J_3n
};

struct RingGauss {
  std::vector<long double> theta;
  std::vector<long double> weight;
};

inline const RingGauss& ring_gauss() {
  static const RingGauss rg = [] {
    std::vector<long double> x, w;
    gauss_legendre_ld(24, x, w);
    RingGauss out;
    const long double quarter_pi = pi_ld / 4.0L;
    out.theta.resize(x.size());
    out.weight.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      out.theta[i] = quarter_pi * (x[i] + 1.0L);  // map [-1,1] -> [0, pi/2]
      out.weight[i] = quarter_pi * w[i];
    }
    return out;
  }();
  return rg;
}

// ksq and kp2 are the squared modulus and squared complementary modulus,
// supplied separately so the near-singular limit keeps full precision.
inline RingIntegralSet ring_integrals(long double ksq, long double kp2) {
  RingIntegralSet out{};
  if (ksq < 0.25L) {
    const auto& rg = ring_gauss();
    for (std::size_t q = 0; q < rg.theta.size(); ++q) {
      long double s2 = std::sin(rg.theta[q]);
      s2 *= s2;
      const long double c = 2.0L * s2 - 1.0L;
      const long double w1 = 1.0L / std::sqrt(1.0L - ksq * s2);
      const long double w3 = w1 * w1 * w1;
      const long double wq = rg.weight[q];
      const long double c2 = c * c;
      out.m1[0] += wq * w1;
      out.m1[1] += wq * c * w1;
      out.m1[2] += wq * c2 * w1;
      out.m3[0] += wq * w3;
      out.m3[1] += wq * c * w3;
      out.m3[2] += wq * c2 * w3;
    }
    return out;
  }
  long double K, E;
  agm_KE_core(ksq, kp2, K, E);
  const long double D2 = (K - E) / ksq;                                  // int sin^2 / w
  const long double S4 = ((2.0L + ksq) * K - 2.0L * (1.0L + ksq) * E) /  // int sin^4 / w
                         (3.0L * ksq * ksq);
  out.m1[0] = K;
  out.m1[1] = 2.0L * D2 - K;
  out.m1[2] = 4.0L * S4 - 4.0L * D2 + K;
  const long double T0 = E / kp2;         // int 1 / w^3
  const long double T2 = (T0 - K) / ksq;  // int sin^2 / w^3
  const long double T4 = (2.0L * T2 - T0) / ksq;
  out.m3[0] = T0;
  out.m3[1] = 2.0L * T2 - T0;
  out.m3[2] = 4.0L * T4 - 4.0L * T2 + T0;
  return out;
}

struct RingGeometry {
  long double rho2;  // (r1+r2)^2 + z^2
  long double rho;
  long double dsq;   // (r1-r2)^2 + z^2
  long double ksq;   // 4 r1 r2 / rho2
  long double kp2;   // dsq / rho2 (exact complement of ksq)
};

inline RingGeometry ring_geometry(double r1, double r2, double zhat) {
  RingGeometry g;
  const long double dr = static_cast<long double>(r1) - r2;
  const long double sr = static_cast<long double>(r1) + r2;
  const long double z = zhat;
  g.dsq = dr * dr + z * z;
  g.rho2 = sr * sr + z * z;
  g.rho = std::sqrt(g.rho2);
  g.ksq = g.rho2 > 0.0L ? 4.0L * static_cast<long double>(r1) * r2 / g.rho2 : 0.0L;
  g.kp2 = g.rho2 > 0.0L ? g.dsq / g.rho2 : 1.0L;
  return g;
}

// Kernel matrix without the public near-singularity refusal; the singular
// quadrature path evaluates arbitrarily close to (but never at) coincidence.
inline Eigen::Matrix2d axisym_kernel_core(double r, double rp, double dz) {
  const auto g = ring_geometry(r, rp, dz);
  if (g.dsq <= 0.0L)
    throw SingularKernelError("axisym_kernel: coincident-point singularity");
  const auto J = ring_integrals(g.ksq, g.kp2);
  const long double inv1 = 4.0L / g.rho;
  const long double inv3 = 4.0L / (g.rho * g.rho2);
  const long double I10 = inv1 * J.m1[0];
  const long double I11 = inv1 * J.m1[1];
  const long double I30 = inv3 * J.m3[0];
  const long double I31 = inv3 * J.m3[1];
  const long double I32 = inv3 * J.m3[2];
  const long double rl = r, rpl = rp, dzl = dz;
  Eigen::Matrix2d S;
  S(0, 0) = static_cast<double>(I11 + (rl * rl + rpl * rpl) * I31 -
                                rl * rpl * (I30 + I32));
  S(0, 1) = static_cast<double>(dzl * (rl * I30 - rpl * I31));
  S(1, 0) = static_cast<double>(dzl * (rl * I31 - rpl * I30));
  S(1, 1) = static_cast<double>(I10 + dzl * dzl * I30);
  return S;
}

inline void check_off_singularity(const RingGeometry& g) {
  if (g.dsq <= 0.0L)
    throw SingularKernelError("ring kernel: coincident-point singularity");
  const long double cutoff =
      static_cast<long double>(kernel_modulus_cutoff) * kernel_modulus_cutoff;
  if (g.ksq >= cutoff)
    throw SingularKernelError(
        "ring kernel: modulus too close to 1; use the singular quadrature path");
}

}  // namespace detail

// Ring integral I_mn(r1, r2, zhat). The two half-range pieces of the defining
// split coincide after the substitution t -> pi/2 - t, so the sum equals
// 4 rho^{-m} J_mn(k2) with k2^2 = 4 r1 r2 / ((r1+r2)^2 + zhat^2).
inline double I_mn(int m, int n, double r1, double r2, double zhat) {
  if ((m != 1 && m != 3) || n < 0 || n > 2)
    throw std::domain_error("I_mn: m must be 1 or 3 and n in {0,1,2}");
  if (r1 < 0.0 || r2 < 0.0) throw std::domain_error("I_mn: radii must be nonnegative");
  const auto g = detail::ring_geometry(r1, r2, zhat);
  detail::check_off_singularity(g);
  const auto J = detail::ring_integrals(g.ksq, g.kp2);
  const long double Jmn = (m == 1) ? J.m1[n] : J.m3[n];
  const long double rhom = (m == 1) ? g.rho : g.rho * g.rho2;
  return static_cast<double>(4.0L / rhom * Jmn);
}

/// Free-space Stokeslet G_ij(x) = -(1/8pi) (delta_ij / |x| + x_i x_j / |x|^3).
inline Eigen::Matrix3d stokeslet(const Eigen::Vector3d& x) {
  const double r = x.norm();
  if (r == 0.0) throw SingularKernelError("stokeslet: evaluation at the origin");
  const double c = -1.0 / (8.0 * M_PI);
  Eigen::Matrix3d G = (c / r) * Eigen::Matrix3d::Identity();
  G += (c / (r * r * r)) * (x * x.transpose());
  return G;
}

/// Axisymmetric single-layer kernel matrix S(s, s') as a function of the
/// cylindrical data r = X^r(s), r' = X^r(s'), dz = X^z(s) - X^z(s').
inline KernelSample axisym_kernel(double r, double rp, double dz) {
  if (r < 0.0 || rp < 0.0)
    throw std::domain_error("axisym_kernel: radii must be nonnegative");
  detail::check_off_singularity(detail::ring_geometry(r, rp, dz));
  KernelSample out;
  out.r = r;
  out.rp = rp;
  out.dz = dz;
  out.S = detail::axisym_kernel_core(r, rp, dz);
  return out;
}

}  // namespace ombem
