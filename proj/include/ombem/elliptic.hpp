#pragma once

#include <cmath>
#include <stdexcept>

namespace ombem {

/// Complete elliptic integrals of the first and second kind at modulus k.
struct EllipticPair {
  double K_val;  // K(k) = int_0^{pi/2} (1 - k^2 sin^2 t)^{-1/2} dt
  double E_val;  // E(k) = int_0^{pi/2} (1 - k^2 sin^2 t)^{+1/2} dt
  double k;      // modulus, 0 <= k < 1
};

namespace detail {

inline constexpr long double pi_ld = 3.14159265358979323846264338327950288L;

// Arithmetic-geometric mean evaluation of K and E. Takes the squared modulus
// and the squared complementary modulus separately so callers that know
// kp2 = 1 - ksq exactly (e.g. as a ratio of squared distances) avoid the
// cancellation of forming it from ksq near the singular limit.
inline void agm_KE_core(long double ksq, long double kp2, long double& K,
                        long double& E) {
  long double a = 1.0L;
  long double b = std::sqrt(kp2);
  long double c2_sum = 0.5L * ksq;  // 2^{n-1} c_n^2 accumulated, n = 0 term
  long double pow2 = 0.5L;
  for (int n = 0; n < 80; ++n) {
    long double c = 0.5L * (a - b);
    if (std::fabs(c) <= 1e-24L * a) break;
    long double an = 0.5L * (a + b);
    b = std::sqrt(a * b);
    a = an;
    pow2 *= 2.0L;
    c2_sum += pow2 * c * c;
  }
  K = pi_ld / (2.0L * (0.5L * (a + b)));
  E = K * (1.0L - c2_sum);
}

inline void agm_KE_msq(long double ksq, long double& K, long double& E) {
  agm_KE_core(ksq, 1.0L - ksq, K, E);
}

}  // namespace detail

inline EllipticPair elliptic_KE(double k) {
  if (!(k >= 0.0)) throw std::domain_error("elliptic_KE: modulus must satisfy k >= 0");
  if (k >= 1.0) throw std::domain_error("elliptic_KE: K(k) diverges as k -> 1");
  long double K, E;
  detail::agm_KE_msq(static_cast<long double>(k) * k, K, E);
  return {static_cast<double>(K), static_cast<double>(E), k};
}

}  // namespace ombem
