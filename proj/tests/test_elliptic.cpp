#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "ombem/elliptic.hpp"
#include "ombem/oracles.hpp"

using ombem::elliptic_KE;

TEST_CASE("elliptic integrals at k = 0") {
  auto p = elliptic_KE(0.0);
  REQUIRE(p.K_val == Catch::Approx(M_PI / 2).epsilon(1e-15));
  REQUIRE(p.E_val == Catch::Approx(M_PI / 2).epsilon(1e-15));
}

TEST_CASE("elliptic integrals against the quadrature oracle") {
  // dual oracle: AGM implementation vs adaptive quadrature of the integrals
  for (double k : {0.1, 0.3, 0.5, 0.7, 0.9, 0.95, 0.99}) {
    auto fast = elliptic_KE(k);
    auto [Kq, Eq] = ombem::oracles::elliptic_KE_quadrature(k);
    CAPTURE(k);
    REQUIRE(fast.K_val == Catch::Approx(Kq).epsilon(1e-12));
    REQUIRE(fast.E_val == Catch::Approx(Eq).epsilon(1e-12));
  }
}

TEST_CASE("elliptic reference values at k = 0.5") {
  auto p = elliptic_KE(0.5);
  REQUIRE(p.K_val == Catch::Approx(1.6857503548125961).epsilon(1e-12));
  REQUIRE(p.E_val == Catch::Approx(1.4674622093394272).epsilon(1e-12));
}

TEST_CASE("elliptic monotonicity and bounds") {
  double lastK = 0.0, lastE = 10.0;
  for (double k = 0.0; k < 0.999; k += 0.037) {
    auto p = elliptic_KE(k);
    REQUIRE(p.K_val >= M_PI / 2 - 1e-15);
    REQUIRE(p.E_val <= M_PI / 2 + 1e-15);
    REQUIRE(p.E_val > 0.0);
    REQUIRE(p.K_val > lastK - 1e-15);
    REQUIRE(p.E_val < lastE + 1e-15);
    REQUIRE(p.E_val <= p.K_val + 1e-15);
    lastK = p.K_val;
    lastE = p.E_val;
  }
}

TEST_CASE("Legendre relation") {
  // E(k) K(k') + E(k') K(k) - K(k) K(k') = pi/2 for k^2 + k'^2 = 1
  for (double k : {0.2, 0.5, 0.8, 1.0 / std::sqrt(2.0)}) {
    const double kp = std::sqrt(1.0 - k * k);
    auto a = elliptic_KE(k);
    auto b = elliptic_KE(kp);
    const double rel =
        a.E_val * b.K_val + b.E_val * a.K_val - a.K_val * b.K_val;
    REQUIRE(rel == Catch::Approx(M_PI / 2).epsilon(1e-12));
  }
}

TEST_CASE("elliptic domain errors") {
  REQUIRE_THROWS_AS(elliptic_KE(1.0), std::domain_error);
  REQUIRE_THROWS_AS(elliptic_KE(1.5), std::domain_error);
  REQUIRE_THROWS_AS(elliptic_KE(-0.1), std::domain_error);
}
