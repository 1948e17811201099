#include <catch2/catch_amalgamated.hpp>
#include <Eigen/Dense>
#include <cmath>

#include "ombem/fem.hpp"

using namespace ombem;

namespace {

GeneratingCurve flat_disk(int N, double R = 1.0) {
  auto mesh = build_mesh(N, 0.0, RefineAt::none);
  return GeneratingCurve::interpolate(
      mesh, [R](double a) { return R * a; }, [](double) { return 0.0; },
      EndpointKind::axis, EndpointKind::open);
}

GeneratingCurve annulus(int N, double ri, double ro) {
  auto mesh = build_mesh(N, 1e-3, RefineAt::both);
  return GeneratingCurve::interpolate(
      mesh, [=](double a) { return ri + a * (ro - ri); },
      [](double) { return 0.0; }, EndpointKind::open, EndpointKind::open);
}

}  // namespace

TEST_CASE("dof counts and constraints") {
  auto mesh = build_mesh(4, 0.0, RefineAt::none);
  auto p2 = build_space(mesh, 2, 1, ConstraintSpec::none());
  REQUIRE(p2.ndof() == 9);
  REQUIRE(p2.nconstrained() == 0);
  REQUIRE(p2.nfree() == 9);

  auto p1 = build_space(mesh, 1, 1, ConstraintSpec::none());
  REQUIRE(p1.ndof() == 5);

  auto dir = build_space(mesh, 2, 1,
                         ConstraintSpec::dirichlet_at({{CurveEnd::end, 3.5}}),
                         EndKinds{EndpointKind::axis, EndpointKind::open});
  REQUIRE(dir.ndof() == 9);
  REQUIRE(dir.nconstrained() == 1);
  REQUIRE(dir.nfree() == 8);
  REQUIRE(dir.constrained_value(8) == 3.5);

  // Dirichlet data pinned to an axis endpoint is a configuration error
  REQUIRE_THROWS_AS(
      build_space(mesh, 2, 1,
                  ConstraintSpec::dirichlet_at({{CurveEnd::start, 1.0}}),
                  EndKinds{EndpointKind::axis, EndpointKind::open}),
      ConfigError);

  auto vpart = build_space(mesh, 2, 2, ConstraintSpec::axis_r_zero(),
                           EndKinds{EndpointKind::axis, EndpointKind::open});
  REQUIRE(vpart.nflat() == 18);
  REQUIRE(vpart.nconstrained() == 1);
  REQUIRE(vpart.flat_to_free[0] == -1);  // r component of the axis dof

  REQUIRE_THROWS_AS(build_space(mesh, 3, 1, ConstraintSpec::none()), ConfigError);
}

TEST_CASE("partition of unity at quadrature points") {
  auto mesh = build_mesh(6, 1e-3, RefineAt::end);
  for (int degree : {1, 2}) {
    for (double t : {0.05, 0.31, 0.77, 0.98}) {
      auto b = detail::local_basis(degree, t, mesh.cell_length(2));
      double s = 0.0, ds = 0.0;
      for (int k = 0; k < b.n; ++k) {
        s += b.val[k];
        ds += b.dalpha[k];
      }
      REQUIRE(s == Catch::Approx(1.0).margin(1e-14));
      REQUIRE(ds == Catch::Approx(0.0).margin(1e-12));
    }
  }
}

TEST_CASE("weighted mass and stiffness integrals on the flat disk") {
  auto disk = flat_disk(8);
  auto p2 = build_space(disk.mesh(), 2, 1, ConstraintSpec::none());
  auto M = assemble_weighted_form(p2, p2, disk, FormKind::mass_weighted);

  Eigen::VectorXd ones = Eigen::VectorXd::Ones(p2.nflat());
  // <1,1>_C = int_0^1 r dr = 1/2
  REQUIRE(ones.dot(M * ones) == Catch::Approx(0.5).epsilon(1e-13));

  // <1, X^r>_C = int r^2 dr = 1/3
  Eigen::VectorXd r(p2.nflat());
  for (int d = 0; d < p2.ndof(); ++d) r[d] = p2.dof_coords[d];
  REQUIRE(ones.dot(M * r) == Catch::Approx(1.0 / 3.0).epsilon(1e-13));

  auto K = assemble_weighted_form(p2, p2, disk, FormKind::stiffness_weighted);
  // f = g = s: <f_s, g_s>_C = int r dr = 1/2
  REQUIRE(r.dot(K * r) == Catch::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("surface divergence of a radial linear field on the annulus") {
  // U = (c r, 0): div_G U = c + c = 2c on a flat annulus
  auto an = annulus(12, 1.0, 2.0);
  auto p2v = build_space(an.mesh(), 2, 2, ConstraintSpec::none());
  auto p1 = build_space(an.mesh(), 1, 1, ConstraintSpec::none());
  auto D = assemble_weighted_form(p2v, p1, an, FormKind::surface_divergence);

  const double c = 0.37;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(p2v.nflat());
  for (int d = 0; d < p2v.ndof(); ++d) u[2 * d + 0] = c * an.coeffs_r()[d];
  Eigen::VectorXd q = Eigen::VectorXd::Ones(p1.nflat());
  // <1, 2c>_C = 2c int_1^2 r dr = 3c
  REQUIRE(q.dot(D * u) == Catch::Approx(3.0 * c).epsilon(1e-12));

  // divergence-free field U = (F/r, 0): <Q, div U> = 0 for every Q
  Eigen::VectorXd uf = Eigen::VectorXd::Zero(p2v.nflat());
  for (int d = 0; d < p2v.ndof(); ++d) uf[2 * d + 0] = 1.0 / an.coeffs_r()[d];
  // 1/r is not exactly P2, so allow interpolation error
  Eigen::VectorXd resid = D * uf;
  REQUIRE(resid.cwiseAbs().maxCoeff() < 2e-4);
}

TEST_CASE("azimuthal rate and tangential rate forms") {
  auto an = annulus(10, 1.0, 2.0);
  auto p2v = build_space(an.mesh(), 2, 2, ConstraintSpec::none());
  auto A = assemble_weighted_form(p2v, p2v, an, FormKind::azimuthal_rate);
  // <psi^r/r, U^r/r> with psi = U = (r, 0): int_1^2 r (1)(1) dr... here
  // psi^r/r = 1, so the value is int_1^2 r * (1/r)(1/r) * r dr ... = 3/2
  Eigen::VectorXd u = Eigen::VectorXd::Zero(p2v.nflat());
  for (int d = 0; d < p2v.ndof(); ++d) u[2 * d + 0] = an.coeffs_r()[d];
  REQUIRE(u.dot(A * u) == Catch::Approx(1.5).epsilon(1e-12));

  auto T = assemble_weighted_form(p2v, p2v, an, FormKind::tangential_rate);
  // X_s = e_r; X_s . U_s = c for U = (c r, 0): value c^2 int r dr = 1.5 c^2
  Eigen::VectorXd u2 = 2.0 * u;
  REQUIRE(u2.dot(T * u2) == Catch::Approx(6.0).epsilon(1e-12));
  // z-translation produces no tangential rate
  Eigen::VectorXd w = Eigen::VectorXd::Zero(p2v.nflat());
  for (int d = 0; d < p2v.ndof(); ++d) w[2 * d + 1] = 1.0;
  REQUIRE(w.dot(T * w) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("normal projection couples the scalar through the normal") {
  auto disk = flat_disk(8);
  auto p2v = build_space(disk.mesh(), 2, 2, ConstraintSpec::none());
  auto p2s = build_space(disk.mesh(), 2, 1, ConstraintSpec::none());
  auto Np = assemble_weighted_form(p2s, p2v, disk, FormKind::normal_projection);
  // n = +e_z on the disk; <psi, 1*n> with psi = e_z: int r dr = 1/2
  Eigen::VectorXd g = Eigen::VectorXd::Ones(p2s.nflat());
  Eigen::VectorXd psi_z = Eigen::VectorXd::Zero(p2v.nflat());
  for (int d = 0; d < p2v.ndof(); ++d) psi_z[2 * d + 1] = 1.0;
  REQUIRE(psi_z.dot(Np * g) == Catch::Approx(0.5).epsilon(1e-13));
  Eigen::VectorXd psi_r = Eigen::VectorXd::Zero(p2v.nflat());
  for (int d = 0; d < p2v.ndof(); ++d) psi_r[2 * d + 0] = 1.0;
  REQUIRE(psi_r.dot(Np * g) == Catch::Approx(0.0).margin(1e-14));
}

TEST_CASE("boundary loads at the open edges") {
  auto an = annulus(8, 1.0, 2.0);
  auto p2v = build_space(an.mesh(), 2, 2, ConstraintSpec::none());

  auto fo = edge_frame(an, CurveEnd::end);
  auto fi = edge_frame(an, CurveEnd::start);
  auto load = boundary_load(
      p2v, an, {{CurveEnd::end, fo.conormal}, {CurveEnd::start, fi.conormal}});

  // only the edge dofs receive entries, weighted by the edge radius
  const int last = p2v.ndof() - 1;
  REQUIRE(load[2 * last + 0] == Catch::Approx(2.0).epsilon(1e-13));   // R_o * nu_r
  REQUIRE(load[2 * 0 + 0] == Catch::Approx(-1.0).epsilon(1e-13));    // R_i * (-1)
  REQUIRE(load.segment(2, 2 * last - 2).cwiseAbs().maxCoeff() == 0.0);

  auto zero = boundary_load(p2v, an, {{CurveEnd::end, Eigen::Vector2d::Zero()}});
  REQUIRE(zero.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("constraint discipline: expand reinjects prescribed values") {
  auto mesh = build_mesh(4, 0.0, RefineAt::none);
  auto lay = build_space(mesh, 2, 1,
                         ConstraintSpec::dirichlet_at({{CurveEnd::end, -2.0}}),
                         EndKinds{EndpointKind::open, EndpointKind::open});
  Eigen::VectorXd free = Eigen::VectorXd::LinSpaced(lay.nfree(), 1.0, 8.0);
  auto full = lay.expand(free);
  REQUIRE(full.size() == 9);
  REQUIRE(full[8] == -2.0);
  REQUIRE(full[0] == 1.0);
}

TEST_CASE("Taylor-Hood divergence block has full rank on the open problem") {
  auto disk = flat_disk(4);
  auto p2v = build_space(disk.mesh(), 2, 2, ConstraintSpec::axis_r_zero(),
                         EndKinds::of(disk));
  auto p1 = build_space(disk.mesh(), 1, 1, ConstraintSpec::none());
  auto D = assemble_weighted_form(p2v, p1, disk, FormKind::surface_divergence);
  // restrict trial columns to free velocity dofs
  Eigen::MatrixXd Dd = Eigen::MatrixXd::Zero(p1.nflat(), p2v.nfree());
  for (int k = 0; k < D.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(D, k); it; ++it) {
      const int cf = p2v.flat_to_free[it.col()];
      if (cf >= 0) Dd(it.row(), cf) = it.value();
    }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Dd);
  const auto& sv = svd.singularValues();
  REQUIRE(sv(sv.size() - 1) > 1e-10 * sv(0));  // no spurious pressure mode
}
