#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "ombem/errors.hpp"
#include "ombem/mesh.hpp"

namespace ombem {

enum class EndpointKind { axis, open };
enum class CurveEnd { start, end };

/// Darboux data of the edge circle traced by one open endpoint.
struct EdgeFrame {
  Eigen::Vector2d conormal;  // unit (r,z) components, points away from the surface
  double kappa_n = 0.0;      // normal curvature of the edge
  double kappa_g = 0.0;      // geodesic curvature of the edge
  CurveEnd end = CurveEnd::end;
};

namespace detail {

// P2 shape functions on the local coordinate t in [0,1]:
// left vertex, midpoint, right vertex.
inline void p2_shape(double t, double v[3]) {
  v[0] = 2.0 * t * t - 3.0 * t + 1.0;
  v[1] = 4.0 * t * (1.0 - t);
  v[2] = t * (2.0 * t - 1.0);
}
inline void p2_shape_d(double t, double v[3]) {
  v[0] = 4.0 * t - 3.0;
  v[1] = 4.0 - 8.0 * t;
  v[2] = 4.0 * t - 1.0;
}
inline constexpr double p2_shape_dd[3] = {4.0, -8.0, 4.0};

inline void p1_shape(double t, double v[2]) {
  v[0] = 1.0 - t;
  v[1] = t;
}

}  // namespace detail

/// Generating curve of the axisymmetric surface: a planar P2 field
/// alpha -> (X^r, X^z) over a ReferenceMesh, with endpoint classification.
class GeneratingCurve {
 public:
  GeneratingCurve() = default;

  GeneratingCurve(ReferenceMesh mesh, Eigen::VectorXd xr, Eigen::VectorXd xz,
                  EndpointKind start_kind, EndpointKind end_kind)
      : mesh_(std::move(mesh)),
        xr_(std::move(xr)),
        xz_(std::move(xz)),
        kind_{start_kind, end_kind} {
    const int n = 2 * mesh_.cells() + 1;
    if (xr_.size() != n || xz_.size() != n)
      throw GeometryError("GeneratingCurve: coefficient size does not match the mesh");
    scale_ = std::max({1e-30, xr_.cwiseAbs().maxCoeff(), xz_.cwiseAbs().maxCoeff()});
    snap_axis(CurveEnd::start);
    snap_axis(CurveEnd::end);
    validate_radial();
  }

  /// P2 interpolant of a closed-form curve alpha -> (r(alpha), z(alpha)).
  static GeneratingCurve interpolate(const ReferenceMesh& mesh,
                                     const std::function<double(double)>& fr,
                                     const std::function<double(double)>& fz,
                                     EndpointKind start_kind, EndpointKind end_kind) {
    const int n = 2 * mesh.cells() + 1;
    Eigen::VectorXd xr(n), xz(n);
    for (int d = 0; d < n; ++d) {
      const double a = dof_coord_static(mesh, d);
      xr[d] = fr(a);
      xz[d] = fz(a);
    }
    return GeneratingCurve(mesh, std::move(xr), std::move(xz), start_kind, end_kind);
  }

  const ReferenceMesh& mesh() const { return mesh_; }
  int ndof() const { return static_cast<int>(xr_.size()); }
  const Eigen::VectorXd& coeffs_r() const { return xr_; }
  const Eigen::VectorXd& coeffs_z() const { return xz_; }
  double scale() const { return scale_; }

  static double dof_coord_static(const ReferenceMesh& mesh, int dof) {
    if (dof % 2 == 0) return mesh.nodes[dof / 2];
    const int c = dof / 2;
    return 0.5 * (mesh.nodes[c] + mesh.nodes[c + 1]);
  }
  double dof_coord(int dof) const { return dof_coord_static(mesh_, dof); }

  EndpointKind end_kind(CurveEnd e) const {
    return kind_[e == CurveEnd::start ? 0 : 1];
  }
  bool end_is_open(CurveEnd e) const { return end_kind(e) == EndpointKind::open; }
  std::vector<CurveEnd> open_ends() const {
    std::vector<CurveEnd> out;
    if (end_is_open(CurveEnd::start)) out.push_back(CurveEnd::start);
    if (end_is_open(CurveEnd::end)) out.push_back(CurveEnd::end);
    return out;
  }
  int end_dof(CurveEnd e) const {
    return e == CurveEnd::start ? 0 : ndof() - 1;
  }

  /// Value and alpha-derivatives at local coordinate t of a cell.
  struct Jet {
    Eigen::Vector2d X;
    Eigen::Vector2d Xa;   // d/dalpha
    Eigen::Vector2d Xaa;  // d2/dalpha2
  };

  Jet jet_local(int cell, double t) const {
    double v[3], dv[3];
    detail::p2_shape(t, v);
    detail::p2_shape_d(t, dv);
    const double len = mesh_.cell_length(cell);
    Jet j{Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero()};
    for (int k = 0; k < 3; ++k) {
      const int d = 2 * cell + k;
      const Eigen::Vector2d coef(xr_[d], xz_[d]);
      j.X += v[k] * coef;
      j.Xa += (dv[k] / len) * coef;
      j.Xaa += (detail::p2_shape_dd[k] / (len * len)) * coef;
    }
    return j;
  }

  Jet jet(double alpha) const {
    const int c = mesh_.find_cell(alpha);
    const double t = (alpha - mesh_.cell_lo(c)) / mesh_.cell_length(c);
    return jet_local(c, t);
  }

  Eigen::Vector2d position(double alpha) const { return jet(alpha).X; }

  /// Total arc length by per-cell Gauss quadrature (geometric diagnostic).
  double arc_length() const;

 private:
  void snap_axis(CurveEnd e) {
    if (end_kind(e) != EndpointKind::axis) return;
    const int d = end_dof(e);
    if (std::fabs(xr_[d]) > 1e-9 * scale_)
      throw GeometryError("GeneratingCurve: declared axis endpoint is off the axis");
    xr_[d] = 0.0;
  }
  void validate_radial() const {
    for (int d = 0; d < ndof(); ++d) {
      const bool axis_dof =
          (d == 0 && end_kind(CurveEnd::start) == EndpointKind::axis) ||
          (d == ndof() - 1 && end_kind(CurveEnd::end) == EndpointKind::axis);
      if (axis_dof) continue;
      if (xr_[d] < -1e-12 * scale_)
        throw GeometryError("GeneratingCurve: negative radial coordinate at a dof");
    }
  }

  ReferenceMesh mesh_;
  Eigen::VectorXd xr_, xz_;
  EndpointKind kind_[2] = {EndpointKind::open, EndpointKind::open};
  double scale_ = 1.0;
};

namespace detail {

inline double speed_or_throw(const GeneratingCurve::Jet& j, double scale) {
  const double sp = j.Xa.norm();
  if (sp < 1e-12 * scale)
    throw GeometryError("generating curve: degenerate parametrization (|dX/dalpha| ~ 0)");
  return sp;
}

}  // namespace detail

/// Unit tangent and unit normal at alpha. The normal is the tangent rotated
/// by +pi/2 in the (r,z) plane, matching the azimuthal surface orientation
/// used by the curvature formulas (unit sphere (sin s, -cos s) has H = +1).
inline std::pair<Eigen::Vector2d, Eigen::Vector2d> normal_and_tangent(
    const GeneratingCurve& curve, double alpha) {
  const auto j = curve.jet(alpha);
  const double sp = detail::speed_or_throw(j, curve.scale());
  const Eigen::Vector2d tau = j.Xa / sp;
  const Eigen::Vector2d n(-tau.y(), tau.x());
  return {n, tau};
}

namespace detail {

struct CurvatureData {
  double H, K;
  Eigen::Vector2d tangent, normal;
  double speed;   // |dX/dalpha|
  double radius;  // X^r
  double kappa;   // in-plane curvature X^r_s X^z_ss - X^z_s X^r_ss
  double zs_over_r;
};

inline CurvatureData curvature_data(const GeneratingCurve& curve,
                                    const GeneratingCurve::Jet& j, double scale) {
  CurvatureData d;
  d.speed = speed_or_throw(j, scale);
  d.radius = j.X.x();
  if (!(d.radius > 1e-12 * scale))
    throw GeometryError("curvatures: evaluation on or beyond the axis (X^r <= 0)");
  const Eigen::Vector2d xs = j.Xa / d.speed;
  const Eigen::Vector2d xss =
      j.Xaa / (d.speed * d.speed) -
      j.Xa * (j.Xa.dot(j.Xaa)) / (d.speed * d.speed * d.speed * d.speed);
  d.tangent = xs;
  d.normal = Eigen::Vector2d(-xs.y(), xs.x());
  d.kappa = xs.x() * xss.y() - xs.y() * xss.x();
  d.zs_over_r = xs.y() / d.radius;
  d.H = 0.5 * (d.kappa + d.zs_over_r);
  d.K = d.zs_over_r * d.kappa;
  return d;
}

}  // namespace detail

/// Mean and Gaussian curvature at an off-axis point of the curve.
inline std::pair<double, double> curvatures(const GeneratingCurve& curve,
                                            double alpha) {
  const auto d = detail::curvature_data(curve, curve.jet(alpha), curve.scale());
  return {d.H, d.K};
}

/// Darboux frame of the open edge at one endpoint.
inline EdgeFrame edge_frame(const GeneratingCurve& curve, CurveEnd end) {
  if (!curve.end_is_open(end))
    throw GeometryError("edge_frame: requested endpoint lies on the axis; no edge there");
  const int cell = (end == CurveEnd::start) ? 0 : curve.mesh().cells() - 1;
  const double t = (end == CurveEnd::start) ? 0.0 : 1.0;
  const auto j = curve.jet_local(cell, t);
  const double sp = detail::speed_or_throw(j, curve.scale());
  const double r = j.X.x();
  if (!(r > 0.0)) throw GeometryError("edge_frame: edge point has nonpositive radius");
  const Eigen::Vector2d xs = j.Xa / sp;
  const double sign = (end == CurveEnd::end) ? 1.0 : -1.0;
  EdgeFrame f;
  f.end = end;
  f.conormal = sign * xs;
  f.kappa_n = sign * xs.y() / r;
  f.kappa_g = sign * xs.x() / r;
  return f;
}

/// One-sided limit of the mean curvature at an axis endpoint (diagnostic;
/// the weak form never samples the axis). Uses l'Hopital on X^z_s / X^r.
inline double axis_mean_curvature(const GeneratingCurve& curve, CurveEnd end) {
  if (curve.end_is_open(end))
    throw GeometryError("axis_mean_curvature: endpoint is an open edge, not an axis point");
  const int cell = (end == CurveEnd::start) ? 0 : curve.mesh().cells() - 1;
  const double t = (end == CurveEnd::start) ? 0.0 : 1.0;
  const auto j = curve.jet_local(cell, t);
  const double sp = detail::speed_or_throw(j, curve.scale());
  const Eigen::Vector2d xs = j.Xa / sp;
  const Eigen::Vector2d xss =
      j.Xaa / (sp * sp) - j.Xa * (j.Xa.dot(j.Xaa)) / (sp * sp * sp * sp);
  const double kappa = xs.x() * xss.y() - xs.y() * xss.x();
  if (std::fabs(xs.x()) < 1e-10)
    throw GeometryError("axis_mean_curvature: curve does not meet the axis transversally");
  const double limit = xss.y() / xs.x();  // lim X^z_s / X^r
  return 0.5 * (kappa + limit);
}

inline double GeneratingCurve::arc_length() const {
  static const double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                               0.3399810435848563, 0.8611363115940526};
  static const double gw[4] = {0.3478548451374538, 0.6521451548625461,
                               0.6521451548625461, 0.3478548451374538};
  double total = 0.0;
  for (int c = 0; c < mesh_.cells(); ++c) {
    const double len = mesh_.cell_length(c);
    for (int q = 0; q < 4; ++q) {
      const double t = 0.5 * (gx[q] + 1.0);
      total += 0.5 * gw[q] * len * jet_local(c, t).Xa.norm();
    }
  }
  return total;
}

}  // namespace ombem
