#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "ombem/curve.hpp"
#include "ombem/errors.hpp"
#include "ombem/mesh.hpp"
#include "ombem/quadrature.hpp"

namespace ombem {

/// Which ends the curve touches the axis at; needed to place constraints.
struct EndKinds {
  EndpointKind start = EndpointKind::open;
  EndpointKind end = EndpointKind::open;
  static EndKinds of(const GeneratingCurve& c) {
    return {c.end_kind(CurveEnd::start), c.end_kind(CurveEnd::end)};
  }
};

struct ConstraintSpec {
  enum class Kind { none, axis_r_zero, dirichlet };
  Kind kind = Kind::none;
  std::vector<std::pair<CurveEnd, double>> dirichlet;  // per-end prescribed values

  static ConstraintSpec none() { return {}; }
  static ConstraintSpec axis_r_zero() { return {Kind::axis_r_zero, {}}; }
  static ConstraintSpec dirichlet_at(std::vector<std::pair<CurveEnd, double>> v) {
    return {Kind::dirichlet, std::move(v)};
  }
};

/// Scalar or two-component nodal space over a ReferenceMesh with an explicit
/// constraint set. Flat indices interleave components: flat = dof*ncomp + comp.
struct DofLayout {
  ReferenceMesh mesh;
  int degree = 2;  // 1 or 2
  int ncomp = 1;
  std::vector<double> dof_coords;                   // per scalar dof
  std::vector<std::pair<int, double>> constraints;  // (flat index, value), sorted
  std::vector<int> flat_to_free;                    // -1 where constrained
  std::vector<int> free_to_flat;

  int ndof() const { return degree == 2 ? 2 * mesh.cells() + 1 : mesh.cells() + 1; }
  int nflat() const { return ndof() * ncomp; }
  int nfree() const { return static_cast<int>(free_to_flat.size()); }
  int nconstrained() const { return static_cast<int>(constraints.size()); }

  bool same_mesh(const ReferenceMesh& other) const { return mesh.same_partition(other); }

  int end_dof(CurveEnd e) const { return e == CurveEnd::start ? 0 : ndof() - 1; }

  double constrained_value(int flat) const {
    for (const auto& [idx, val] : constraints)
      if (idx == flat) return val;
    throw ConfigError("DofLayout: flat index is not constrained");
  }

  /// Expand a free-dof vector into a full flat vector, re-injecting the
  /// prescribed values on constrained dofs.
  Eigen::VectorXd expand(const Eigen::VectorXd& free) const {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(nflat());
    for (int i = 0; i < nfree(); ++i) full[free_to_flat[i]] = free[i];
    for (const auto& [idx, val] : constraints) full[idx] = val;
    return full;
  }

  void rebuild_index_maps() {
    std::sort(constraints.begin(), constraints.end());
    flat_to_free.assign(nflat(), 0);
    for (const auto& [idx, val] : constraints) flat_to_free[idx] = -1;
    free_to_flat.clear();
    for (int f = 0; f < nflat(); ++f) {
      if (flat_to_free[f] == 0) {
        flat_to_free[f] = static_cast<int>(free_to_flat.size());
        free_to_flat.push_back(f);
      }
    }
  }
};

inline DofLayout build_space(const ReferenceMesh& mesh, int degree, int ncomp,
                             const ConstraintSpec& cs,
                             const EndKinds& ends = EndKinds{}) {
  if (degree != 1 && degree != 2)
    throw ConfigError("build_space: degree must be 1 or 2");
  if (ncomp != 1 && ncomp != 2)
    throw ConfigError("build_space: component count must be 1 or 2");
  DofLayout lay;
  lay.mesh = mesh;
  lay.degree = degree;
  lay.ncomp = ncomp;
  lay.dof_coords.resize(lay.ndof());
  for (int d = 0; d < lay.ndof(); ++d) {
    if (degree == 1)
      lay.dof_coords[d] = mesh.nodes[d];
    else
      lay.dof_coords[d] = GeneratingCurve::dof_coord_static(mesh, d);
  }
  auto kind_of = [&](CurveEnd e) {
    return e == CurveEnd::start ? ends.start : ends.end;
  };
  switch (cs.kind) {
    case ConstraintSpec::Kind::none:
      break;
    case ConstraintSpec::Kind::axis_r_zero: {
      if (ncomp != 2)
        throw ConfigError("build_space: axis_r_zero applies to two-component fields");
      for (CurveEnd e : {CurveEnd::start, CurveEnd::end})
        if (kind_of(e) == EndpointKind::axis)
          lay.constraints.emplace_back(lay.end_dof(e) * ncomp + 0, 0.0);
      break;
    }
    case ConstraintSpec::Kind::dirichlet: {
      for (const auto& [e, val] : cs.dirichlet) {
        if (kind_of(e) == EndpointKind::axis)
          throw ConfigError(
              "build_space: Dirichlet condition requested at an axis endpoint of an "
              "edge-only field");
        for (int comp = 0; comp < ncomp; ++comp)
          lay.constraints.emplace_back(lay.end_dof(e) * ncomp + comp, val);
      }
      break;
    }
  }
  lay.rebuild_index_maps();
  return lay;
}

/// Coefficients of a field over a DofLayout (flat, component-interleaved).
struct FieldVector {
  std::shared_ptr<const DofLayout> layout;
  Eigen::VectorXd coeffs;

  double value(int dof, int comp = 0) const {
    return coeffs[dof * layout->ncomp + comp];
  }
  double& value(int dof, int comp = 0) {
    return coeffs[dof * layout->ncomp + comp];
  }

  /// Evaluate at local cell coordinate t for one component.
  double eval_local(int cell, double t, int comp = 0) const {
    const int nc = layout->ncomp;
    if (layout->degree == 2) {
      double v[3];
      detail::p2_shape(t, v);
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += v[k] * coeffs[(2 * cell + k) * nc + comp];
      return acc;
    }
    double v[2];
    detail::p1_shape(t, v);
    return v[0] * coeffs[cell * nc + comp] + v[1] * coeffs[(cell + 1) * nc + comp];
  }

  double eval(double alpha, int comp = 0) const {
    const int c = layout->mesh.find_cell(alpha);
    const double t =
        (alpha - layout->mesh.cell_lo(c)) / layout->mesh.cell_length(c);
    return eval_local(c, t, comp);
  }
};

inline FieldVector make_field(std::shared_ptr<const DofLayout> layout) {
  FieldVector f;
  f.coeffs = Eigen::VectorXd::Zero(layout->nflat());
  f.layout = std::move(layout);
  return f;
}

inline FieldVector interpolate_field(
    std::shared_ptr<const DofLayout> layout,
    const std::function<double(double, int)>& fn) {
  FieldVector f = make_field(std::move(layout));
  const auto& lay = *f.layout;
  for (int d = 0; d < lay.ndof(); ++d)
    for (int c = 0; c < lay.ncomp; ++c)
      f.coeffs[d * lay.ncomp + c] = fn(lay.dof_coords[d], c);
  return f;
}

enum class FormKind {
  mass_weighted,       // <f, g>_C
  stiffness_weighted,  // <f_s, g_s>_C
  surface_divergence,  // <Q, X_s . U_s + U^r / X^r>_C  (scalar test, vector trial)
  tangential_rate,     // <X_s . psi_s, X_s . U_s>_C    (vector, vector)
  azimuthal_rate,      // <psi^r / X^r, U^r / X^r>_C    (vector, vector; r-r only)
  normal_projection,   // <psi, f n>_C                  (vector test, scalar trial)
};

namespace detail {

struct CellQuadGeom {
  double t, w_alpha;          // local coordinate and alpha-space weight
  double radius, speed;       // X^r, |dX/dalpha|
  Eigen::Vector2d xs, normal; // unit tangent and normal
};

// Gauss data for one cell of the curve.
inline std::vector<CellQuadGeom> cell_geometry(const GeneratingCurve& curve,
                                               int cell, const QuadRule& gauss) {
  std::vector<CellQuadGeom> out(gauss.nodes.size());
  const double len = curve.mesh().cell_length(cell);
  for (std::size_t q = 0; q < gauss.nodes.size(); ++q) {
    const double t = 0.5 * (gauss.nodes[q] + 1.0);
    const auto j = curve.jet_local(cell, t);
    CellQuadGeom g;
    g.t = t;
    g.w_alpha = 0.5 * gauss.weights[q] * len;
    g.speed = speed_or_throw(j, curve.scale());
    g.radius = j.X.x();
    g.xs = j.Xa / g.speed;
    g.normal = Eigen::Vector2d(-g.xs.y(), g.xs.x());
    out[q] = g;
  }
  return out;
}

// Local scalar basis (values and alpha-derivatives) for degree 1 or 2.
struct LocalBasis {
  int n;                 // 2 or 3 local functions
  double val[3];
  double dalpha[3];
};

inline LocalBasis local_basis(int degree, double t, double cell_len) {
  LocalBasis b;
  if (degree == 2) {
    b.n = 3;
    p2_shape(t, b.val);
    double dv[3];
    p2_shape_d(t, dv);
    for (int k = 0; k < 3; ++k) b.dalpha[k] = dv[k] / cell_len;
  } else {
    b.n = 2;
    p1_shape(t, b.val);
    b.dalpha[0] = -1.0 / cell_len;
    b.dalpha[1] = 1.0 / cell_len;
  }
  return b;
}

inline int local_to_global(int degree, int cell, int k) {
  return degree == 2 ? 2 * cell + k : cell + k;
}

}  // namespace detail

/// Assemble one of the weighted curve forms over full (unconstrained) flat
/// dofs. Rows index the test space, columns the trial space.
inline Eigen::SparseMatrix<double> assemble_weighted_form(
    const DofLayout& trial, const DofLayout& test, const GeneratingCurve& curve,
    FormKind form, int gauss_points = 4) {
  if (!trial.same_mesh(test.mesh) || !trial.same_mesh(curve.mesh()))
    throw ConfigError("assemble_weighted_form: trial/test/curve meshes differ");
  switch (form) {
    case FormKind::mass_weighted:
    case FormKind::stiffness_weighted:
      if (trial.ncomp != test.ncomp)
        throw ConfigError("assemble_weighted_form: component counts must match");
      break;
    case FormKind::surface_divergence:
      if (test.ncomp != 1 || trial.ncomp != 2)
        throw ConfigError("surface_divergence: needs scalar test and vector trial");
      break;
    case FormKind::tangential_rate:
    case FormKind::azimuthal_rate:
      if (test.ncomp != 2 || trial.ncomp != 2)
        throw ConfigError("rate forms: need two-component spaces");
      break;
    case FormKind::normal_projection:
      if (test.ncomp != 2 || trial.ncomp != 1)
        throw ConfigError("normal_projection: needs vector test and scalar trial");
      break;
  }

  const QuadRule gauss = gauss_rule(gauss_points);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(curve.mesh().cells()) * 36);

  for (int cell = 0; cell < curve.mesh().cells(); ++cell) {
    const double len = curve.mesh().cell_length(cell);
    const auto geo = detail::cell_geometry(curve, cell, gauss);
    for (const auto& g : geo) {
      const auto bt = detail::local_basis(test.degree, g.t, len);
      const auto bu = detail::local_basis(trial.degree, g.t, len);
      const double wds = g.w_alpha * g.speed;        // ds weight
      const double wrds = wds * g.radius;            // X^r ds weight
      for (int i = 0; i < bt.n; ++i) {
        const int gi = detail::local_to_global(test.degree, cell, i);
        for (int j = 0; j < bu.n; ++j) {
          const int gj = detail::local_to_global(trial.degree, cell, j);
          switch (form) {
            case FormKind::mass_weighted: {
              const double v = wrds * bt.val[i] * bu.val[j];
              for (int c = 0; c < test.ncomp; ++c)
                trip.emplace_back(gi * test.ncomp + c, gj * trial.ncomp + c, v);
              break;
            }
            case FormKind::stiffness_weighted: {
              const double v =
                  wrds * (bt.dalpha[i] / g.speed) * (bu.dalpha[j] / g.speed);
              for (int c = 0; c < test.ncomp; ++c)
                trip.emplace_back(gi * test.ncomp + c, gj * trial.ncomp + c, v);
              break;
            }
            case FormKind::surface_divergence: {
              for (int b = 0; b < 2; ++b) {
                double v = g.w_alpha * g.radius * bt.val[i] * g.xs[b] * bu.dalpha[j];
                if (b == 0) v += wds * bt.val[i] * bu.val[j];
                trip.emplace_back(gi, gj * 2 + b, v);
              }
              break;
            }
            case FormKind::tangential_rate: {
              const double base =
                  wrds * (bt.dalpha[i] / g.speed) * (bu.dalpha[j] / g.speed);
              for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                  trip.emplace_back(gi * 2 + a, gj * 2 + b,
                                    base * g.xs[a] * g.xs[b]);
              break;
            }
            case FormKind::azimuthal_rate: {
              const double v = wds * bt.val[i] * bu.val[j] / g.radius;
              trip.emplace_back(gi * 2 + 0, gj * 2 + 0, v);
              break;
            }
            case FormKind::normal_projection: {
              const double v = wrds * bt.val[i] * bu.val[j];
              for (int a = 0; a < 2; ++a)
                trip.emplace_back(gi * 2 + a, gj, v * g.normal[a]);
              break;
            }
          }
        }
      }
    }
  }
  Eigen::SparseMatrix<double> M(test.nflat(), trial.nflat());
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

/// Point loads at the open edges: the boundary pairing of the weighted
/// measure is an X^r-weighted point evaluation at each edge dof.
inline Eigen::VectorXd boundary_load(
    const DofLayout& test, const GeneratingCurve& curve,
    const std::vector<std::pair<CurveEnd, Eigen::Vector2d>>& loads) {
  if (test.ncomp != 2) throw ConfigError("boundary_load: needs a two-component space");
  if (!test.same_mesh(curve.mesh()))
    throw ConfigError("boundary_load: space/curve meshes differ");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(test.nflat());
  for (const auto& [end, payload] : loads) {
    if (!curve.end_is_open(end))
      throw GeometryError("boundary_load: endpoint lies on the axis, no edge there");
    const double re = curve.coeffs_r()[curve.end_dof(end)];
    const int dof = test.end_dof(end);
    for (int a = 0; a < 2; ++a) out[dof * 2 + a] += re * payload[a];
  }
  return out;
}

inline Eigen::VectorXd boundary_load_scalar(
    const DofLayout& test, const GeneratingCurve& curve,
    const std::vector<std::pair<CurveEnd, double>>& loads) {
  if (test.ncomp != 1) throw ConfigError("boundary_load_scalar: needs a scalar space");
  if (!test.same_mesh(curve.mesh()))
    throw ConfigError("boundary_load_scalar: space/curve meshes differ");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(test.nflat());
  for (const auto& [end, payload] : loads) {
    if (!curve.end_is_open(end))
      throw GeometryError("boundary_load_scalar: endpoint lies on the axis");
    const double re = curve.coeffs_r()[curve.end_dof(end)];
    out[test.end_dof(end)] += re * payload;
  }
  return out;
}

}  // namespace ombem
