#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "ombem/curve.hpp"
#include "ombem/fem.hpp"
#include "ombem/kernels.hpp"
#include "ombem/quadrature.hpp"

namespace ombem {

/// Quadrature configuration for the weakly singular double integral.
struct SingleLayerParams {
  int outer_gauss = 8;      // Gauss points per outer panel
  int outer_panels = 2;     // equal panels per cell for the outer integral
  int smooth_gauss = 8;     // Gauss points per smooth inner panel
  double near_ratio = 0.5;  // inner panel length <= near_ratio * distance to singularity
  int log_order = 8;        // order of the endpoint-corrected log rule
  int log_panels = 2;       // panel parameter of the log rule
};

namespace detail {

struct InnerPoint {
  double alpha;
  double weight;  // includes the alpha-space panel weight only
  int cell;
};

// Split one smooth interval so that every final panel is short relative to
// its distance from the singular point.
inline void near_singular_panels(double a, double b, double singular,
                                 double near_ratio, int depth,
                                 std::vector<std::pair<double, double>>& out) {
  const double dist = (b <= singular) ? singular - b : a - singular;
  if (depth > 40 || (b - a) <= near_ratio * dist) {
    out.emplace_back(a, b);
    return;
  }
  const double m = 0.5 * (a + b);
  if (b <= singular) {
    near_singular_panels(a, m, singular, near_ratio, depth + 1, out);
    near_singular_panels(m, b, singular, near_ratio, depth + 1, out);
  } else {
    near_singular_panels(m, b, singular, near_ratio, depth + 1, out);
    near_singular_panels(a, m, singular, near_ratio, depth + 1, out);
  }
}

}  // namespace detail

/// Galerkin matrix of the axisymmetric single-layer operator over the P2
/// two-component space: M[(i,a),(j,b)] ~ <phi_i e_a, S[phi_j e_b]>_C with
/// the 1/(8 pi) velocity normalization folded in. The outer integral uses
/// per-cell Gauss panels; the inner integral splits at the outer node where
/// the kernel is log-singular and applies the endpoint-corrected rule there,
/// with distance-graded Gauss panels elsewhere.
inline Eigen::MatrixXd singular_pair_assembly(const GeneratingCurve& curve,
                                              const DofLayout& space,
                                              const SingleLayerParams& p = {}) {
  if (space.degree != 2 || space.ncomp != 2)
    throw ConfigError("singular_pair_assembly: expects the P2 two-component space");
  if (!space.same_mesh(curve.mesh()))
    throw ConfigError("singular_pair_assembly: space/curve meshes differ");

  const ReferenceMesh& mesh = curve.mesh();
  const int ncell = mesh.cells();
  const int ndof = space.ndof();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * ndof, 2 * ndof);

  const QuadRule outer = gauss_rule(p.outer_gauss);
  const QuadRule smooth = gauss_rule(p.smooth_gauss);
  const QuadRule logrule = alpert_log_rule(p.log_order, p.log_panels);

  // accumulators for the inner integral against every trial scalar dof
  std::vector<Eigen::Matrix2d> T(ndof);

  std::vector<detail::InnerPoint> pts;
  pts.reserve(256);
  std::vector<std::pair<double, double>> panels;

  auto gather_smooth = [&](double a, double b, double singular, int cell) {
    panels.clear();
    detail::near_singular_panels(a, b, singular, p.near_ratio, 0, panels);
    for (const auto& [lo, hi] : panels) {
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (lo + hi);
      for (std::size_t q = 0; q < smooth.nodes.size(); ++q)
        pts.push_back(
            {mid + half * smooth.nodes[q], half * smooth.weights[q], cell});
    }
  };

  auto gather_log = [&](double from, double to, int cell) {
    // log-singular endpoint at `from`, mapped onto the rule's origin
    const double len = to - from;
    for (std::size_t q = 0; q < logrule.nodes.size(); ++q)
      pts.push_back({from + len * logrule.nodes[q],
                     std::fabs(len) * logrule.weights[q], cell});
  };

  for (int oc = 0; oc < ncell; ++oc) {
    const double olo = mesh.cell_lo(oc);
    const double olen = mesh.cell_length(oc);
    const double plen = olen / p.outer_panels;
    for (int op = 0; op < p.outer_panels; ++op) {
      for (std::size_t oq = 0; oq < outer.nodes.size(); ++oq) {
        const double aq =
            olo + plen * (op + 0.5 * (outer.nodes[oq] + 1.0));
        const double ow = 0.5 * plen * outer.weights[oq];

        const auto jq = curve.jet_local(
            oc, (aq - olo) / olen);
        const double speed_q = detail::speed_or_throw(jq, curve.scale());
        const double wq = jq.X.x() * speed_q;  // X^r |X_alpha| at the outer node
        const double rq = jq.X.x();
        const double zq = jq.X.y();

        // build the inner point set for this outer node
        pts.clear();
        for (int ic = 0; ic < ncell; ++ic) {
          const double ilo = mesh.cell_lo(ic);
          const double ihi = mesh.cell_hi(ic);
          if (ic == oc) {
            gather_log(aq, ilo, ic);  // left part, singularity at the right end
            gather_log(aq, ihi, ic);  // right part
          } else {
            gather_smooth(ilo, ihi, aq, ic);
          }
        }

        for (auto& t : T) t.setZero();
        for (const auto& pt : pts) {
          const int ic = pt.cell;
          const double tloc =
              (pt.alpha - mesh.cell_lo(ic)) / mesh.cell_length(ic);
          const auto ji = curve.jet_local(ic, tloc);
          const double speed_i = ji.Xa.norm();
          const double wprime = ji.X.x() * speed_i;
          const Eigen::Matrix2d S =
              detail::axisym_kernel_core(rq, ji.X.x(), zq - ji.X.y());
          double bv[3];
          detail::p2_shape(tloc, bv);
          const double base = pt.weight * wprime;
          for (int k = 0; k < 3; ++k)
            T[2 * ic + k].noalias() += (base * bv[k]) * S;
        }

        // scatter against the outer test basis
        double obv[3];
        detail::p2_shape((aq - olo) / olen, obv);
        const double oscale = ow * wq / (8.0 * M_PI);
        for (int k = 0; k < 3; ++k) {
          const int gi = 2 * oc + k;
          const double fi = oscale * obv[k];
          for (int j = 0; j < ndof; ++j) {
            const Eigen::Matrix2d& Sij = T[j];
            M(2 * gi + 0, 2 * j + 0) += fi * Sij(0, 0);
            M(2 * gi + 0, 2 * j + 1) += fi * Sij(0, 1);
            M(2 * gi + 1, 2 * j + 0) += fi * Sij(1, 0);
            M(2 * gi + 1, 2 * j + 1) += fi * Sij(1, 1);
          }
        }
      }
    }
  }
  return M;
}

}  // namespace ombem
