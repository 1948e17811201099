#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ombem/errors.hpp"

namespace ombem {

enum class RefineAt { none, start, end, both };

// Regularized grading map on [0,1]: (1-eps) * cos(pi/2 (1-eta)) + eps * eta.
// Clusters points near eta = 1; eps = 1 degenerates to the identity (uniform).
inline double graded_map(double eta, double eps) {
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::domain_error("graded_map: eta must lie in [0,1]");
  if (!(eps >= 0.0 && eps <= 1.0))
    throw std::domain_error("graded_map: eps must lie in [0,1]");
  if (eta == 0.0) return 0.0;
  if (eta == 1.0) return 1.0;
  const double phi = std::cos(0.5 * M_PI * (1.0 - eta));
  return (1.0 - eps) * phi + eps * eta;
}

/// Partition of the reference interval I = (0,1), optionally graded toward
/// one or both endpoints.
struct ReferenceMesh {
  std::vector<double> nodes;  // alpha_0 = 0 < ... < alpha_N = 1
  RefineAt refinement_ends = RefineAt::none;
  double epsilon = 0.0;

  int cells() const { return static_cast<int>(nodes.size()) - 1; }
  double cell_lo(int c) const { return nodes[c]; }
  double cell_hi(int c) const { return nodes[c + 1]; }
  double cell_length(int c) const { return nodes[c + 1] - nodes[c]; }

  int find_cell(double alpha) const {
    auto it = std::upper_bound(nodes.begin(), nodes.end(), alpha);
    int c = static_cast<int>(it - nodes.begin()) - 1;
    return std::clamp(c, 0, cells() - 1);
  }

  bool same_partition(const ReferenceMesh& other) const {
    return nodes == other.nodes;
  }
};

inline ReferenceMesh build_mesh(int N, double eps, RefineAt refine) {
  if (N < 2) throw ConfigError("build_mesh: need at least 2 cells");
  if (!(eps >= 0.0 && eps <= 1.0))
    throw ConfigError("build_mesh: eps must lie in [0,1]");
  ReferenceMesh mesh;
  mesh.refinement_ends = refine;
  mesh.epsilon = eps;
  mesh.nodes.resize(N + 1);
  for (int i = 0; i <= N; ++i) {
    const double eta = static_cast<double>(i) / N;
    double a;
    switch (refine) {
      case RefineAt::none:
        a = eta;
        break;
      case RefineAt::end:
        a = graded_map(eta, eps);
        break;
      case RefineAt::start:
        a = 1.0 - graded_map(1.0 - eta, eps);
        break;
      case RefineAt::both:
        // scaled copies of the map on each half, reflected so both ends cluster
        a = (eta <= 0.5) ? 0.5 - 0.5 * graded_map(1.0 - 2.0 * eta, eps)
                         : 0.5 + 0.5 * graded_map(2.0 * eta - 1.0, eps);
        break;
      default:
        a = eta;
    }
    mesh.nodes[i] = a;
  }
  mesh.nodes.front() = 0.0;
  mesh.nodes.back() = 1.0;
  for (int i = 0; i < N; ++i)
    if (!(mesh.nodes[i + 1] > mesh.nodes[i]))
      throw ConfigError("build_mesh: mesh nodes are not strictly increasing");
  return mesh;
}

}  // namespace ombem
