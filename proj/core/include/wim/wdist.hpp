#pragma once

#include <span>
#include <vector>

#include "wim/polytope.hpp"

namespace wim {

struct DistanceCertificate {
  Rat value;
  int optimizer = -1;       // index of an optimal discriminator in poly.vertices
  std::vector<int> active;  // all Lipschitz vertices attaining the max
};

/// Exact Wasserstein distance: max over Lipschitz vertices of <mu-nu, x>.
DistanceCertificate wasserstein(const LipschitzPolytope& poly, const Distribution& mu,
                                const Distribution& nu);

/// Fast float path used by the optimizer: vertices as dense rows.
double wasserstein_value(const std::vector<std::vector<double>>& vertices,
                         std::span<const double> diff);

struct ClosedFormResult {
  double value = 0;
  std::vector<std::vector<double>> solutions;  // primary first, then ties
  int case_id = 0;                             // 1-based case in the published formula
  bool boundary = false;                       // more than one case applied
};

/// Distance from mu in the triangle to the Hardy-Weinberg curve; valid for
/// the discrete metric and the L1-metric d = (1,2,1).
ClosedFormResult hardy_weinberg_closed_form(const std::vector<double>& mu);

/// Distance from mu in the tetrahedron to the 2-bit independence surface
/// under the L0 metric. Reports all tied solutions on walls of indecision.
ClosedFormResult twobit_closed_form(const std::vector<double>& mu);

}  // namespace wim
