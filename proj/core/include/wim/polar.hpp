#pragma once

#include <vector>

#include "wim/statespace.hpp"

namespace wim {

/// Polar degrees delta_0 .. delta_{n-2} of a Segre-Veronese variety,
/// exact big integers. The nonzero block runs from r1 = codim(M) to
/// r2 = dim(M*) in the r-index (delta index shifted by one).
struct PolarDegrees {
  std::vector<BigInt> delta;
  int r1 = 0;
  int r2 = 0;

  /// Nonzero block, first entry = degree of the variety. This is the
  /// row layout used for tabulated values.
  std::vector<BigInt> shifted() const;
};

PolarDegrees polar_degrees(const ProductShape& shape);

/// Specialization to the k-bit model (2,...,2); agrees with polar_degrees.
PolarDegrees polar_degrees_kbit(int k);

/// Specialization to rank-one m1 x m2 matrices; agrees with polar_degrees.
PolarDegrees polar_degrees_matrix(int m1, int m2);

/// Classical degree m! * prod d_l^{m_l-1} / prod (m_l-1)!.
BigInt segre_veronese_degree(const ProductShape& shape);

}  // namespace wim
