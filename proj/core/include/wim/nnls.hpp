#pragma once

#include <vector>

namespace wim {

struct NnlsResult {
  std::vector<double> lambda;
  double residual = 0;  // Euclidean norm of A*lambda - b
};

/// Lawson-Hanson active-set nonnegative least squares:
/// min |A*lambda - b| subject to lambda >= 0.
/// columns: k vectors of length m.
NnlsResult nnls(const std::vector<std::vector<double>>& columns, const std::vector<double>& b);

}  // namespace wim
