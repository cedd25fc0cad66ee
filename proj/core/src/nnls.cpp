#include "wim/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wim {

namespace {

/// Least squares on the passive set via normal equations with partial
/// pivoting; systems here are tiny and well within double precision.
std::vector<double> solve_passive(const std::vector<std::vector<double>>& cols,
                                  const std::vector<double>& b, const std::vector<int>& passive) {
  const int k = static_cast<int>(passive.size());
  std::vector<std::vector<double>> g(k, std::vector<double>(k + 1, 0.0));
  for (int a = 0; a < k; ++a) {
    const auto& ca = cols[passive[a]];
    for (int c = a; c < k; ++c) {
      const auto& cc = cols[passive[c]];
      double dot = 0;
      for (std::size_t i = 0; i < ca.size(); ++i) dot += ca[i] * cc[i];
      g[a][c] = g[c][a] = dot;
    }
    double rhs = 0;
    for (std::size_t i = 0; i < ca.size(); ++i) rhs += ca[i] * b[i];
    g[a][k] = rhs;
  }
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    std::swap(g[piv], g[col]);
    if (std::abs(g[col][col]) < 1e-300) continue;  // rank-deficient; leave zero
    for (int r = 0; r < k; ++r) {
      if (r == col) continue;
      double f = g[r][col] / g[col][col];
      for (int c = col; c <= k; ++c) g[r][c] -= f * g[col][c];
    }
  }
  std::vector<double> x(k, 0.0);
  for (int r = 0; r < k; ++r)
    if (std::abs(g[r][r]) > 1e-300) x[r] = g[r][k] / g[r][r];
  return x;
}

}  // namespace

NnlsResult nnls(const std::vector<std::vector<double>>& columns, const std::vector<double>& b) {
  const int k = static_cast<int>(columns.size());
  const std::size_t m = b.size();
  std::vector<double> lambda(k, 0.0);
  std::vector<char> in_passive(k, 0);
  std::vector<int> passive;

  auto residual_vec = [&](const std::vector<double>& lam) {
    std::vector<double> r = b;
    for (int j = 0; j < k; ++j)
      if (lam[j] != 0)
        for (std::size_t i = 0; i < m; ++i) r[i] -= lam[j] * columns[j][i];
    return r;
  };

  for (int iter = 0; iter < 6 * std::max(k, 1); ++iter) {
    std::vector<double> r = residual_vec(lambda);
    // gradient of 1/2|r|^2 wrt lambda_j is -c_j . r
    int best = -1;
    double best_w = 1e-12;
    for (int j = 0; j < k; ++j) {
      if (in_passive[j]) continue;
      double w = 0;
      for (std::size_t i = 0; i < m; ++i) w += columns[j][i] * r[i];
      if (w > best_w) {
        best_w = w;
        best = j;
      }
    }
    if (best < 0) break;
    in_passive[best] = 1;
    passive.push_back(best);

    while (true) {
      std::vector<double> z = solve_passive(columns, b, passive);
      bool all_pos = true;
      for (double v : z)
        if (v <= 0) all_pos = false;
      if (all_pos) {
        std::fill(lambda.begin(), lambda.end(), 0.0);
        for (std::size_t a = 0; a < passive.size(); ++a) lambda[passive[a]] = z[a];
        break;
      }
      // step back towards feasibility, drop zeroed variables
      double alpha = 1.0;
      for (std::size_t a = 0; a < passive.size(); ++a) {
        double lj = lambda[passive[a]];
        if (z[a] <= 0 && lj - z[a] > 0) alpha = std::min(alpha, lj / (lj - z[a]));
      }
      for (std::size_t a = 0; a < passive.size(); ++a) {
        int j = passive[a];
        lambda[j] += alpha * (z[a] - lambda[j]);
      }
      std::vector<int> keep;
      for (int j : passive) {
        if (lambda[j] > 1e-14) {
          keep.push_back(j);
        } else {
          lambda[j] = 0;
          in_passive[j] = 0;
        }
      }
      passive = std::move(keep);
      if (passive.empty()) break;
    }
  }

  NnlsResult out;
  out.lambda = lambda;
  std::vector<double> r = residual_vec(lambda);
  double s = 0;
  for (double v : r) s += v * v;
  out.residual = std::sqrt(s);
  return out;
}

}  // namespace wim
