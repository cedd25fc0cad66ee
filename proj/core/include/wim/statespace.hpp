#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wim/errors.hpp"
#include "wim/rational.hpp"

namespace wim {

/// One factor of a product state space: m outcomes, d identically
/// distributed trials. d = 1 is an ordinary discrete variable.
struct FactorSpec {
  int m = 2;
  int d = 1;
};

/// Product state space of a Segre-Veronese independence model.
///
/// States of a single factor (m)_d are the exponent vectors (a_1,...,a_m)
/// with a_1 + ... + a_m = d, listed in colex order. Product states are
/// indexed lexicographically with the first factor varying slowest.
struct ProductShape {
  std::vector<FactorSpec> factors;
  std::vector<int> factor_states;  // C(m_i + d_i - 1, d_i) per factor
  int n = 0;                       // product of factor_states

  static ProductShape make(std::vector<FactorSpec> factors);

  /// Exponent vectors of factor i in state order.
  static std::vector<std::vector<int>> factor_exponents(const FactorSpec& f);

  int state_index(const std::vector<int>& factor_state) const;
  std::vector<int> state_tuple(int index) const;
};

enum class MetricKind { discrete, l0, l1, custom };

const char* metric_kind_name(MetricKind k);

struct FiniteMetric {
  int n = 0;
  std::vector<RatVec> d;  // n x n, symmetric, zero diagonal
  std::optional<std::vector<std::pair<int, int>>> graph_edges;
  MetricKind kind = MetricKind::custom;

  std::vector<std::vector<double>> as_doubles() const;

  /// All-pairs shortest path lengths over graph_edges (unit weights).
  /// Requires graph_edges.
  std::vector<RatVec> shortest_paths() const;
};

FiniteMetric discrete_metric(int n);
FiniteMetric l0_metric(const std::vector<int>& sizes);
FiniteMetric l1_metric(const std::vector<int>& sizes);
FiniteMetric custom_metric(std::vector<RatVec> matrix);

struct Distribution {
  int n = 0;
  RatVec values;

  static Distribution from_rationals(RatVec v);
  static Distribution from_doubles(const std::vector<double>& v);

  std::vector<double> as_doubles() const { return to_doubles(values); }
};

/// Mixed-radix index with the first position varying slowest.
int tuple_to_index(const std::vector<int>& tuple, const std::vector<int>& sizes);
std::vector<int> index_to_tuple(int index, const std::vector<int>& sizes);

BigInt binomial(long long a, long long b);

}  // namespace wim
