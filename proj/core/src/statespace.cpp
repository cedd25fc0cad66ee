#include "wim/statespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wim {

namespace {

/// Decimal integer literal, optional sign. Leading zeros are stripped
/// explicitly because the GMP string constructor auto-detects the base and
/// would read "025" as octal.
BigInt parse_integer(const std::string& s) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
  if (pos == s.size()) throw ParseError("bad integer literal '" + s + "'");
  for (std::size_t i = pos; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw ParseError("bad integer literal '" + s + "'");
  while (pos + 1 < s.size() && s[pos] == '0') ++pos;
  BigInt v(s.substr(pos));
  return negative ? BigInt(-v) : v;
}

}  // namespace

Rat parse_rational(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      BigInt num = parse_integer(s.substr(0, slash));
      BigInt den = parse_integer(s.substr(slash + 1));
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(parse_integer(s));
    // decimal literal
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    BigInt den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return Rat(parse_integer(digits), den);
  } catch (const std::exception&) {
    throw ParseError("bad rational literal '" + s + "'");
  }
}

std::string rat_string(const Rat& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value");
  int exp;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  // 53 bits of mantissa
  long long mi = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rat r(mi);
  BigInt two = 1;
  if (exp >= 0) {
    two <<= exp;
    r *= Rat(two);
  } else {
    two <<= -exp;
    r /= Rat(two);
  }
  return r;
}

std::vector<double> to_doubles(const RatVec& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

BigInt binomial(long long a, long long b) {
  if (b < 0 || b > a || a < 0) return 0;
  b = std::min(b, a - b);
  BigInt r = 1;
  for (long long i = 1; i <= b; ++i) {
    r *= (a - b + i);
    r /= i;
  }
  return r;
}

std::vector<std::vector<int>> ProductShape::factor_exponents(const FactorSpec& f) {
  // All (a_1,...,a_m) with sum d, in colex order: compare at the largest
  // index where they differ. For m=2 this is (d,0), (d-1,1), ..., (0,d).
  std::vector<std::vector<int>> out;
  std::vector<int> a(f.m, 0);
  // enumerate recursively, then sort by colex
  std::vector<std::vector<int>> all;
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == f.m - 1) {
      a[pos] = rem;
      all.push_back(a);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      a[pos] = v;
      self(self, pos + 1, rem - v);
    }
  };
  rec(rec, 0, f.d);
  std::sort(all.begin(), all.end(), [](const std::vector<int>& x, const std::vector<int>& y) {
    for (int i = static_cast<int>(x.size()) - 1; i >= 0; --i)
      if (x[i] != y[i]) return x[i] < y[i];
    return false;
  });
  return all;
}

ProductShape ProductShape::make(std::vector<FactorSpec> factors) {
  if (factors.empty()) throw InvalidShapeError("model needs at least one factor");
  ProductShape s;
  s.factors = std::move(factors);
  s.n = 1;
  for (const auto& f : s.factors) {
    if (f.m < 2) throw InvalidShapeError("factor needs m >= 2");
    if (f.d < 1) throw InvalidShapeError("factor needs d >= 1");
    int cnt = binomial(f.m + f.d - 1, f.d).convert_to<int>();
    s.factor_states.push_back(cnt);
    s.n *= cnt;
  }
  return s;
}

int ProductShape::state_index(const std::vector<int>& t) const {
  return tuple_to_index(t, factor_states);
}

std::vector<int> ProductShape::state_tuple(int index) const {
  return index_to_tuple(index, factor_states);
}

int tuple_to_index(const std::vector<int>& tuple, const std::vector<int>& sizes) {
  int idx = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) idx = idx * sizes[i] + tuple[i];
  return idx;
}

std::vector<int> index_to_tuple(int index, const std::vector<int>& sizes) {
  std::vector<int> t(sizes.size());
  for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i) {
    t[i] = index % sizes[i];
    index /= sizes[i];
  }
  return t;
}

const char* metric_kind_name(MetricKind k) {
  switch (k) {
    case MetricKind::discrete: return "discrete";
    case MetricKind::l0: return "l0";
    case MetricKind::l1: return "l1";
    case MetricKind::custom: return "custom";
  }
  return "?";
}

std::vector<std::vector<double>> FiniteMetric::as_doubles() const {
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i][j] = to_double(d[i][j]);
  return out;
}

std::vector<RatVec> FiniteMetric::shortest_paths() const {
  if (!graph_edges) throw InvalidShapeError("metric has no graph structure");
  const Rat inf(std::numeric_limits<int>::max());
  std::vector<RatVec> sp(n, RatVec(n, inf));
  for (int i = 0; i < n; ++i) sp[i][i] = 0;
  for (auto [a, b] : *graph_edges) sp[a][b] = sp[b][a] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (sp[i][k] + sp[k][j] < sp[i][j]) sp[i][j] = sp[i][k] + sp[k][j];
  return sp;
}

namespace {

void check_metric_axioms(const std::vector<RatVec>& d) {
  int n = static_cast<int>(d.size());
  for (int i = 0; i < n; ++i) {
    if (d[i][i] != 0) throw InvalidShapeError("nonzero diagonal");
    for (int j = 0; j < n; ++j) {
      if (d[i][j] != d[j][i]) throw InvalidShapeError("matrix not symmetric");
      if (i != j && d[i][j] <= 0) throw InvalidShapeError("nonpositive off-diagonal entry");
    }
  }
  // Violations are reported as (i, k, j): the offending pair, then the
  // intermediate point witnessing d_ik > d_ij + d_jk.
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int j = 0; j < n; ++j)
        if (j != i && j != k && d[i][k] > d[i][j] + d[j][k])
          throw TriangleViolation(i + 1, k + 1, j + 1);
}

}  // namespace

FiniteMetric discrete_metric(int n) {
  if (n < 2) throw InvalidSizeError("discrete metric needs n >= 2");
  FiniteMetric m;
  m.n = n;
  m.kind = MetricKind::discrete;
  m.d.assign(n, RatVec(n, 1));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    m.d[i][i] = 0;
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  m.graph_edges = std::move(edges);
  return m;
}

FiniteMetric l0_metric(const std::vector<int>& sizes) {
  if (sizes.empty()) throw InvalidShapeError("empty factor list");
  for (int s : sizes)
    if (s < 2) throw InvalidShapeError("factor size must be >= 2");
  int n = 1;
  for (int s : sizes) n *= s;
  FiniteMetric m;
  m.n = n;
  m.kind = MetricKind::l0;
  m.d.assign(n, RatVec(n, 0));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    auto ti = index_to_tuple(i, sizes);
    for (int j = i + 1; j < n; ++j) {
      auto tj = index_to_tuple(j, sizes);
      int h = 0;
      for (std::size_t l = 0; l < sizes.size(); ++l) h += (ti[l] != tj[l]);
      m.d[i][j] = m.d[j][i] = h;
      if (h == 1) edges.emplace_back(i, j);
    }
  }
  m.graph_edges = std::move(edges);
  return m;
}

FiniteMetric l1_metric(const std::vector<int>& sizes) {
  if (sizes.empty()) throw InvalidShapeError("empty factor list");
  for (int s : sizes)
    if (s < 2) throw InvalidShapeError("factor size must be >= 2");
  int n = 1;
  for (int s : sizes) n *= s;
  FiniteMetric m;
  m.n = n;
  m.kind = MetricKind::l1;
  m.d.assign(n, RatVec(n, 0));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    auto ti = index_to_tuple(i, sizes);
    for (int j = i + 1; j < n; ++j) {
      auto tj = index_to_tuple(j, sizes);
      int dist = 0;
      for (std::size_t l = 0; l < sizes.size(); ++l) dist += std::abs(ti[l] - tj[l]);
      m.d[i][j] = m.d[j][i] = dist;
      if (dist == 1) edges.emplace_back(i, j);
    }
  }
  m.graph_edges = std::move(edges);
  return m;
}

FiniteMetric custom_metric(std::vector<RatVec> matrix) {
  int n = static_cast<int>(matrix.size());
  if (n < 2) throw InvalidSizeError("metric needs n >= 2");
  for (const auto& row : matrix)
    if (static_cast<int>(row.size()) != n) throw InvalidShapeError("matrix not square");
  check_metric_axioms(matrix);
  FiniteMetric m;
  m.n = n;
  m.kind = MetricKind::custom;
  m.d = std::move(matrix);
  return m;
}

Distribution Distribution::from_rationals(RatVec v) {
  Distribution dist;
  dist.n = static_cast<int>(v.size());
  Rat sum = 0;
  for (const Rat& x : v) {
    if (x < 0) throw InvalidShapeError("negative probability");
    sum += x;
  }
  if (std::abs(to_double(sum - 1)) > 1e-12)
    throw InvalidShapeError("probabilities sum to " + rat_string(sum) + ", not 1");
  dist.values = std::move(v);
  return dist;
}

Distribution Distribution::from_doubles(const std::vector<double>& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = rat_from_double(v[i]);
  return from_rationals(std::move(r));
}

}  // namespace wim
