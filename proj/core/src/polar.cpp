#include "wim/polar.hpp"

#include <numeric>

namespace wim {

namespace {

BigInt factorial(long long a) {
  BigInt r = 1;
  for (long long i = 2; i <= a; ++i) r *= i;
  return r;
}

BigInt int_pow(long long b, long long e) {
  BigInt r = 1;
  for (long long i = 0; i < e; ++i) r *= b;
  return r;
}

/// Sum over compositions i_1+...+i_k = s of prod_l C(m_l,i_l) d_l^{m_l-1-i_l} / (m_l-1-i_l)!.
/// Terms with m_l-1-i_l < 0 vanish.
Rat composition_sum(const std::vector<FactorSpec>& factors, int s) {
  Rat total = 0;
  int k = static_cast<int>(factors.size());
  std::vector<int> comp(k, 0);
  auto rec = [&](auto&& self, int pos, int rem, Rat acc) -> void {
    if (pos == k - 1) {
      const auto& f = factors[pos];
      int e = f.m - 1 - rem;
      if (e < 0) return;
      acc *= Rat(binomial(f.m, rem) * int_pow(f.d, e), factorial(e));
      total += acc;
      return;
    }
    const auto& f = factors[pos];
    for (int i = 0; i <= std::min(rem, f.m - 1); ++i) {
      int e = f.m - 1 - i;
      self(self, pos + 1, rem - i, acc * Rat(binomial(f.m, i) * int_pow(f.d, e), factorial(e)));
    }
  };
  rec(rec, 0, s, Rat(1));
  return total;
}

void fill_range(PolarDegrees& p) {
  int lo = -1, hi = -1;
  for (int i = 0; i < static_cast<int>(p.delta.size()); ++i) {
    if (p.delta[i] != 0) {
      if (lo < 0) lo = i;
      hi = i;
    }
  }
  p.r1 = lo + 1;  // delta index i corresponds to r = i + 1
  p.r2 = hi + 1;
}

}  // namespace

std::vector<BigInt> PolarDegrees::shifted() const {
  std::vector<BigInt> out;
  for (int r = r1; r <= r2; ++r) out.push_back(delta[r - 1]);
  return out;
}

PolarDegrees polar_degrees(const ProductShape& shape) {
  const int n = shape.n;
  long long mdim = 0;  // dimension of the variety
  for (const auto& f : shape.factors) mdim += f.m - 1;

  PolarDegrees p;
  p.delta.assign(n - 1, 0);
  for (int r = 1; r <= n - 1; ++r) {
    long long smax = mdim - n + 1 + r;
    if (smax < 0) continue;
    Rat acc = 0;
    for (long long s = 0; s <= smax; ++s) {
      Rat term = Rat(binomial(mdim - s + 1, n - r) * factorial(mdim - s)) *
                 composition_sum(shape.factors, static_cast<int>(s));
      acc += (s % 2 == 0) ? term : -term;
    }
    if (denominator(acc) != 1) throw Error("polar degree is not an integer");
    if (acc < 0) throw Error("negative polar degree");
    p.delta[r - 1] = numerator(acc);
  }
  fill_range(p);
  return p;
}

PolarDegrees polar_degrees_kbit(int k) {
  if (k < 2) throw InvalidSizeError("k-bit model needs k >= 2");
  long long n = 1LL << k;
  PolarDegrees p;
  p.delta.assign(n - 1, 0);
  for (long long r = 1; r <= n - 1; ++r) {
    long long smax = k - n + 1 + r;
    if (smax < 0) continue;
    BigInt acc = 0;
    for (long long s = 0; s <= smax; ++s) {
      BigInt term = binomial(k + 1 - s, n - r) * factorial(k - s) * int_pow(2, s) * binomial(k, s);
      acc += (s % 2 == 0) ? term : -term;
    }
    p.delta[r - 1] = acc;
  }
  fill_range(p);
  return p;
}

PolarDegrees polar_degrees_matrix(int m1, int m2) {
  if (m1 < 2 || m2 < 2) throw InvalidSizeError("matrix model needs m1, m2 >= 2");
  long long n = static_cast<long long>(m1) * m2;
  long long mdim = m1 + m2 - 2;
  PolarDegrees p;
  p.delta.assign(n - 1, 0);
  for (long long r = 1; r <= n - 1; ++r) {
    long long smax = mdim - n + 1 + r;
    if (smax < 0) continue;
    Rat acc = 0;
    for (long long s = 0; s <= smax; ++s) {
      Rat inner = 0;
      for (long long i = 0; i <= s; ++i) {
        long long j = s - i;
        long long e1 = m1 - 1 - i, e2 = m2 - 1 - j;
        if (e1 < 0 || e2 < 0) continue;
        inner += Rat(binomial(m1, i), factorial(e1)) * Rat(binomial(m2, j), factorial(e2));
      }
      Rat term = Rat(binomial(mdim - s + 1, n - r) * factorial(mdim - s)) * inner;
      acc += (s % 2 == 0) ? term : -term;
    }
    if (denominator(acc) != 1) throw Error("polar degree is not an integer");
    p.delta[r - 1] = numerator(acc);
  }
  fill_range(p);
  return p;
}

BigInt segre_veronese_degree(const ProductShape& shape) {
  long long mdim = 0;
  for (const auto& f : shape.factors) mdim += f.m - 1;
  BigInt num = factorial(mdim);
  for (const auto& f : shape.factors) {
    num *= int_pow(f.d, f.m - 1);
    num /= factorial(f.m - 1);
  }
  return num;
}

}  // namespace wim
