#include "wim/model.hpp"

#include <cmath>

namespace wim {

namespace {

BigInt multinomial(int d, const std::vector<int>& a) {
  BigInt r = 1;
  int used = 0;
  for (int x : a) {
    used += x;
    r *= binomial(used, x);
  }
  (void)d;
  return r;
}

}  // namespace

ModelSpec ModelSpec::make(std::vector<FactorSpec> factors) {
  ModelSpec m;
  m.shape = ProductShape::make(std::move(factors));
  m.ambient_n = m.shape.n;
  m.param_dim = 0;
  for (const auto& f : m.shape.factors) m.param_dim += f.m - 1;

  std::vector<std::vector<std::vector<int>>> fexp;
  for (const auto& f : m.shape.factors) fexp.push_back(ProductShape::factor_exponents(f));

  for (int s = 0; s < m.ambient_n; ++s) {
    auto tuple = m.shape.state_tuple(s);
    StateTerm term;
    for (std::size_t l = 0; l < tuple.size(); ++l) {
      const auto& e = fexp[l][tuple[l]];
      term.exponents.push_back(e);
      term.coeff_exact *= multinomial(m.shape.factors[l].d, e);
    }
    term.coeff = term.coeff_exact.convert_to<double>();
    m.states.push_back(std::move(term));
  }
  return m;
}

bool ModelSpec::is_pure_segre() const {
  for (const auto& f : shape.factors)
    if (f.d != 1) return false;
  return true;
}

int ModelSpec::param_offset(int factor) const {
  int off = 0;
  for (int l = 0; l < factor; ++l) off += shape.factors[l].m - 1;
  return off;
}

std::vector<std::vector<double>> expand_params(const ModelSpec& model,
                                               std::span<const double> theta, double tol) {
  if (static_cast<int>(theta.size()) != model.param_dim)
    throw ShapeMismatchError("parameter vector has wrong length");
  std::vector<std::vector<double>> marginals;
  int off = 0;
  for (const auto& f : model.shape.factors) {
    std::vector<double> p(f.m);
    double sum = 0;
    for (int j = 0; j < f.m - 1; ++j) {
      double v = theta[off + j];
      if (v < -tol || v > 1 + tol) throw DomainError("parameter outside [0,1]");
      p[j] = std::clamp(v, 0.0, 1.0);
      sum += p[j];
    }
    if (sum > 1 + tol) throw DomainError("marginal free coordinates sum beyond 1");
    p[f.m - 1] = std::max(0.0, 1.0 - sum);
    marginals.push_back(std::move(p));
    off += f.m - 1;
  }
  return marginals;
}

std::vector<double> phi(const ModelSpec& model, std::span<const double> theta) {
  auto marg = expand_params(model, theta);
  std::vector<double> out(model.ambient_n);
  for (int s = 0; s < model.ambient_n; ++s) {
    const auto& term = model.states[s];
    double v = term.coeff;
    for (std::size_t l = 0; l < term.exponents.size(); ++l)
      for (std::size_t j = 0; j < term.exponents[l].size(); ++j) {
        int e = term.exponents[l][j];
        for (int t = 0; t < e; ++t) v *= marg[l][j];
      }
    out[s] = v;
  }
  return out;
}

RatVec phi_exact(const ModelSpec& model, const RatVec& theta) {
  if (static_cast<int>(theta.size()) != model.param_dim)
    throw ShapeMismatchError("parameter vector has wrong length");
  std::vector<RatVec> marg;
  int off = 0;
  for (const auto& f : model.shape.factors) {
    RatVec p(f.m);
    Rat sum = 0;
    for (int j = 0; j < f.m - 1; ++j) {
      p[j] = theta[off + j];
      if (p[j] < 0 || p[j] > 1) throw DomainError("parameter outside [0,1]");
      sum += p[j];
    }
    if (sum > 1) throw DomainError("marginal free coordinates sum beyond 1");
    p[f.m - 1] = 1 - sum;
    marg.push_back(std::move(p));
    off += f.m - 1;
  }
  RatVec out(model.ambient_n);
  for (int s = 0; s < model.ambient_n; ++s) {
    const auto& term = model.states[s];
    Rat v = Rat(term.coeff_exact);
    for (std::size_t l = 0; l < term.exponents.size(); ++l)
      for (std::size_t j = 0; j < term.exponents[l].size(); ++j)
        for (int t = 0; t < term.exponents[l][j]; ++t) v *= marg[l][j];
    out[s] = v;
  }
  return out;
}

std::vector<std::vector<double>> jacobian(const ModelSpec& model, std::span<const double> theta) {
  auto marg = expand_params(model, theta);
  std::vector<std::vector<double>> jac(model.ambient_n, std::vector<double>(model.param_dim, 0.0));

  auto pow_int = [](double b, int e) {
    double r = 1;
    for (int t = 0; t < e; ++t) r *= b;
    return r;
  };

  for (int s = 0; s < model.ambient_n; ++s) {
    const auto& term = model.states[s];
    // per-factor weights (without the multinomial coefficient)
    std::vector<double> w(term.exponents.size(), 1.0);
    for (std::size_t l = 0; l < term.exponents.size(); ++l)
      for (std::size_t j = 0; j < term.exponents[l].size(); ++j)
        w[l] *= pow_int(marg[l][j], term.exponents[l][j]);

    for (std::size_t l = 0; l < term.exponents.size(); ++l) {
      const auto& e = term.exponents[l];
      const int m = static_cast<int>(e.size());
      double rest = term.coeff;
      for (std::size_t t = 0; t < w.size(); ++t)
        if (t != l) rest *= w[t];
      for (int j = 0; j < m - 1; ++j) {
        // d w_l / d theta_j, with the last coordinate dependent
        double dw = 0;
        if (e[j] > 0) {
          double prod = e[j] * pow_int(marg[l][j], e[j] - 1);
          for (int t = 0; t < m; ++t)
            if (t != j) prod *= pow_int(marg[l][t], e[t]);
          dw += prod;
        }
        if (e[m - 1] > 0) {
          double prod = e[m - 1] * pow_int(marg[l][m - 1], e[m - 1] - 1);
          for (int t = 0; t < m - 1; ++t) prod *= pow_int(marg[l][t], e[t]);
          dw -= prod;
        }
        jac[s][model.param_offset(static_cast<int>(l)) + j] += rest * dw;
      }
    }
  }
  return jac;
}

Distribution mle_segre(const ModelSpec& model, const Distribution& mu) {
  if (mu.n != model.ambient_n) throw ShapeMismatchError("distribution size mismatch");
  const auto& factors = model.shape.factors;

  // (2_2) convenience: allele frequency estimate
  if (factors.size() == 1 && factors[0].m == 2 && factors[0].d == 2) {
    Rat p = mu.values[0] + mu.values[1] / 2;
    return Distribution::from_rationals({p * p, 2 * p * (1 - p), (1 - p) * (1 - p)});
  }
  if (!model.is_pure_segre())
    throw UnsupportedModelError("closed-form MLE requires a pure Segre model");

  std::vector<RatVec> marg;
  for (std::size_t l = 0; l < factors.size(); ++l) marg.emplace_back(factors[l].m, Rat(0));
  for (int s = 0; s < model.ambient_n; ++s) {
    auto tuple = model.shape.state_tuple(s);
    for (std::size_t l = 0; l < factors.size(); ++l) marg[l][tuple[l]] += mu.values[s];
  }
  RatVec out(model.ambient_n);
  for (int s = 0; s < model.ambient_n; ++s) {
    auto tuple = model.shape.state_tuple(s);
    Rat v = 1;
    for (std::size_t l = 0; l < factors.size(); ++l) v *= marg[l][tuple[l]];
    out[s] = v;
  }
  return Distribution::from_rationals(std::move(out));
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(counter * 0xda942042e4dd58b5ULL + 1));
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<std::vector<double>> sample_simplex(int n, int count, std::uint64_t seed) {
  if (count < 1) throw InvalidSizeError("count >= 1 required");
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (int s = 0; s < count; ++s) {
    std::vector<double> x(n);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      double u = counter_uniform(seed, static_cast<std::uint64_t>(s) * n + i);
      x[i] = -std::log(u);
      sum += x[i];
    }
    for (double& v : x) v /= sum;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace wim
