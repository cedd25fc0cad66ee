#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wim/statespace.hpp"

namespace wim {

/// Segre-Veronese independence model ((m_1)_{d_1},...,(m_k)_{d_k}).
/// The monomial map phi sends per-factor marginals to the rank-one
/// (partially symmetric) joint distribution. Parameters are the free
/// coordinates: the first m_i - 1 entries of each marginal.
struct ModelSpec {
  ProductShape shape;
  int ambient_n = 0;
  int param_dim = 0;

  // per state, per factor: exponent vector and multinomial coefficient
  struct StateTerm {
    std::vector<std::vector<int>> exponents;  // one per factor, length m_i
    double coeff = 1.0;
    BigInt coeff_exact = 1;
  };
  std::vector<StateTerm> states;

  static ModelSpec make(std::vector<FactorSpec> factors);

  bool is_pure_segre() const;
  /// Offset of factor i's free parameters inside a packed theta vector.
  int param_offset(int factor) const;
};

/// Expands packed free parameters into full per-factor marginals
/// (appending the dependent last coordinate). Throws DomainError if theta
/// leaves the parameter polytope by more than tol.
std::vector<std::vector<double>> expand_params(const ModelSpec& model,
                                               std::span<const double> theta, double tol = 1e-12);

std::vector<double> phi(const ModelSpec& model, std::span<const double> theta);
RatVec phi_exact(const ModelSpec& model, const RatVec& theta);

/// ambient_n x param_dim matrix of partial derivatives of phi.
std::vector<std::vector<double>> jacobian(const ModelSpec& model, std::span<const double> theta);

/// Product of marginals; exact. Pure Segre models only, except (2_2)
/// which uses the allele-frequency estimate.
Distribution mle_segre(const ModelSpec& model, const Distribution& mu);

/// Uniform samples on the simplex via normalized exponentials from a
/// counter-derived deterministic stream. Same seed, same output.
std::vector<std::vector<double>> sample_simplex(int n, int count, std::uint64_t seed);

/// One deterministic uniform draw in (0,1), derived from (seed, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

}  // namespace wim
