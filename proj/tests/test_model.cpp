#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wim/model.hpp"

using namespace wim;

TEST_CASE("binomial curve parametrization") {
  ModelSpec hw = ModelSpec::make({{2, 2}});
  CHECK(hw.ambient_n == 3);
  CHECK(hw.param_dim == 1);

  double p = 0.3;
  auto nu = phi(hw, std::vector<double>{p});
  CHECK(nu[0] == doctest::Approx(p * p));
  CHECK(nu[1] == doctest::Approx(2 * p * (1 - p)));
  CHECK(nu[2] == doctest::Approx((1 - p) * (1 - p)));

  RatVec exact = phi_exact(hw, {Rat(3, 10)});
  CHECK(exact[0] == Rat(9, 100));
  CHECK(exact[1] == Rat(42, 100));
  CHECK(exact[2] == Rat(49, 100));
}

TEST_CASE("segre product parametrization") {
  ModelSpec m = ModelSpec::make({{2, 1}, {2, 1}});
  CHECK(m.ambient_n == 4);
  CHECK(m.param_dim == 2);
  CHECK(m.is_pure_segre());

  auto nu = phi(m, std::vector<double>{0.2, 0.7});
  CHECK(nu[0] == doctest::Approx(0.2 * 0.7));
  CHECK(nu[1] == doctest::Approx(0.2 * 0.3));
  CHECK(nu[2] == doctest::Approx(0.8 * 0.7));
  CHECK(nu[3] == doctest::Approx(0.8 * 0.3));
}

TEST_CASE("mixed symmetric-segre model hits the simplex corners") {
  ModelSpec m = ModelSpec::make({{2, 2}, {2, 1}});
  CHECK(m.ambient_n == 6);
  CHECK(m.param_dim == 2);
  CHECK_FALSE(m.is_pure_segre());
  auto nu = phi(m, std::vector<double>{1.0, 1.0});
  CHECK(nu == std::vector<double>{1, 0, 0, 0, 0, 0});
}

TEST_CASE("jacobian matches finite differences") {
  for (const ModelSpec& m :
       {ModelSpec::make({{2, 2}}), ModelSpec::make({{3, 1}, {2, 1}}), ModelSpec::make({{2, 3}})}) {
    std::vector<double> theta(static_cast<std::size_t>(m.param_dim), 0.31);
    auto jac = jacobian(m, theta);
    const double h = 1e-6;
    for (int k = 0; k < m.param_dim; ++k) {
      auto tp = theta, tm = theta;
      tp[static_cast<std::size_t>(k)] += h;
      tm[static_cast<std::size_t>(k)] -= h;
      auto fp = phi(m, tp), fm = phi(m, tm);
      for (int i = 0; i < m.ambient_n; ++i) {
        double fd = (fp[static_cast<std::size_t>(i)] - fm[static_cast<std::size_t>(i)]) / (2 * h);
        CHECK(jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] ==
              doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("expand_params rejects points outside the parameter polytope") {
  ModelSpec m = ModelSpec::make({{3, 1}});
  CHECK_THROWS_AS(phi(m, std::vector<double>{0.7, 0.6}), DomainError);
  CHECK_THROWS_AS(phi(m, std::vector<double>{-0.1, 0.5}), DomainError);
  CHECK_NOTHROW(phi(m, std::vector<double>{0.4, 0.6}));
}

TEST_CASE("maximum likelihood estimate is the product of marginals") {
  ModelSpec m = ModelSpec::make({{3, 1}, {3, 1}});
  RatVec mu = {Rat(2, 100),  Rat(3, 100),  Rat(5, 100),  Rat(7, 100), Rat(11, 100),
               Rat(13, 100), Rat(17, 100), Rat(19, 100), Rat(23, 100)};
  Distribution est = mle_segre(m, Distribution::from_rationals(mu));
  std::vector<long long> expected = {260, 330, 410, 806, 1023, 1271, 1534, 1947, 2419};
  for (int i = 0; i < 9; ++i) CHECK(est.values[static_cast<std::size_t>(i)] == Rat(expected[static_cast<std::size_t>(i)], 10000));
}

TEST_CASE("binomial-curve MLE uses the success-frequency estimate") {
  ModelSpec hw = ModelSpec::make({{2, 2}});
  Distribution mu = Distribution::from_rationals({Rat(1, 4), Rat(1, 4), Rat(1, 2)});
  Distribution est = mle_segre(hw, mu);
  Rat p = Rat(1, 4) + Rat(1, 8);  // mu1 + mu2/2
  CHECK(est.values[0] == p * p);
  CHECK(est.values[1] == 2 * p * (1 - p));
  CHECK(est.values[2] == (1 - p) * (1 - p));
}

TEST_CASE("MLE is unsupported for deeper symmetric factors") {
  CHECK_THROWS_AS(
      mle_segre(ModelSpec::make({{2, 3}}),
                Distribution::from_rationals({Rat(1, 4), Rat(1, 4), Rat(1, 4), Rat(1, 4)})),
      UnsupportedModelError);
}

TEST_CASE("simplex sampling is deterministic and on-simplex") {
  auto a = sample_simplex(5, 40, 123);
  auto b = sample_simplex(5, 40, 123);
  CHECK(a == b);
  auto c = sample_simplex(5, 40, 124);
  CHECK(a != c);
  for (const auto& row : a) {
    double s = 0;
    for (double x : row) {
      CHECK(x >= 0);
      s += x;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("counter_uniform is a deterministic stream in (0,1)") {
  CHECK(counter_uniform(7, 0) == counter_uniform(7, 0));
  CHECK(counter_uniform(7, 0) != counter_uniform(7, 1));
  CHECK(counter_uniform(7, 0) != counter_uniform(8, 0));
  double mean = 0;
  for (int i = 0; i < 2000; ++i) {
    double u = counter_uniform(99, static_cast<std::uint64_t>(i));
    CHECK(u > 0);
    CHECK(u < 1);
    mean += u;
  }
  mean /= 2000;
  CHECK(mean == doctest::Approx(0.5).epsilon(0.05));
}
