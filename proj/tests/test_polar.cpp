#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "wim/polar.hpp"

using namespace wim;

namespace {

std::vector<BigInt> big(std::initializer_list<long long> v) {
  return std::vector<BigInt>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("classical degrees") {
  CHECK(segre_veronese_degree(ProductShape::make({{3, 1}, {3, 1}})) == 6);
  CHECK(segre_veronese_degree(ProductShape::make({{2, 1}, {2, 1}, {2, 1}})) == 6);
  CHECK(segre_veronese_degree(ProductShape::make({{2, 6}})) == 6);
  CHECK(segre_veronese_degree(ProductShape::make({{2, 2}, {2, 1}})) == 4);
  CHECK(segre_veronese_degree(ProductShape::make({{4, 1}, {4, 1}})) == 20);  // C(6,3)
  CHECK(segre_veronese_degree(ProductShape::make({{2, 3}})) == 3);          // twisted cubic
}

TEST_CASE("first polar degree equals the degree of the variety") {
  for (auto factors : std::vector<std::vector<FactorSpec>>{{{3, 1}, {3, 1}},
                                                           {{2, 1}, {2, 1}, {2, 1}},
                                                           {{2, 6}},
                                                           {{2, 2}, {2, 1}},
                                                           {{2, 1}, {4, 1}}}) {
    ProductShape shape = ProductShape::make(factors);
    PolarDegrees p = polar_degrees(shape);
    REQUIRE(p.r1 >= 1);
    CHECK(p.delta[static_cast<std::size_t>(p.r1 - 1)] == segre_veronese_degree(shape));
    CHECK(p.shifted().front() == segre_veronese_degree(shape));
  }
}

TEST_CASE("published polar degree vectors") {
  CHECK(polar_degrees(ProductShape::make({{2, 1}, {2, 1}, {2, 1}})).delta ==
        big({0, 0, 0, 6, 12, 12, 4}));
  CHECK(polar_degrees(ProductShape::make({{3, 1}, {3, 1}})).delta ==
        big({0, 0, 0, 6, 12, 12, 6, 3}));
  CHECK(polar_degrees(ProductShape::make({{2, 6}})).delta == big({0, 0, 0, 0, 6, 10}));
  CHECK(polar_degrees(ProductShape::make({{2, 2}, {2, 1}})).delta == big({0, 0, 4, 6, 4}));
}

TEST_CASE("dual-defective matrix models end in zeros") {
  PolarDegrees p = polar_degrees_matrix(2, 4);
  CHECK(p.shifted() == big({4, 6, 4}));
  CHECK(p.delta == big({0, 0, 4, 6, 4, 0, 0}));
  CHECK(p.r1 == 3);
  CHECK(p.r2 == 5);
}

TEST_CASE("k-bit specialization agrees with the general formula") {
  for (int k = 2; k <= 5; ++k) {
    CAPTURE(k);
    std::vector<FactorSpec> factors(static_cast<std::size_t>(k), FactorSpec{2, 1});
    PolarDegrees general = polar_degrees(ProductShape::make(factors));
    PolarDegrees special = polar_degrees_kbit(k);
    CHECK(general.delta == special.delta);
    CHECK(general.r1 == special.r1);
    CHECK(general.r2 == special.r2);
  }
  CHECK_THROWS_AS(polar_degrees_kbit(1), InvalidSizeError);
}

TEST_CASE("matrix specialization agrees with the general formula") {
  for (auto [m1, m2] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {3, 4}, {4, 4}, {2, 6}}) {
    CAPTURE(m1);
    CAPTURE(m2);
    PolarDegrees general = polar_degrees(ProductShape::make({{m1, 1}, {m2, 1}}));
    PolarDegrees special = polar_degrees_matrix(m1, m2);
    CHECK(general.delta == special.delta);
    CHECK(general.r1 == special.r1);
    CHECK(general.r2 == special.r2);
  }
  CHECK_THROWS_AS(polar_degrees_matrix(1, 3), InvalidSizeError);
}

TEST_CASE("nonzero block starts at the codimension") {
  for (auto factors : std::vector<std::vector<FactorSpec>>{{{3, 1}, {3, 1}},
                                                           {{2, 1}, {2, 1}, {2, 1}},
                                                           {{2, 6}},
                                                           {{2, 2}, {2, 1}}}) {
    ProductShape shape = ProductShape::make(factors);
    int mdim = 0;
    for (const auto& f : shape.factors) mdim += f.m - 1;
    int codim = shape.n - 1 - mdim;
    CHECK(polar_degrees(shape).r1 == codim);
  }
}
