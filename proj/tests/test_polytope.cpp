#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "wim/polytope.hpp"

using namespace wim;

namespace {

std::set<RatVec> vertex_set(const LipschitzPolytope& p) {
  std::set<RatVec> out;
  for (const auto& v : p.vertices) out.insert(v.coords);
  return out;
}

/// Brute-force vertex oracle: try every (n-1)-subset of the constraints
/// |x_i - x_j| = d_ij on the chart x_{n-1} = 0, solve exactly, keep
/// feasible unique solutions. Exponential, for tiny n only.
std::set<RatVec> brute_force_vertices(const FiniteMetric& m) {
  const int n = m.n;
  struct Con {
    int i, j;  // x_i - x_j = d_ij
  };
  std::vector<Con> cons;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) cons.push_back({i, j});

  std::set<RatVec> out;
  const int k = n - 1;
  std::vector<int> pick(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int from, int depth) -> void {
    if (depth == k) {
      // solve the k tight equations on coordinates 0..n-2 (x_{n-1} = 0)
      std::vector<RatVec> a(static_cast<std::size_t>(k), RatVec(static_cast<std::size_t>(k + 1)));
      for (int r = 0; r < k; ++r) {
        const Con& c = cons[static_cast<std::size_t>(pick[static_cast<std::size_t>(r)])];
        if (c.i < k) a[r][c.i] += 1;
        if (c.j < k) a[r][c.j] -= 1;
        a[r][k] = m.d[c.i][c.j];
      }
      // Gaussian elimination
      int row = 0;
      std::vector<int> where(static_cast<std::size_t>(k), -1);
      for (int col = 0; col < k && row < k; ++col) {
        int piv = -1;
        for (int r = row; r < k; ++r)
          if (a[r][col] != 0) {
            piv = r;
            break;
          }
        if (piv < 0) continue;
        std::swap(a[piv], a[row]);
        for (int r = 0; r < k; ++r) {
          if (r == row || a[r][col] == 0) continue;
          Rat f = a[r][col] / a[row][col];
          for (int c2 = col; c2 <= k; ++c2) a[r][c2] -= f * a[row][c2];
        }
        where[static_cast<std::size_t>(col)] = row;
        ++row;
      }
      if (row < k) return;  // singular
      for (int r = 0; r < k; ++r) {
        bool zero = true;
        for (int c2 = 0; c2 < k; ++c2)
          if (a[r][c2] != 0) zero = false;
        if (zero && a[r][k] != 0) return;  // inconsistent
      }
      RatVec x(static_cast<std::size_t>(n), Rat(0));
      for (int col = 0; col < k; ++col) {
        int r = where[static_cast<std::size_t>(col)];
        if (r >= 0) x[col] = a[r][k] / a[r][col];
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          if (x[i] - x[j] > m.d[i][j]) return;  // infeasible
        }
      out.insert(make_quotient(x).coords);
      return;
    }
    for (int c = from; c < static_cast<int>(cons.size()); ++c) {
      pick[static_cast<std::size_t>(depth)] = c;
      self(self, c + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

FiniteMetric path3_custom() {
  // d = (d12, d13, d23) = (1, 2, 1), entered as a custom matrix
  std::vector<RatVec> d = {{Rat(0), Rat(1), Rat(2)},
                           {Rat(1), Rat(0), Rat(1)},
                           {Rat(2), Rat(1), Rat(0)}};
  return custom_metric(d);
}

}  // namespace

TEST_CASE("discrete vertices are the binary cut vectors") {
  LipschitzPolytope p = lipschitz_vertices_discrete(3);
  CHECK(p.vertices.size() == 6);
  LipschitzPolytope p4 = lipschitz_vertices_discrete(4);
  CHECK(p4.vertices.size() == 14);
  for (const auto& v : p4.vertices)
    for (const auto& x : v.coords) CHECK((x == 0 || x == 1));
  // matches the general enumerator
  CHECK(vertex_set(p4) == vertex_set(lipschitz_vertices_general(discrete_metric(4))));
}

TEST_CASE("path metric on three states gives a parallelogram") {
  FiniteMetric m = path3_custom();
  LipschitzPolytope p = lipschitz_vertices(m);
  CHECK(p.vertices.size() == 4);
  CHECK(vertex_set(p) == brute_force_vertices(m));
}

TEST_CASE("general enumerator matches the brute-force oracle on small metrics") {
  for (const FiniteMetric& m :
       {discrete_metric(3), discrete_metric(4), l0_metric({2, 2}), l1_metric({4})}) {
    CAPTURE(m.n);
    CHECK(vertex_set(lipschitz_vertices_general(m)) == brute_force_vertices(m));
  }
}

TEST_CASE("bipartite labeling agrees with the general enumerator") {
  for (const FiniteMetric& m : {l0_metric({2, 2}), l1_metric({4}), l1_metric({3, 2})}) {
    CAPTURE(m.n);
    CHECK(vertex_set(lipschitz_vertices_bipartite(m)) == vertex_set(lipschitz_vertices_general(m)));
  }
  CHECK_THROWS_AS(lipschitz_vertices_bipartite(l0_metric({3, 3})), WrongMethodError);
  CHECK_THROWS_AS(lipschitz_vertices_bipartite(discrete_metric(4)), WrongMethodError);
}

TEST_CASE("hamming cube vertex counts") {
  CHECK(lipschitz_vertices_bipartite(l0_metric({2, 2})).vertices.size() == 6);
  CHECK(lipschitz_vertices_bipartite(l0_metric({2, 2, 2})).vertices.size() == 38);
  CHECK(lipschitz_vertices_bipartite(l0_metric({2, 2, 2, 2})).vertices.size() == 990);
}

TEST_CASE("ball of the discrete metric on three states is a hexagon") {
  WassersteinBall b = build_ball(lipschitz_vertices(discrete_metric(3)));
  CHECK(b.vertices.size() == 6);
  CHECK(b.facet_count() == 6);
  for (const auto& v : b.vertices) {
    Rat s = 0;
    for (const auto& x : v) s += x;
    CHECK(s == 0);
  }
  FaceLattice lat = face_lattice(b);
  CHECK(lat.f_vector == std::vector<long long>{6, 6});
  // each hexagon edge has two vertices
  for (const auto& f : lat.faces)
    if (f.dim == 1) CHECK(f.vertex_ids.size() == 2);
}

TEST_CASE("non-extreme generators are dropped from the ball") {
  // path metric: (e_0 - e_2)/2 is the midpoint of (e_0 - e_1) and (e_1 - e_2)
  WassersteinBall b = build_ball(lipschitz_vertices(path3_custom()));
  CHECK(b.vertices.size() == 4);
}

TEST_CASE("closed-form f-vectors match enumerated lattices") {
  for (int n = 3; n <= 6; ++n) {
    CAPTURE(n);
    FaceLattice lat = face_lattice(build_ball(lipschitz_vertices(discrete_metric(n))));
    auto formula = fvector_discrete_formula(n);
    REQUIRE(lat.f_vector.size() == formula.size());
    // dual pair: ball face counts read in reverse
    for (std::size_t i = 0; i < formula.size(); ++i)
      CHECK(BigInt(lat.f_vector[i]) == formula[formula.size() - 1 - i]);
  }
  for (int n = 3; n <= 6; ++n) {
    CAPTURE(n);
    FaceLattice lat = face_lattice(build_ball(lipschitz_vertices(l1_metric({n}))));
    auto formula = fvector_path_formula(n);
    REQUIRE(lat.f_vector.size() == formula.size());
    for (std::size_t i = 0; i < formula.size(); ++i)
      CHECK(BigInt(lat.f_vector[i]) == formula[formula.size() - 1 - i]);
  }
}

TEST_CASE("minimal_face_containing locates vertices, edges, and errors") {
  WassersteinBall b = build_ball(lipschitz_vertices(discrete_metric(3)));
  FaceLattice lat = face_lattice(b);

  // a vertex
  std::vector<double> w = to_doubles(b.vertices[0]);
  CHECK(minimal_face_containing(b, lat, w).dim == 0);
  // midpoint of an adjacent pair lies on an edge
  const Face* edge = nullptr;
  for (const auto& f : lat.faces)
    if (f.dim == 1) edge = &f;
  REQUIRE(edge != nullptr);
  std::vector<double> mid(3, 0.0);
  for (int vid : edge->vertex_ids)
    for (int i = 0; i < 3; ++i) mid[i] += 0.5 * to_double(b.vertices[vid][i]);
  CHECK(&minimal_face_containing(b, lat, mid) == edge);

  // interior and exterior points are rejected
  std::vector<double> interior(3, 0.0);
  for (int i = 0; i < 3; ++i) interior[i] = 0.5 * w[i];
  CHECK_THROWS_AS(minimal_face_containing(b, lat, interior), GeometryError);
  std::vector<double> outside(3);
  for (int i = 0; i < 3; ++i) outside[i] = 2.0 * w[i];
  CHECK_THROWS_AS(minimal_face_containing(b, lat, outside), GeometryError);

  // exact overload agrees
  CHECK(minimal_face_containing(b, lat, b.vertices[0]).dim == 0);
}

TEST_CASE("linear_rank on exact vectors") {
  CHECK(linear_rank({}) == 0);
  CHECK(linear_rank({{Rat(1), Rat(-1), Rat(0)}}) == 1);
  CHECK(linear_rank({{Rat(1), Rat(-1), Rat(0)}, {Rat(2), Rat(-2), Rat(0)}}) == 1);
  CHECK(linear_rank({{Rat(1), Rat(-1), Rat(0)}, {Rat(0), Rat(1), Rat(-1)}}) == 2);
}

TEST_CASE("capacity guard on the face lattice") {
  WassersteinBall b = build_ball(lipschitz_vertices(discrete_metric(5)));
  CHECK_THROWS_AS(face_lattice(b, 10), CapacityError);
}
