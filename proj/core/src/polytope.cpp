#include <algorithm>
#include <map>

#include "wim/polytope.hpp"

namespace wim {

int linear_rank(const std::vector<RatVec>& vectors) {
  if (vectors.empty()) return 0;
  std::vector<RatVec> m = vectors;
  const std::size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows); ++col) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || m[r][col] == 0) continue;
      Rat f = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

WassersteinBall build_ball(const LipschitzPolytope& poly) {
  const FiniteMetric& metric = poly.metric;
  const int n = metric.n;

  WassersteinBall ball;
  ball.n = n;
  ball.facet_normals = poly.vertices;

  // candidate points (e_i - e_j)/d_ij; only graph edges when present
  std::vector<std::pair<int, int>> cand_pairs;
  if (metric.graph_edges) {
    for (auto [i, j] : *metric.graph_edges) {
      cand_pairs.emplace_back(i, j);
      cand_pairs.emplace_back(j, i);
    }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) cand_pairs.emplace_back(i, j);
  }

  // deduplicate coincident scaled points
  std::map<RatVec, std::pair<int, int>> uniq;
  for (auto [i, j] : cand_pairs) {
    RatVec v(n, 0);
    v[i] = Rat(1) / metric.d[i][j];
    v[j] = -v[i];
    uniq.try_emplace(std::move(v), i, j);
  }

  // a candidate is extreme iff the facet normals active at it span the
  // full quotient dual, i.e. rank({active normals} + {1}) = n
  for (const auto& [v, pr] : uniq) {
    std::vector<RatVec> active;
    for (const auto& q : ball.facet_normals) {
      Rat s = 0;
      for (int c = 0; c < n; ++c) s += q.coords[c] * v[c];
      if (s == 1) active.push_back(q.coords);
    }
    active.push_back(RatVec(n, 1));
    if (linear_rank(active) == n) {
      ball.vertices.push_back(v);
      ball.vertex_pairs.push_back(pr);
    }
  }

  ball.facet_incidence.assign(ball.facet_normals.size(), Bitset(ball.vertices.size()));
  for (std::size_t f = 0; f < ball.facet_normals.size(); ++f) {
    const RatVec& q = ball.facet_normals[f].coords;
    for (std::size_t k = 0; k < ball.vertices.size(); ++k) {
      Rat s = 0;
      for (int c = 0; c < n; ++c) s += q[c] * ball.vertices[k][c];
      if (s == 1) ball.facet_incidence[f].set(k);
    }
  }
  return ball;
}

std::vector<BigInt> fvector_discrete_formula(int n) {
  if (n < 2) throw InvalidSizeError("n >= 2 required");
  std::vector<BigInt> f;
  for (int i = 0; i <= n - 2; ++i) {
    BigInt p = 1;
    p <<= (n - i);
    f.push_back(binomial(n, i) * (p - 2));
  }
  return f;
}

std::vector<BigInt> fvector_path_formula(int n) {
  if (n < 2) throw InvalidSizeError("n >= 2 required");
  std::vector<BigInt> f;
  for (int i = 0; i <= n - 2; ++i) {
    BigInt p = 1;
    p <<= (n - i - 1);
    f.push_back(p * binomial(n - 1, i));
  }
  return f;
}

namespace {

const Face& locate(const WassersteinBall& ball, const FaceLattice& lattice,
                   const std::vector<int>& active_facets) {
  if (active_facets.empty()) throw GeometryError("point is not on the ball boundary");
  Bitset vs = ball.facet_incidence[active_facets[0]];
  for (std::size_t k = 1; k < active_facets.size(); ++k)
    vs &= ball.facet_incidence[active_facets[k]];
  if (!vs.any()) throw GeometryError("active facets have empty common vertex set");
  const Face* f = lattice.find(vs);
  if (!f) throw GeometryError("face not present in lattice");
  return *f;
}

}  // namespace

const Face* FaceLattice::find(const Bitset& vertex_set) const {
  auto it = index.find(vertex_set);
  return it == index.end() ? nullptr : &faces[it->second];
}

const Face& minimal_face_containing(const WassersteinBall& ball, const FaceLattice& lattice,
                                    const std::vector<double>& w, double tol) {
  std::vector<std::vector<double>> normals;
  double norm = -1e300;
  std::vector<int> active;
  for (std::size_t f = 0; f < ball.facet_normals.size(); ++f) {
    double s = 0;
    for (int c = 0; c < ball.n; ++c) s += to_double(ball.facet_normals[f].coords[c]) * w[c];
    norm = std::max(norm, s);
    if (s >= 1 - tol) active.push_back(static_cast<int>(f));
  }
  if (norm > 1 + tol) throw GeometryError("point lies outside the ball");
  if (norm < 1 - tol) throw GeometryError("point lies in the ball interior");
  return locate(ball, lattice, active);
}

const Face& minimal_face_containing(const WassersteinBall& ball, const FaceLattice& lattice,
                                    const RatVec& w) {
  Rat norm = 0;
  std::vector<int> active;
  for (std::size_t f = 0; f < ball.facet_normals.size(); ++f) {
    Rat s = 0;
    for (int c = 0; c < ball.n; ++c) s += ball.facet_normals[f].coords[c] * w[c];
    norm = std::max(norm, s);
    if (s == 1) active.push_back(static_cast<int>(f));
  }
  if (norm != 1) throw GeometryError("point is not on the ball boundary");
  return locate(ball, lattice, active);
}

}  // namespace wim
