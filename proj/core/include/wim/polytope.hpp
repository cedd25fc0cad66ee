#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "wim/bitset.hpp"
#include "wim/statespace.hpp"

namespace wim {

/// A point of R^n / R*1, stored with its canonical representative
/// (minimum coordinate zero).
struct QuotientPoint {
  RatVec coords;

  bool operator==(const QuotientPoint& o) const { return coords == o.coords; }
};

QuotientPoint make_quotient(RatVec v);

struct QuotientPointHash {
  std::size_t operator()(const QuotientPoint& p) const;
};

/// Halfspace x_i - x_j <= d_ij (0-based indices).
struct FacetPair {
  int i = 0;
  int j = 0;
};

struct LipschitzPolytope {
  FiniteMetric metric;
  std::vector<QuotientPoint> vertices;
  std::vector<FacetPair> facet_pairs;
};

LipschitzPolytope lipschitz_vertices_discrete(int n);

/// Integer-labeling enumeration for connected bipartite graph metrics
/// (products of paths, binary Hamming cubes). Throws WrongMethodError on
/// non-bipartite graphs.
LipschitzPolytope lipschitz_vertices_bipartite(const FiniteMetric& metric);

/// Exact incremental double description over the halfspace description.
/// Capped at n <= 10.
LipschitzPolytope lipschitz_vertices_general(const FiniteMetric& metric);

/// Dispatches to the cheapest applicable enumerator.
LipschitzPolytope lipschitz_vertices(const FiniteMetric& metric);

/// The unit ball B = P_d^* of the Wasserstein norm, living in the
/// hyperplane sum(y) = 0. One facet per Lipschitz vertex; the Lipschitz
/// vertex is the facet's inner normal (the pairing ignores the quotient
/// shift since ball points sum to zero).
struct WassersteinBall {
  int n = 0;
  std::vector<RatVec> vertices;                   // sum-zero representatives
  std::vector<std::pair<int, int>> vertex_pairs;  // v = (e_i - e_j) / d_ij
  std::vector<QuotientPoint> facet_normals;
  std::vector<Bitset> facet_incidence;  // per facet, over ball vertices

  std::size_t facet_count() const { return facet_normals.size(); }
};

WassersteinBall build_ball(const LipschitzPolytope& poly);

struct Face {
  Bitset vertex_set;
  std::vector<int> vertex_ids;
  int dim = 0;
  int facet_id = -1;  // one facet whose normal is maximized on this face
};

struct FaceLattice {
  std::vector<Face> faces;  // ascending by dimension
  std::vector<long long> f_vector;
  std::unordered_map<Bitset, int, BitsetHash> index;  // vertex_set -> face id

  const Face* find(const Bitset& vertex_set) const;
};

FaceLattice face_lattice(const WassersteinBall& ball, std::size_t max_faces = 1000000);

/// f-vector of the Lipschitz polytope for the discrete metric on [n]:
/// f_i = C(n,i) * (2^(n-i) - 2).
std::vector<BigInt> fvector_discrete_formula(int n);

/// f-vector of the Lipschitz polytope for the path metric on [n]:
/// f_i = 2^(n-i-1) * C(n-1,i).
std::vector<BigInt> fvector_path_formula(int n);

/// Minimal face of the ball whose relative interior contains w, for w on
/// the boundary (|w|_B = 1 within tol). w must sum to zero.
const Face& minimal_face_containing(const WassersteinBall& ball, const FaceLattice& lattice,
                                    const std::vector<double>& w, double tol = 1e-7);
const Face& minimal_face_containing(const WassersteinBall& ball, const FaceLattice& lattice,
                                    const RatVec& w);

/// Rank of the span of the given sum-zero vectors (exact).
int linear_rank(const std::vector<RatVec>& vectors);

}  // namespace wim
