#include <algorithm>
#include <deque>

#include "wim/polytope.hpp"

namespace wim {

namespace {

int affine_dim(const WassersteinBall& ball, const std::vector<int>& ids) {
  if (ids.size() <= 1) return 0;
  std::vector<RatVec> diffs;
  const RatVec& base = ball.vertices[ids[0]];
  for (std::size_t k = 1; k < ids.size(); ++k) {
    RatVec d = ball.vertices[ids[k]];
    for (int c = 0; c < ball.n; ++c) d[c] -= base[c];
    diffs.push_back(std::move(d));
  }
  return linear_rank(diffs);
}

}  // namespace

FaceLattice face_lattice(const WassersteinBall& ball, std::size_t max_faces) {
  const std::size_t nf = ball.facet_count();

  // Closure BFS over the vertex-facet incidence: every proper face is an
  // intersection of facet vertex sets, and intersections are closed.
  std::unordered_map<Bitset, int, BitsetHash> seen;
  std::vector<Bitset> sets;
  std::vector<int> one_facet;
  std::deque<std::size_t> queue;

  auto push = [&](Bitset vs, int facet_hint) {
    if (!vs.any()) return;
    auto [it, fresh] = seen.try_emplace(vs, static_cast<int>(sets.size()));
    if (!fresh) return;
    if (sets.size() >= max_faces)
      throw CapacityError("face lattice exceeds cap of " + std::to_string(max_faces) + " faces");
    sets.push_back(std::move(vs));
    one_facet.push_back(facet_hint);
    queue.push_back(sets.size() - 1);
  };

  for (std::size_t f = 0; f < nf; ++f) push(ball.facet_incidence[f], static_cast<int>(f));

  while (!queue.empty()) {
    std::size_t id = queue.front();
    queue.pop_front();
    Bitset cur = sets[id];  // copy: sets may reallocate
    int hint = one_facet[id];
    for (std::size_t f = 0; f < nf; ++f) {
      if (cur.is_subset_of(ball.facet_incidence[f])) continue;
      push(cur & ball.facet_incidence[f], hint);
    }
  }

  FaceLattice lat;
  lat.faces.reserve(sets.size());
  for (std::size_t k = 0; k < sets.size(); ++k) {
    Face face;
    face.vertex_set = sets[k];
    face.vertex_ids = sets[k].to_indices();
    face.dim = affine_dim(ball, face.vertex_ids);
    face.facet_id = one_facet[k];
    lat.faces.push_back(std::move(face));
  }
  std::sort(lat.faces.begin(), lat.faces.end(),
            [](const Face& a, const Face& b) { return a.dim < b.dim; });
  lat.index.clear();
  for (std::size_t k = 0; k < lat.faces.size(); ++k) lat.index[lat.faces[k].vertex_set] = static_cast<int>(k);

  lat.f_vector.assign(ball.n - 1, 0);
  for (const Face& f : lat.faces) {
    if (f.dim >= 0 && f.dim < static_cast<int>(lat.f_vector.size())) ++lat.f_vector[f.dim];
  }
  return lat;
}

}  // namespace wim
