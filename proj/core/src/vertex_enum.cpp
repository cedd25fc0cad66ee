#include <algorithm>
#include <map>
#include <queue>

#include "wim/polytope.hpp"

namespace wim {

QuotientPoint make_quotient(RatVec v) {
  Rat mn = v.empty() ? Rat(0) : v[0];
  for (const Rat& x : v) mn = std::min(mn, x);
  for (Rat& x : v) x -= mn;
  return QuotientPoint{std::move(v)};
}

std::size_t QuotientPointHash::operator()(const QuotientPoint& p) const {
  std::size_t h = p.coords.size();
  for (const Rat& x : p.coords) {
    h = h * 1099511628211ULL + std::hash<double>{}(to_double(x));
  }
  return h;
}

namespace {

std::vector<FacetPair> constraint_pairs(const FiniteMetric& m) {
  std::vector<FacetPair> out;
  if (m.graph_edges) {
    for (auto [i, j] : *m.graph_edges) {
      out.push_back({i, j});
      out.push_back({j, i});
    }
  } else {
    for (int i = 0; i < m.n; ++i)
      for (int j = 0; j < m.n; ++j)
        if (i != j) out.push_back({i, j});
  }
  return out;
}

bool is_bipartite(int n, const std::vector<std::pair<int, int>>& edges, std::vector<int>* color) {
  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  color->assign(n, -1);
  std::queue<int> q;
  (*color)[0] = 0;
  q.push(0);
  int seen = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[u]) {
      if ((*color)[v] < 0) {
        (*color)[v] = 1 - (*color)[u];
        q.push(v);
        ++seen;
      } else if ((*color)[v] == (*color)[u]) {
        return false;
      }
    }
  }
  return seen == n;  // also demands connectivity
}

}  // namespace

LipschitzPolytope lipschitz_vertices_discrete(int n) {
  if (n < 2) throw InvalidSizeError("discrete metric needs n >= 2");
  if (n > 24) throw CapacityError("discrete enumeration capped at n = 24");
  LipschitzPolytope poly;
  poly.metric = discrete_metric(n);
  poly.facet_pairs = constraint_pairs(poly.metric);
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    RatVec v(n, 0);
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) v[i] = 1;
    poly.vertices.push_back(make_quotient(std::move(v)));
  }
  return poly;
}

LipschitzPolytope lipschitz_vertices_bipartite(const FiniteMetric& metric) {
  if (!metric.graph_edges) throw WrongMethodError("metric carries no graph");
  const int n = metric.n;
  std::vector<int> color;
  if (!is_bipartite(n, *metric.graph_edges, &color))
    throw WrongMethodError("graph is not connected bipartite; use the general enumerator");

  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : *metric.graph_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // BFS order from node 0; each new node differs by exactly 1 from every
  // assigned neighbor, which leaves at most two candidate values.
  std::vector<int> order;
  {
    std::vector<char> seen(n, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      order.push_back(u);
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
    }
  }

  LipschitzPolytope poly;
  poly.metric = metric;
  poly.facet_pairs = constraint_pairs(metric);

  std::vector<int> label(n, 0);
  std::vector<char> assigned(n, 0);
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == order.size()) {
      RatVec v(n);
      for (int i = 0; i < n; ++i) v[i] = label[i];
      poly.vertices.push_back(make_quotient(std::move(v)));
      return;
    }
    int u = order[pos];
    if (pos == 0) {
      label[u] = 0;
      assigned[u] = 1;
      self(self, pos + 1);
      assigned[u] = 0;
      return;
    }
    // candidate values from the first assigned neighbor, then checked
    // against the rest
    int base = 0;
    bool have = false;
    for (int nb : adj[u])
      if (assigned[nb]) {
        base = label[nb];
        have = true;
        break;
      }
    if (!have) throw WrongMethodError("graph is not connected");
    for (int val : {base - 1, base + 1}) {
      bool ok = true;
      for (int nb : adj[u])
        if (assigned[nb] && std::abs(label[nb] - val) != 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      label[u] = val;
      assigned[u] = 1;
      self(self, pos + 1);
      assigned[u] = 0;
    }
  };
  rec(rec, 0);
  return poly;
}

namespace {

/// Incremental double description on the chart x_{n-1} = 0. Vertices are
/// maintained with exact coordinates and constraint-incidence bitsets.
struct DDVertex {
  RatVec x;       // length n-1
  Bitset active;  // over the full constraint list
};

struct Constraint {
  int i, j;  // x_i - x_j <= rhs, index n-1 means the pinned coordinate
  Rat rhs;
};

Rat slack(const Constraint& c, const RatVec& x, int nm1) {
  Rat lhs = 0;
  if (c.i < nm1) lhs += x[c.i];
  if (c.j < nm1) lhs -= x[c.j];
  return c.rhs - lhs;
}

}  // namespace

LipschitzPolytope lipschitz_vertices_general(const FiniteMetric& metric) {
  const int n = metric.n;
  if (n > 10) throw CapacityError("general vertex enumeration capped at n = 10");
  const int D = n - 1;

  auto pairs = constraint_pairs(metric);
  std::vector<Constraint> cons;
  // Bounding box |x_i| <= d_{i,n-1} first; these are valid for P_d even
  // when (i, n-1) is not a graph edge.
  for (int i = 0; i < D; ++i) cons.push_back({i, n - 1, metric.d[i][n - 1]});
  for (int i = 0; i < D; ++i) cons.push_back({n - 1, i, metric.d[i][n - 1]});
  for (const auto& p : pairs) {
    bool dup = false;
    for (const auto& c : cons)
      if (c.i == p.i && c.j == p.j) {
        dup = true;
        break;
      }
    if (!dup) cons.push_back({p.i, p.j, metric.d[p.i][p.j]});
  }
  const std::size_t H = cons.size();

  std::vector<DDVertex> verts;
  // box vertices: all sign patterns
  for (unsigned mask = 0; mask < (1u << D); ++mask) {
    DDVertex v;
    v.x.resize(D);
    v.active = Bitset(H);
    for (int i = 0; i < D; ++i) {
      bool plus = mask & (1u << i);
      v.x[i] = plus ? metric.d[i][n - 1] : -metric.d[i][n - 1];
      v.active.set(plus ? i : D + i);
    }
    verts.push_back(std::move(v));
  }

  std::vector<char> inserted(H, 0);
  for (std::size_t c = 0; c < static_cast<std::size_t>(2 * D); ++c) inserted[c] = 1;

  auto recompute_active = [&](DDVertex& v, std::size_t upto) {
    v.active = Bitset(H);
    for (std::size_t c = 0; c < upto; ++c)
      if (inserted[c] && slack(cons[c], v.x, D) == 0) v.active.set(c);
  };

  std::size_t remaining = H - 2 * D;
  while (remaining > 0) {
    // next constraint: largest cut count
    std::size_t best = H;
    long best_cut = -1;
    std::vector<Rat> slacks(verts.size());
    for (std::size_t c = 0; c < H; ++c) {
      if (inserted[c]) continue;
      long cut = 0;
      for (const auto& v : verts)
        if (slack(cons[c], v.x, D) < 0) ++cut;
      if (cut > best_cut) {
        best_cut = cut;
        best = c;
      }
    }
    const Constraint& con = cons[best];
    inserted[best] = 1;
    --remaining;
    if (best_cut == 0) {
      for (auto& v : verts)
        if (slack(con, v.x, D) == 0) v.active.set(best);
      continue;
    }

    for (std::size_t k = 0; k < verts.size(); ++k) slacks[k] = slack(con, verts[k].x, D);
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      if (slacks[k] > 0) pos.push_back(k);
      if (slacks[k] < 0) neg.push_back(k);
    }

    std::vector<DDVertex> created;
    for (std::size_t a : pos) {
      for (std::size_t b : neg) {
        Bitset common = verts[a].active & verts[b].active;
        if (static_cast<int>(common.count()) < D - 1) continue;
        // adjacency: no third vertex's active set contains the intersection
        bool adjacent = true;
        for (std::size_t z = 0; z < verts.size(); ++z) {
          if (z == a || z == b) continue;
          if (common.is_subset_of(verts[z].active)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Rat t = slacks[a] / (slacks[a] - slacks[b]);
        DDVertex nv;
        nv.x.resize(D);
        for (int i = 0; i < D; ++i) nv.x[i] = verts[a].x[i] + t * (verts[b].x[i] - verts[a].x[i]);
        created.push_back(std::move(nv));
      }
    }

    std::vector<DDVertex> next;
    for (std::size_t k = 0; k < verts.size(); ++k) {
      if (slacks[k] < 0) continue;
      if (slacks[k] == 0) verts[k].active.set(best);
      next.push_back(std::move(verts[k]));
    }
    for (auto& nv : created) {
      recompute_active(nv, H);
      next.push_back(std::move(nv));
    }
    verts = std::move(next);
  }

  LipschitzPolytope poly;
  poly.metric = metric;
  poly.facet_pairs = pairs;
  for (const auto& v : verts) {
    RatVec full(n, 0);
    for (int i = 0; i < D; ++i) full[i] = v.x[i];
    poly.vertices.push_back(make_quotient(std::move(full)));
  }
  return poly;
}

LipschitzPolytope lipschitz_vertices(const FiniteMetric& metric) {
  if (metric.kind == MetricKind::discrete) return lipschitz_vertices_discrete(metric.n);
  if (metric.graph_edges) {
    std::vector<int> color;
    if (is_bipartite(metric.n, *metric.graph_edges, &color))
      return lipschitz_vertices_bipartite(metric);
  }
  return lipschitz_vertices_general(metric);
}

}  // namespace wim
