#include "wim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "wim/errors.hpp"
#include "wim/nelder_mead.hpp"
#include "wim/nnls.hpp"
#include "wim/wdist.hpp"

namespace wim {

namespace {

std::vector<double> quotient_to_doubles(const QuotientPoint& p) {
  std::vector<double> out(p.coords.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = to_double(p.coords[i]);
  return out;
}

/// Pulls theta back into the parameter polytope (coordinates in [0,1],
/// per-factor sums at most 1) and reports the squared distance moved.
double feasibilize(const ModelSpec& model, std::vector<double>& theta) {
  double viol = 0;
  for (std::size_t f = 0; f < model.shape.factors.size(); ++f) {
    const int off = model.param_offset(static_cast<int>(f));
    const int c = model.shape.factors[f].m - 1;
    double sum = 0;
    for (int k = 0; k < c; ++k) {
      double& t = theta[off + k];
      double clamped = std::clamp(t, 0.0, 1.0);
      viol += (t - clamped) * (t - clamped);
      t = clamped;
      sum += t;
    }
    if (sum > 1.0) {
      viol += (sum - 1.0) * (sum - 1.0);
      for (int k = 0; k < c; ++k) theta[off + k] /= sum;
    }
  }
  return viol;
}

std::vector<double> random_theta(const ModelSpec& model, std::uint64_t seed,
                                 std::uint64_t& counter) {
  std::vector<double> theta(static_cast<std::size_t>(model.param_dim));
  for (std::size_t f = 0; f < model.shape.factors.size(); ++f) {
    const int m = model.shape.factors[f].m;
    const int off = model.param_offset(static_cast<int>(f));
    std::vector<double> e(m);
    double total = 0;
    for (int k = 0; k < m; ++k) {
      e[k] = -std::log(counter_uniform(seed, counter++));
      total += e[k];
    }
    for (int k = 0; k < m - 1; ++k) theta[off + k] = e[k] / total;
  }
  return theta;
}

std::vector<double> center_theta(const ModelSpec& model) {
  std::vector<double> theta(static_cast<std::size_t>(model.param_dim));
  for (std::size_t f = 0; f < model.shape.factors.size(); ++f) {
    const int m = model.shape.factors[f].m;
    const int off = model.param_offset(static_cast<int>(f));
    for (int k = 0; k < m - 1; ++k) theta[off + k] = 1.0 / m;
  }
  return theta;
}

std::vector<double> diff_to(const std::vector<double>& mu, const std::vector<double>& nu) {
  std::vector<double> d(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) d[i] = mu[i] - nu[i];
  return d;
}

double inf_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

int default_grid(int param_dim) {
  if (param_dim <= 2) return 64;
  if (param_dim <= 4) return 24;
  return 10;
}

/// Enumerates per-factor simplex grid points (free coordinates summing to
/// at most g, step 1/g) and calls fn on every packed theta.
template <typename Fn>
void for_each_grid_point(const ModelSpec& model, int g, Fn&& fn) {
  std::vector<double> theta(static_cast<std::size_t>(model.param_dim));
  const int nf = static_cast<int>(model.shape.factors.size());

  auto factor_rec = [&](auto&& self, int f, int k, int left) -> void {
    if (f == nf) {
      fn(theta);
      return;
    }
    const int c = model.shape.factors[f].m - 1;
    if (k == c) {
      self(self, f + 1, 0, g);
      return;
    }
    const int off = model.param_offset(f);
    for (int v = 0; v <= left; ++v) {
      theta[off + k] = static_cast<double>(v) / g;
      self(self, f, k + 1, left - v);
    }
  };
  factor_rec(factor_rec, 0, 0, g);
}

struct Candidate {
  std::vector<double> theta;
  std::vector<double> nu;
  double value = 0;
};

/// Classifies the type face of the optimum and fills the polar-degree
/// bound. No-op when mu is (numerically) on the model.
void classify_type(const Workspace& ws, const std::vector<double>& mu, ProjectionResult& res,
                   double face_tol) {
  res.type_dim = -1;
  res.type_face_id = -1;
  res.degree_bound = 0;
  if (res.value < 1e-9) return;

  std::vector<double> w(mu.size());
  double shift = 0;  // re-center to exact sum zero to absorb rounding
  for (std::size_t i = 0; i < mu.size(); ++i) {
    w[i] = (res.nu_star[i] - mu[i]) / res.value;
    shift += w[i];
  }
  shift /= static_cast<double>(mu.size());
  for (double& x : w) x -= shift;

  const Face* face = nullptr;
  for (double tol : {face_tol, 10 * face_tol, 1e-5}) {
    try {
      face = &minimal_face_containing(ws.ball, ws.lattice, w, tol);
      break;
    } catch (const GeometryError&) {
      continue;
    }
  }
  if (face == nullptr) return;
  res.type_dim = face->dim;
  res.type_face_id = static_cast<int>(face - ws.lattice.faces.data());
  if (res.type_dim >= 0 && res.type_dim < static_cast<int>(ws.polar.delta.size()))
    res.degree_bound = ws.polar.delta[static_cast<std::size_t>(res.type_dim)];
}

void collect_ties(const std::vector<Candidate>& cands, ProjectionResult& res,
                  const ProjectOptions& opts) {
  res.ties.clear();
  res.ties.push_back(res.nu_star);  // ties always lists every optimizer
  const double cutoff = res.value + opts.tie_value_tol * (1.0 + std::abs(res.value));
  for (const auto& c : cands) {
    if (c.value > cutoff) continue;
    bool fresh = true;
    for (const auto& t : res.ties)
      if (inf_dist(c.nu, t) < opts.tie_separation) fresh = false;
    if (fresh) res.ties.push_back(c.nu);
  }
}

}  // namespace

Workspace Workspace::make(ModelSpec model, const FiniteMetric& metric) {
  if (metric.n != model.ambient_n)
    throw ShapeMismatchError("metric has " + std::to_string(metric.n) + " states but model has " +
                             std::to_string(model.ambient_n));
  Workspace ws;
  ws.model = std::move(model);
  ws.poly = lipschitz_vertices(metric);
  ws.ball = build_ball(ws.poly);
  ws.lattice = face_lattice(ws.ball);
  ws.polar = polar_degrees(ws.model.shape);

  ws.lipschitz_vx.reserve(ws.poly.vertices.size());
  for (const auto& v : ws.poly.vertices) ws.lipschitz_vx.push_back(quotient_to_doubles(v));
  ws.facet_normals.reserve(ws.ball.facet_normals.size());
  for (const auto& v : ws.ball.facet_normals) ws.facet_normals.push_back(quotient_to_doubles(v));
  ws.ball_vx.reserve(ws.ball.vertices.size());
  for (const auto& v : ws.ball.vertices) ws.ball_vx.push_back(to_doubles(v));
  return ws;
}

ProjectionResult project_global(const Workspace& ws, const std::vector<double>& mu,
                                const ProjectOptions& opts) {
  if (static_cast<int>(mu.size()) != ws.model.ambient_n)
    throw InvalidSizeError("distribution length does not match the model state space");
  const auto& model = ws.model;
  const int g = opts.grid > 0 ? opts.grid : default_grid(model.param_dim);

  auto objective = [&](const std::vector<double>& raw) {
    std::vector<double> theta = raw;
    double viol = feasibilize(model, theta);
    std::vector<double> d = diff_to(mu, phi(model, theta));
    return wasserstein_value(ws.lipschitz_vx, d) + 50.0 * viol;
  };

  // Grid scan: remember the best cell plus a handful of well-separated
  // runner-up cells so refinement can land in every competitive basin.
  struct Seed {
    std::vector<double> theta;
    double value;
  };
  std::vector<Seed> seeds;
  double best_grid = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, std::vector<double>>> grid_hits;
  for_each_grid_point(model, g, [&](const std::vector<double>& theta) {
    std::vector<double> d = diff_to(mu, phi(model, theta));
    double v = wasserstein_value(ws.lipschitz_vx, d);
    best_grid = std::min(best_grid, v);
    grid_hits.emplace_back(v, theta);
  });
  std::sort(grid_hits.begin(), grid_hits.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const double keep_below = best_grid + std::max(0.05 * best_grid, 1e-3);
  const double min_sep = 2.5 / g;
  for (const auto& [v, theta] : grid_hits) {
    if (v > keep_below || seeds.size() >= 8) break;
    bool fresh = true;
    for (const auto& s : seeds)
      if (inf_dist(theta, s.theta) < min_sep) fresh = false;
    if (fresh) seeds.push_back({theta, v});
  }

  std::uint64_t counter = 0;
  for (int s = 0; s < opts.multistarts; ++s)
    seeds.push_back({random_theta(model, opts.seed ^ 0x9e3779b97f4a7c15ull, counter), 0});

  NelderMeadOptions nm;
  nm.initial_step = std::max(0.5 / g, 0.01);
  nm.restarts = 3;
  std::vector<Candidate> cands;
  cands.reserve(seeds.size());
  for (const auto& s : seeds) {
    NelderMeadResult r = nelder_mead(objective, s.theta, nm);
    Candidate c;
    c.theta = std::move(r.x);
    feasibilize(model, c.theta);
    c.nu = phi(model, c.theta);
    c.value = wasserstein_value(ws.lipschitz_vx, diff_to(mu, c.nu));
    cands.push_back(std::move(c));
  }

  // Final polish. Plain simplex descent stalls a few digits short when
  // several discriminators are active at the optimum (the kink of the max),
  // which is enough to misclassify the type face. Annealed log-sum-exp
  // smoothing walks through the kink, then an exact pass finishes.
  auto smooth_objective = [&](double temp) {
    return [&, temp](const std::vector<double>& raw) {
      std::vector<double> theta = raw;
      double viol = feasibilize(model, theta);
      std::vector<double> d = diff_to(mu, phi(model, theta));
      double peak = 0;
      for (const auto& vx : ws.lipschitz_vx) {
        double s = 0;
        for (std::size_t i = 0; i < d.size(); ++i) s += vx[i] * d[i];
        peak = std::max(peak, s);
      }
      double acc = 0;
      for (const auto& vx : ws.lipschitz_vx) {
        double s = 0;
        for (std::size_t i = 0; i < d.size(); ++i) s += vx[i] * d[i];
        acc += std::exp((s - peak) / temp);
      }
      return peak + temp * std::log(acc) + 50.0 * viol;
    };
  };
  auto polish_candidate = [&](Candidate& c) {
    NelderMeadOptions polish;
    polish.restarts = 1;
    polish.ftol = 1e-16;
    polish.xtol = 1e-13;
    polish.max_iter = 5000;
    std::vector<double> theta = c.theta;
    for (double temp : {1e-3, 1e-4, 1e-5, 1e-6}) {
      polish.initial_step = 20 * temp;
      theta = nelder_mead(smooth_objective(temp), std::move(theta), polish).x;
    }
    polish.initial_step = 2e-6;
    polish.restarts = 3;
    theta = nelder_mead(objective, std::move(theta), polish).x;
    feasibilize(model, theta);
    std::vector<double> nu = phi(model, theta);
    double v = wasserstein_value(ws.lipschitz_vx, diff_to(mu, nu));
    if (v <= c.value) {
      c.theta = std::move(theta);
      c.nu = std::move(nu);
      c.value = v;
    }
  };

  // Polish the leader and every separated near-tie: the tie decision below
  // must compare fully converged values, or one basin of a genuine tie can
  // come up a few digits short and be dropped.
  std::vector<Candidate*> order;
  for (auto& c : cands) order.push_back(&c);
  std::sort(order.begin(), order.end(),
            [](const Candidate* a, const Candidate* b) { return a->value < b->value; });
  const double polish_below = order.front()->value + std::max(100 * opts.tie_value_tol, 1e-4);
  std::vector<Candidate*> polished;
  for (Candidate* c : order) {
    if (c->value > polish_below) break;
    bool dup = false;
    for (const Candidate* p : polished)
      if (inf_dist(c->theta, p->theta) < opts.tie_separation) dup = true;
    if (dup) continue;
    polish_candidate(*c);
    polished.push_back(c);
  }

  Candidate* best = &cands.front();
  for (auto& c : cands)
    if (c.value < best->value) best = &c;

  ProjectionResult res;
  res.theta_star = best->theta;
  res.nu_star = best->nu;
  res.value = best->value;
  collect_ties(cands, res, opts);
  classify_type(ws, mu, res, opts.face_tol);
  return res;
}

ConeMembership cone_membership(const std::vector<std::vector<double>>& generators,
                               const std::vector<double>& w) {
  NnlsResult fit = nnls(generators, w);
  double norm = 0;
  for (double x : w) norm += x * x;
  norm = std::sqrt(norm);
  ConeMembership out;
  out.lambdas = std::move(fit.lambda);
  out.residual = fit.residual;
  out.feasible = fit.residual <= 1e-8 * (1.0 + norm);
  return out;
}

ProjectionResult project_by_facets(const Workspace& ws, const std::vector<double>& mu,
                                   const ProjectOptions& opts) {
  if (static_cast<int>(mu.size()) != ws.model.ambient_n)
    throw InvalidSizeError("distribution length does not match the model state space");
  const auto& model = ws.model;
  const std::size_t nf = ws.ball.facet_count();

  std::vector<Candidate> cands;
  int feasible = 0;
  std::vector<char> facet_ok(nf, 0);

  for (std::size_t fidx = 0; fidx < nf; ++fidx) {
    const auto& normal = ws.facet_normals[fidx];
    std::vector<std::vector<double>> generators;
    for (int vid : ws.ball.facet_incidence[fidx].to_indices())
      generators.push_back(ws.ball_vx[static_cast<std::size_t>(vid)]);

    double rho = 0;  // captured by the objective; updated along the schedule
    auto objective = [&](const std::vector<double>& raw) {
      std::vector<double> theta = raw;
      double viol = feasibilize(model, theta);
      std::vector<double> delta = diff_to(phi(model, theta), mu);
      double lin = 0;
      for (std::size_t i = 0; i < delta.size(); ++i) lin += normal[i] * delta[i];
      double r = nnls(generators, delta).residual;
      return lin + rho * r * r + 50.0 * viol;
    };

    std::vector<std::vector<double>> starts;
    starts.push_back(center_theta(model));
    std::uint64_t counter = 0;
    const std::uint64_t fseed = opts.seed * 0x2545f4914f6cdd1dull + fidx + 1;
    for (int s = 1; s < opts.facet_starts; ++s)
      starts.push_back(random_theta(model, fseed, counter));

    NelderMeadOptions nm;
    nm.initial_step = 0.15;
    nm.restarts = 1;
    nm.max_iter = 1200;

    Candidate best_c;
    double best_score = std::numeric_limits<double>::infinity();
    for (auto theta : starts) {
      for (double r : {1e2, 1e4, 1e6, 1e8}) {
        rho = r;
        theta = nelder_mead(objective, std::move(theta), nm).x;
      }
      feasibilize(model, theta);
      std::vector<double> nu = phi(model, theta);
      std::vector<double> delta = diff_to(nu, mu);
      double res_norm = nnls(generators, delta).residual;
      double dn = 0;
      for (double x : delta) dn += x * x;
      bool ok = res_norm <= 1e-6 * (1.0 + std::sqrt(dn));
      double lin = 0;
      for (std::size_t i = 0; i < delta.size(); ++i) lin += normal[i] * delta[i];
      // prefer feasible endpoints, then smaller objective
      double score = (ok ? 0.0 : 1e6) + lin + 1e4 * res_norm;
      if (score < best_score) {
        best_score = score;
        best_c.theta = std::move(theta);
        best_c.nu = std::move(nu);
        best_c.value = wasserstein_value(ws.lipschitz_vx, diff_to(mu, best_c.nu));
        facet_ok[fidx] = ok ? 1 : 0;
      }
    }
    if (facet_ok[fidx]) ++feasible;
    if (facet_ok[fidx]) cands.push_back(std::move(best_c));
  }

  ProjectionResult res;
  res.feasible_facet_count = feasible;
  if (cands.empty()) {
    // degenerate numerics: fall back to the global solver so callers still
    // get a usable projection
    ProjectionResult g = project_global(ws, mu, opts);
    g.feasible_facet_count = feasible;
    return g;
  }
  const Candidate* best = &cands.front();
  for (const auto& c : cands)
    if (c.value < best->value) best = &c;
  res.theta_star = best->theta;
  res.nu_star = best->nu;
  res.value = best->value;
  collect_ties(cands, res, opts);
  classify_type(ws, mu, res, opts.face_tol);
  return res;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("WIM_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hc, 1u, 8u));
}

ExperimentReport experiment(const Workspace& ws, int samples, std::uint64_t seed, int threads,
                            const ProjectOptions& opts) {
  if (samples <= 0) throw InvalidSizeError("experiment needs a positive sample count");
  auto mus = sample_simplex(ws.model.ambient_n, samples, seed);

  ExperimentReport rep;
  rep.rows.resize(static_cast<std::size_t>(samples));
  const int nthreads = resolve_threads(threads);

  auto worker = [&](int tid) {
    for (int s = tid; s < samples; s += nthreads) {
      ProjectOptions local = opts;
      local.seed = seed * 0x100000001b3ull + static_cast<std::uint64_t>(s) + 1;
      ProjectionResult facets = project_by_facets(ws, mus[static_cast<std::size_t>(s)], local);
      ProjectionResult global = project_global(ws, mus[static_cast<std::size_t>(s)], local);
      const ProjectionResult& pick = global.value <= facets.value ? global : facets;
      ExperimentReport::Row row;
      row.sample_id = s;
      row.value = pick.value;
      row.type_dim = pick.type_dim;
      row.feasible_facets = facets.feasible_facet_count;
      row.tie_count = static_cast<int>(std::max(global.ties.size(), facets.ties.size()));
      rep.rows[static_cast<std::size_t>(s)] = row;
    }
  };

  if (nthreads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  const int dims = std::max(ws.model.ambient_n - 1, 1);
  rep.dim_percent.assign(static_cast<std::size_t>(dims), 0.0);
  double fsum = 0;
  for (const auto& row : rep.rows) {
    if (row.type_dim >= 0 && row.type_dim < dims)
      rep.dim_percent[static_cast<std::size_t>(row.type_dim)] += 1.0;
    fsum += row.feasible_facets;
  }
  for (double& p : rep.dim_percent) p *= 100.0 / samples;
  rep.mean_feasible = fsum / samples;
  return rep;
}

}  // namespace wim
