#pragma once

#include <cstdint>
#include <vector>

#include "wim/model.hpp"
#include "wim/polar.hpp"
#include "wim/polytope.hpp"
#include "wim/wdist.hpp"

namespace wim {

/// Immutable combinatorial data shared by all solves for one
/// model/metric pair: Lipschitz vertices, ball, face lattice, polar
/// degrees, plus float caches.
struct Workspace {
  ModelSpec model;
  LipschitzPolytope poly;
  WassersteinBall ball;
  FaceLattice lattice;
  PolarDegrees polar;

  std::vector<std::vector<double>> lipschitz_vx;  // canonical reps
  std::vector<std::vector<double>> facet_normals;
  std::vector<std::vector<double>> ball_vx;

  static Workspace make(ModelSpec model, const FiniteMetric& metric);
};

struct ProjectOptions {
  int grid = 0;  // per-axis resolution; 0 picks a default from param_dim
  int multistarts = 20;
  std::uint64_t seed = 0;
  double tie_value_tol = 1e-7;
  double tie_separation = 1e-4;
  double face_tol = 1e-7;
  int facet_starts = 6;  // multistarts per facet subproblem
};

struct ProjectionResult {
  std::vector<double> nu_star;
  std::vector<double> theta_star;
  double value = 0;
  int type_dim = -1;      // -1: mu lies on the model (value ~ 0)
  int type_face_id = -1;  // index into workspace lattice
  std::vector<std::vector<double>> ties;  // all tied optimizers, nu_star first
  int feasible_facet_count = -1;  // facet decomposition only
  BigInt degree_bound = 0;
};

/// Grid scan plus simplex-method refinement of
/// min_theta max_x <mu - phi(theta), x>.
ProjectionResult project_global(const Workspace& ws, const std::vector<double>& mu,
                                const ProjectOptions& opts = {});

/// Per-facet penalized decomposition: for each ball facet F minimize
/// ell_F(phi(theta) - mu) subject to phi(theta) - mu in cone(F), then keep
/// the candidate with smallest Wasserstein distance.
ProjectionResult project_by_facets(const Workspace& ws, const std::vector<double>& mu,
                                   const ProjectOptions& opts = {});

struct ConeMembership {
  bool feasible = false;
  std::vector<double> lambdas;
  double residual = 0;
};

/// Nonnegative fit w ~ sum lambda_v * v; feasible iff the residual is
/// below 1e-8 * (1 + |w|).
ConeMembership cone_membership(const std::vector<std::vector<double>>& generators,
                               const std::vector<double>& w);

struct ExperimentReport {
  struct Row {
    int sample_id = 0;
    double value = 0;
    int type_dim = -1;
    int feasible_facets = 0;
    int tie_count = 0;
  };
  std::vector<Row> rows;
  std::vector<double> dim_percent;  // histogram over type dims, in percent
  double mean_feasible = 0;
};

/// Batch experiment over uniform simplex samples; deterministic for a
/// fixed seed regardless of thread count.
ExperimentReport experiment(const Workspace& ws, int samples, std::uint64_t seed, int threads = 0,
                            const ProjectOptions& opts = {});

/// Worker count: explicit argument, else WIM_THREADS, else hardware.
int resolve_threads(int requested);

}  // namespace wim
