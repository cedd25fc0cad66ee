#include "wim/nelder_mead.hpp"

#include <algorithm>
#include <cmath>

namespace wim {

namespace {

NelderMeadResult run_once(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start, double step, double ftol, double xtol,
                          int max_iter) {
  const int d = static_cast<int>(start.size());
  std::vector<std::vector<double>> pts(d + 1, start);
  std::vector<double> vals(d + 1);
  int evals = 0;
  for (int i = 0; i < d; ++i) pts[i + 1][i] += step;
  for (int i = 0; i <= d; ++i) {
    vals[i] = f(pts[i]);
    ++evals;
  }

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  for (int iter = 0; iter < max_iter; ++iter) {
    // order
    std::vector<int> idx(d + 1);
    for (int i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    {
      std::vector<std::vector<double>> p2(d + 1);
      std::vector<double> v2(d + 1);
      for (int i = 0; i <= d; ++i) {
        p2[i] = pts[idx[i]];
        v2[i] = vals[idx[i]];
      }
      pts = std::move(p2);
      vals = std::move(v2);
    }
    double spread = vals[d] - vals[0];
    double width = 0;
    for (int i = 0; i < d; ++i) width = std::max(width, std::abs(pts[d][i] - pts[0][i]));
    if (spread < ftol && width < xtol) break;

    std::vector<double> centroid(d, 0.0);
    for (int i = 0; i < d; ++i) {
      for (int k = 0; k < d; ++k) centroid[k] += pts[i][k];
    }
    for (int k = 0; k < d; ++k) centroid[k] /= d;

    auto blend = [&](double t) {
      std::vector<double> x(d);
      for (int k = 0; k < d; ++k) x[k] = centroid[k] + t * (centroid[k] - pts[d][k]);
      return x;
    };

    auto xr = blend(alpha);
    double fr = f(xr);
    ++evals;
    if (fr < vals[0]) {
      auto xe = blend(gamma);
      double fe = f(xe);
      ++evals;
      if (fe < fr) {
        pts[d] = std::move(xe);
        vals[d] = fe;
      } else {
        pts[d] = std::move(xr);
        vals[d] = fr;
      }
      continue;
    }
    if (fr < vals[d - 1]) {
      pts[d] = std::move(xr);
      vals[d] = fr;
      continue;
    }
    auto xc = blend(fr < vals[d] ? rho : -rho);
    double fc = f(xc);
    ++evals;
    if (fc < std::min(fr, vals[d])) {
      pts[d] = std::move(xc);
      vals[d] = fc;
      continue;
    }
    for (int i = 1; i <= d; ++i) {
      for (int k = 0; k < d; ++k) pts[i][k] = pts[0][k] + sigma * (pts[i][k] - pts[0][k]);
      vals[i] = f(pts[i]);
      ++evals;
    }
  }

  int best = 0;
  for (int i = 1; i <= d; ++i)
    if (vals[i] < vals[best]) best = i;
  return {pts[best], vals[best], evals};
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, const NelderMeadOptions& opts) {
  if (start.empty()) return {start, f(start), 1};
  NelderMeadResult best =
      run_once(f, start, opts.initial_step, opts.ftol, opts.xtol, opts.max_iter);
  double step = opts.initial_step;
  for (int r = 0; r < opts.restarts; ++r) {
    step *= 0.03;
    NelderMeadResult next = run_once(f, best.x, step, opts.ftol, opts.xtol, opts.max_iter);
    next.evaluations += best.evaluations;
    if (next.value <= best.value) best = std::move(next);
  }
  return best;
}

}  // namespace wim
