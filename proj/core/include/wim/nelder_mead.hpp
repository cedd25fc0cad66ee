#pragma once

#include <functional>
#include <vector>

namespace wim {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double ftol = 1e-12;
  double xtol = 1e-10;
  int max_iter = 2000;
  int restarts = 2;  // re-run with shrunk simplex around the incumbent
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0;
  int evaluations = 0;
};

/// Downhill simplex minimization. The objective may be nonsmooth; restarts
/// rebuild the simplex around the incumbent with a smaller step, which is
/// what pulls max-type objectives the last few digits.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, const NelderMeadOptions& opts = {});

}  // namespace wim
