#pragma once

// Expected values for the `wim tables` self-check. Each entry pins a
// published quantity the library must reproduce; the experiment rows carry
// statistical tolerances instead of exact matches.

#include <string>
#include <vector>

namespace wim::golden {

struct PolarRow {
  std::string name;                 // model label used in the CSV
  std::vector<int> factors_m;       // per factor: m
  std::vector<int> factors_d;       // per factor: d
  std::vector<long long> nonzero;   // trailing nonzero polar degrees
};

inline const std::vector<PolarRow>& polar_rows() {
  static const std::vector<PolarRow> rows = {
      {"kbit2", {2, 2}, {1, 1}, {2, 2, 2}},
      {"kbit3", {2, 2, 2}, {1, 1, 1}, {6, 12, 12, 4}},
      {"kbit4", {2, 2, 2, 2}, {1, 1, 1, 1}, {24, 72, 96, 64, 24}},
      {"kbit5", {2, 2, 2, 2, 2}, {1, 1, 1, 1, 1}, {120, 480, 840, 800, 440, 128}},
      {"kbit6", {2, 2, 2, 2, 2, 2}, {1, 1, 1, 1, 1, 1}, {720, 3600, 7920, 9840, 7440, 3408, 880}},
      {"kbit7",
       {2, 2, 2, 2, 2, 2, 2},
       {1, 1, 1, 1, 1, 1, 1},
       {5040, 30240, 80640, 124320, 120960, 75936, 30016, 6816}},
      {"2x3", {2, 3}, {1, 1}, {3, 4, 3}},
      {"2x4", {2, 4}, {1, 1}, {4, 6, 4}},
      {"2x5", {2, 5}, {1, 1}, {5, 8, 5}},
      {"2x6", {2, 6}, {1, 1}, {6, 10, 6}},
      {"3x3", {3, 3}, {1, 1}, {6, 12, 12, 6, 3}},
      {"3x4", {3, 4}, {1, 1}, {10, 24, 27, 16, 6}},
      {"3x5", {3, 5}, {1, 1}, {15, 40, 48, 30, 10}},
      {"3x6", {3, 6}, {1, 1}, {21, 60, 75, 48, 15}},
      {"4x4", {4, 4}, {1, 1}, {20, 60, 84, 68, 36, 12, 4}},
      {"4x5", {4, 5}, {1, 1}, {35, 120, 190, 176, 105, 40, 10}},
      {"4x6", {4, 6}, {1, 1}, {56, 210, 360, 360, 228, 90, 20}},
      {"sym6", {2}, {6}, {6, 10}},
      {"sym2x2", {2, 2}, {2, 1}, {4, 6, 4}},
  };
  return rows;
}

struct FvectorRow {
  std::string name;
  std::string metric;        // "discrete", "l0", "l1"
  std::vector<int> sizes;    // metric sizes (factor state counts)
  std::vector<long long> f;  // ball f-vector, ascending dimension
};

inline const std::vector<FvectorRow>& fvector_rows() {
  static const std::vector<FvectorRow> rows = {
      {"2x2x2-l0", "l0", {2, 2, 2}, {24, 192, 652, 1062, 848, 306, 38}},
      {"3x3-l1", "l1", {3, 3}, {24, 216, 960, 2298, 3048, 2172, 736, 82}},
      {"sym6-discrete", "discrete", {7}, {42, 210, 490, 630, 434, 126}},
      {"sym2x2-l1", "l1", {3, 2}, {14, 60, 102, 72, 18}},
  };
  return rows;
}

struct ExperimentRow {
  std::string name;
  std::vector<int> factors_m;
  std::vector<int> factors_d;
  std::string metric;
  std::vector<int> sizes;
  double mean_feasible;          // expected Table value
  double feasible_rel_tol;       // relative tolerance
  std::vector<double> dims_pct;  // expected percentage histogram
  double dims_abs_tol;           // absolute tolerance in points
};

inline const std::vector<ExperimentRow>& experiment_rows() {
  static const std::vector<ExperimentRow> rows = {
      {"2x2-l0", {2, 2}, {1, 1}, "l0", {2, 2}, 5.000, 0.10, {68.6, 31.4, 0.0}, 4.0},
      {"sym3-l1", {2}, {3}, "l1", {4}, 4.000, 0.10, {0.0, 98.3, 1.7}, 2.0},
      {"sym2x2-l1", {2, 2}, {2, 1}, "l1", {3, 2}, 8.604, 0.10, {0.0, 0.0, 67.6, 27.5, 4.9}, 4.0},
  };
  return rows;
}

}  // namespace wim::golden
