#include "wim/wdist.hpp"

#include <cmath>

namespace wim {

DistanceCertificate wasserstein(const LipschitzPolytope& poly, const Distribution& mu,
                                const Distribution& nu) {
  const int n = poly.metric.n;
  if (mu.n != n || nu.n != n) throw ShapeMismatchError("distribution size mismatch");
  RatVec diff(n);
  for (int i = 0; i < n; ++i) diff[i] = mu.values[i] - nu.values[i];

  DistanceCertificate cert;
  cert.value = 0;
  bool first = true;
  for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
    Rat s = 0;
    for (int i = 0; i < n; ++i) s += diff[i] * poly.vertices[k].coords[i];
    if (first || s > cert.value) {
      cert.value = s;
      cert.optimizer = static_cast<int>(k);
      first = false;
    }
  }
  for (std::size_t k = 0; k < poly.vertices.size(); ++k) {
    Rat s = 0;
    for (int i = 0; i < n; ++i) s += diff[i] * poly.vertices[k].coords[i];
    if (s == cert.value) cert.active.push_back(static_cast<int>(k));
  }
  return cert;
}

double wasserstein_value(const std::vector<std::vector<double>>& vertices,
                         std::span<const double> diff) {
  double best = 0;
  for (const auto& v : vertices) {
    double s = 0;
    for (std::size_t i = 0; i < diff.size(); ++i) s += diff[i] * v[i];
    if (s > best) best = s;
  }
  return best;
}

namespace {

constexpr double kCaseTol = 1e-12;
constexpr double kTieValueTol = 1e-9;
constexpr double kTieSepTol = 1e-9;

void add_solution(ClosedFormResult& r, double value, std::vector<double> nu, int case_id) {
  if (r.solutions.empty()) {
    r.value = value;
    r.case_id = case_id;
    r.solutions.push_back(std::move(nu));
    return;
  }
  r.boundary = true;
  if (std::abs(value - r.value) > kTieValueTol) return;
  for (const auto& s : r.solutions) {
    double sep = 0;
    for (std::size_t i = 0; i < s.size(); ++i) sep = std::max(sep, std::abs(s[i] - nu[i]));
    if (sep < kTieSepTol) return;  // same point
  }
  r.solutions.push_back(std::move(nu));
}

}  // namespace

ClosedFormResult hardy_weinberg_closed_form(const std::vector<double>& mu) {
  if (mu.size() != 3) throw ShapeMismatchError("mu must lie in the triangle");
  const double m1 = mu[0], m2 = mu[1], m3 = mu[2];
  ClosedFormResult r;
  if (m1 - m3 >= -kCaseTol && m1 >= 0.25 - kCaseTol) {
    double s = std::sqrt(std::max(0.0, m1));
    add_solution(r, std::abs(2 * s - 2 * m1 - m2), {m1, 2 * s - 2 * m1, 1 + m1 - 2 * s}, 1);
  }
  if (m1 - m3 <= kCaseTol && m3 >= 0.25 - kCaseTol) {
    double s = std::sqrt(std::max(0.0, m3));
    add_solution(r, std::abs(2 * s - 2 * m3 - m2), {1 + m3 - 2 * s, 2 * s - 2 * m3, m3}, 2);
  }
  if (m1 <= 0.25 + kCaseTol && m3 <= 0.25 + kCaseTol) {
    add_solution(r, m2 - 0.5, {0.25, 0.5, 0.25}, 3);
  }
  if (r.solutions.empty()) throw GeometryError("no closed-form case applies");
  return r;
}

ClosedFormResult twobit_closed_form(const std::vector<double>& mu) {
  if (mu.size() != 4) throw ShapeMismatchError("mu must lie in the tetrahedron");
  const double m1 = mu[0], m2 = mu[1], m3 = mu[2], m4 = mu[3];
  const double s1 = std::sqrt(std::max(0.0, m1)), s2 = std::sqrt(std::max(0.0, m2));
  const double s3 = std::sqrt(std::max(0.0, m3)), s4 = std::sqrt(std::max(0.0, m4));
  const double det = m1 * m4 - m2 * m3;
  ClosedFormResult r;

  auto ge = [](double a, double b) { return a >= b - kCaseTol; };

  if (ge(m1, m4) && ge(s1, m1 + m2) && ge(s1, m1 + m3))
    add_solution(r, 2 * s1 * (1 - s1) - m2 - m3, {m1, s1 - m1, s1 - m1, -2 * s1 + m1 + 1}, 1);
  if (ge(m2, m3) && ge(s2, m1 + m2) && ge(s2, m2 + m4))
    add_solution(r, 2 * s2 * (1 - s2) - m1 - m4, {s2 - m2, m2, -2 * s2 + m2 + 1, s2 - m2}, 2);
  if (ge(m3, m2) && ge(s3, m1 + m3) && ge(s3, m3 + m4))
    add_solution(r, 2 * s3 * (1 - s3) - m1 - m4, {s3 - m3, -2 * s3 + m3 + 1, m3, s3 - m3}, 3);
  if (ge(m4, m1) && ge(s4, m2 + m4) && ge(s4, m3 + m4))
    add_solution(r, 2 * s4 * (1 - s4) - m2 - m3, {-2 * s4 + m4 + 1, s4 - m4, s4 - m4, m4}, 4);
  if (ge(m1, m4) && ge(m2, m3) && ge(m1 + m2, s1) && ge(m1 + m2, s2))
    add_solution(r, std::abs(det) / (m1 + m2),
                 {m1, m2, m1 * (m3 + m4) / (m1 + m2), m2 * (m3 + m4) / (m1 + m2)}, 5);
  if (ge(m1, m4) && ge(m3, m2) && ge(m1 + m3, s1) && ge(m1 + m3, s3))
    add_solution(r, std::abs(det) / (m1 + m3),
                 {m1, m1 * (m2 + m4) / (m1 + m3), m3, m3 * (m2 + m4) / (m1 + m3)}, 6);
  if (ge(m4, m1) && ge(m2, m3) && ge(m2 + m4, s4) && ge(m2 + m4, s2))
    add_solution(r, std::abs(det) / (m2 + m4),
                 {m2 * (m1 + m3) / (m2 + m4), m2, m4 * (m1 + m3) / (m2 + m4), m4}, 7);
  if (ge(m4, m1) && ge(m3, m2) && ge(m3 + m4, s4) && ge(m3 + m4, s3))
    add_solution(r, std::abs(det) / (m3 + m4),
                 {m3 * (m1 + m2) / (m3 + m4), m4 * (m1 + m2) / (m3 + m4), m3, m4}, 8);

  if (r.solutions.empty()) throw GeometryError("no closed-form case applies");
  return r;
}

}  // namespace wim
