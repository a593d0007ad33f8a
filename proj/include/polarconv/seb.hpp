#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "polarconv/errors.hpp"

namespace polarconv {

// Smallest enclosing ball in Euclidean space, solved through its dual:
//   maximize  sum_i l_i |p_i|^2 - |sum_i l_i p_i|^2   over the simplex,
// whose optimum equals the squared radius. Pairwise coordinate ascent moves
// mass from the least violated support point to the farthest point; weak
// duality certifies the reported gap, so "exact" here means a proven
// enclosing radius within `tol` of optimal (far below the 1e-9 contract).
struct SebResult {
  std::vector<double> center;
  double radius = 0.0;
  double gap = 0.0; // primal radius minus certified dual lower bound
  int iterations = 0;
};

inline SebResult seb_euclidean(const std::vector<std::vector<double>>& pts,
                               double tol = 1e-11, int max_iter = 400000) {
  if (pts.empty()) throw DomainError("smallest enclosing ball of an empty set");
  const std::size_t n = pts.size();
  const std::size_t d = pts[0].size();
  for (const auto& p : pts)
    if (p.size() != d) throw DomainError("smallest enclosing ball: ragged points");

  SebResult res;
  if (n == 1) {
    res.center = pts[0];
    return res;
  }

  // Shift by the centroid for conditioning.
  std::vector<double> shift(d, 0.0);
  for (const auto& p : pts)
    for (std::size_t k = 0; k < d; ++k) shift[k] += p[k];
  for (std::size_t k = 0; k < d; ++k) shift[k] /= static_cast<double>(n);
  std::vector<std::vector<double>> q(n, std::vector<double>(d));
  std::vector<double> sq(n);
  double scale2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      q[i][k] = pts[i][k] - shift[k];
      s += q[i][k] * q[i][k];
    }
    sq[i] = s;
    scale2 = std::max(scale2, s);
  }

  auto dot = [&](std::size_t i, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) s += q[i][k] * v[k];
    return s;
  };

  // Gram cache pays off when iterations dominate; skip it for large n.
  const bool cache = n <= 1200;
  std::vector<double> gram;
  if (cache) {
    gram.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < d; ++k) s += q[i][k] * q[j][k];
        gram[i * n + j] = gram[j * n + i] = s;
      }
  }

  std::vector<double> lam(n, 1.0 / static_cast<double>(n));
  std::vector<double> c(d, 0.0); // sum_i l_i q_i
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) c[k] += lam[i] * q[i][k];
  std::vector<double> w(n); // <q_i, c>
  auto refresh = [&]() {
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < d; ++k) c[k] += lam[i] * q[i][k];
    for (std::size_t i = 0; i < n; ++i) w[i] = dot(i, c);
  };
  refresh();
  double lin = 0.0; // sum_i l_i sq_i
  for (std::size_t i = 0; i < n; ++i) lin += lam[i] * sq[i];

  double best_gap = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < max_iter; ++it) {
    // Farthest point (max gradient) and least-pulled support point.
    std::size_t imax = 0, jmin = n;
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double g = sq[i] - 2.0 * w[i];
      if (g > gmax) { gmax = g; imax = i; }
      if (lam[i] > 0.0 && g < gmin) { gmin = g; jmin = i; }
    }
    double c2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) c2 += c[k] * c[k];
    double primal2 = gmax + c2;          // max_i |q_i - c|^2
    double dual2 = lin - c2;             // certified lower bound on R*^2
    double primal = std::sqrt(std::max(primal2, 0.0));
    double dualr = std::sqrt(std::max(dual2, 0.0));
    double gap = primal - dualr;
    best_gap = std::min(best_gap, gap);
    if (gap <= tol) break;
    if (jmin == n || gmax - gmin <= 1e-17 * (1.0 + scale2)) break; // stalled

    double den;
    if (cache) {
      den = gram[imax * n + imax] - 2.0 * gram[imax * n + jmin] + gram[jmin * n + jmin];
    } else {
      den = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        double diff = q[imax][k] - q[jmin][k];
        den += diff * diff;
      }
    }
    if (den <= 0.0) {
      // Coincident points: merge the mass and continue.
      lam[imax] += lam[jmin];
      lam[jmin] = 0.0;
      continue;
    }
    double t = (gmax - gmin) / (2.0 * den);
    if (t <= 0.0) break;
    if (t > lam[jmin]) t = lam[jmin];
    lam[imax] += t;
    lam[jmin] -= t;
    if (lam[jmin] < 1e-300) lam[jmin] = 0.0;
    lin += t * (sq[imax] - sq[jmin]);
    for (std::size_t k = 0; k < d; ++k) c[k] += t * (q[imax][k] - q[jmin][k]);
    if (cache) {
      const double* gi = &gram[imax * n];
      const double* gj = &gram[jmin * n];
      for (std::size_t i = 0; i < n; ++i) w[i] += t * (gi[i] - gj[i]);
    } else {
      for (std::size_t i = 0; i < n; ++i) w[i] = dot(i, c);
    }
    if ((it & 0xfff) == 0xfff) refresh(); // shed accumulated drift
  }

  // Final primal evaluation, straight from the points.
  double r2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      double diff = q[i][k] - c[k];
      s += diff * diff;
    }
    r2 = std::max(r2, s);
  }
  double c2 = 0.0;
  for (std::size_t k = 0; k < d; ++k) c2 += c[k] * c[k];
  double dual2 = lin - c2;

  res.center.resize(d);
  for (std::size_t k = 0; k < d; ++k) res.center[k] = c[k] + shift[k];
  res.radius = std::sqrt(r2);
  res.gap = std::max(0.0, res.radius - std::sqrt(std::max(dual2, 0.0)));
  res.iterations = it;
  return res;
}

} // namespace polarconv
