#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace polarconv {

// Kahan compensated accumulator. Weighted sums over grids go through this so
// the result is reproducible and accurate independent of grid size.
class KahanSum {
public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double kahan_total(const std::vector<double>& xs) {
  KahanSum k;
  for (double x : xs) k.add(x);
  return k.value();
}

// Golden-section search for a minimum of a unimodal (here: convex) function
// on [lo, hi]. Returns the abscissa of the bracketed minimum.
template <typename F>
double golden_section_min(F&& f, double lo, double hi, double xtol, int max_iter = 200) {
  const double invphi = 0.6180339887498948482;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1; f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2; f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

} // namespace polarconv
