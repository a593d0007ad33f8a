#pragma once

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polarconv/errors.hpp"
#include "polarconv/numeric.hpp"

namespace polarconv {

// Discretized function on a weighted grid: u_i with quadrature weights mu_i,
// measured in the weighted p-norm ( sum_i mu_i |u_i|^p )^(1/p).
struct GridFunction {
  std::vector<double> values;
  std::vector<double> weights;
  double p = 2.0;

  GridFunction() = default;
  GridFunction(std::vector<double> v, std::vector<double> w, double p_in)
      : values(std::move(v)), weights(std::move(w)), p(p_in) {
    validate();
  }

  // Uniform weights 2*pi/G, the discretization of (0, 2*pi) used by the
  // oscillation demos.
  static GridFunction on_circle_grid(std::vector<double> v, double p_in) {
    std::size_t g = v.size();
    std::vector<double> w(g, 2.0 * M_PI / static_cast<double>(g));
    return GridFunction(std::move(v), std::move(w), p_in);
  }

  std::size_t size() const { return values.size(); }

  void validate() const {
    if (values.size() != weights.size())
      throw RepresentationError("grid function: values/weights length mismatch");
    if (values.empty()) throw DomainError("grid function: empty grid");
    if (!(p > 1.0) || !std::isfinite(p))
      throw DomainError("grid function: exponent must satisfy p > 1");
    for (double w : weights)
      if (!(w > 0.0) || !std::isfinite(w))
        throw DomainError("grid function: weights must be positive and finite");
    for (double v : values)
      if (!std::isfinite(v))
        throw RepresentationError("grid function: non-finite value");
  }

  double norm() const { return weighted_p_norm(values, weights, p); }

  // Compensated weighted p-norm; every sum over mu_i in the library funnels
  // through KahanSum so results do not drift with grid size.
  static double weighted_p_norm(const std::vector<double>& v,
                                const std::vector<double>& w, double p) {
    KahanSum s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s.add(w[i] * std::pow(std::fabs(v[i]), p));
    return std::pow(s.value(), 1.0 / p);
  }

  // Compensated weighted pairing sum_i mu_i a_i b_i.
  static double weighted_pairing(const std::vector<double>& a,
                                 const std::vector<double>& b,
                                 const std::vector<double>& w) {
    KahanSum s;
    for (std::size_t i = 0; i < a.size(); ++i) s.add(w[i] * a[i] * b[i]);
    return s.value();
  }

  // CSV round-trip, rows "index,weight,value" with %.17g so values survive
  // the trip bit-exactly.
  std::string to_csv() const {
    std::string out = "index,weight,value\n";
    char buf[128];
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, weights[i], values[i]);
      out += buf;
    }
    return out;
  }

  static GridFunction from_csv(std::istream& in, double p_in) {
    std::vector<double> v, w;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.rfind("index", 0) == 0) continue; // header
      std::istringstream row(line);
      std::string cell;
      if (!std::getline(row, cell, ',')) throw ConfigError("grid csv: bad row");
      if (!std::getline(row, cell, ',')) throw ConfigError("grid csv: bad row");
      double wi = std::strtod(cell.c_str(), nullptr);
      if (!std::getline(row, cell, ',')) throw ConfigError("grid csv: bad row");
      double vi = std::strtod(cell.c_str(), nullptr);
      w.push_back(wi);
      v.push_back(vi);
    }
    return GridFunction(std::move(v), std::move(w), p_in);
  }

  static GridFunction from_csv_string(const std::string& s, double p_in) {
    std::istringstream in(s);
    return from_csv(in, p_in);
  }
};

} // namespace polarconv
