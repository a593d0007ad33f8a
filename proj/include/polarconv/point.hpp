#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "polarconv/errors.hpp"
#include "polarconv/gridfn.hpp"
#include "polarconv/rational.hpp"

namespace polarconv {

// Finite-dimensional coordinate vector.
struct VecPoint {
  std::vector<double> c;
};

// Reference to a grid function (sequences of discretized functions share the
// underlying storage).
struct GridFnPoint {
  std::shared_ptr<const GridFunction> fn;
};

// Number a + b*sqrt(2) with exact rational components; the point type of the
// Dirichlet-metric line.
struct QuadPoint {
  Rational a;
  Rational b;
  QuadReal value() const { return QuadReal(a, b); }
};

// Subset of grid indices standing for the indicator vector it generates.
struct IndexSetPoint {
  std::vector<int> idx; // strictly increasing
  int dim = 0;          // ambient grid size
};

using PointRepr = std::variant<VecPoint, GridFnPoint, QuadPoint, IndexSetPoint>;

inline PointRepr make_vec(std::vector<double> c) {
  for (double x : c)
    if (!std::isfinite(x)) throw RepresentationError("vector point with non-finite entry");
  return VecPoint{std::move(c)};
}

inline PointRepr make_grid_point(GridFunction fn) {
  fn.validate();
  return GridFnPoint{std::make_shared<const GridFunction>(std::move(fn))};
}

inline PointRepr make_quad(Rational a, Rational b) { return QuadPoint{a, b}; }

inline PointRepr make_index_set(std::vector<int> idx, int dim) {
  if (dim <= 0) throw DomainError("index set: ambient dimension must be positive");
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (int i : idx)
    if (i < 0 || i >= dim) throw RepresentationError("index set: index out of range");
  return IndexSetPoint{std::move(idx), dim};
}

// Coordinates of a point in a vector-like space. IndexSet points materialize
// to 0/1 indicator vectors; grid points expose their sample values.
inline std::vector<double> point_coords(const PointRepr& pt) {
  if (const auto* v = std::get_if<VecPoint>(&pt)) return v->c;
  if (const auto* g = std::get_if<GridFnPoint>(&pt)) return g->fn->values;
  if (const auto* s = std::get_if<IndexSetPoint>(&pt)) {
    std::vector<double> out(static_cast<std::size_t>(s->dim), 0.0);
    for (int i : s->idx) out[static_cast<std::size_t>(i)] = 1.0;
    return out;
  }
  throw RepresentationError("point has no coordinate representation in this space");
}

inline int point_dim(const PointRepr& pt) {
  if (const auto* v = std::get_if<VecPoint>(&pt)) return static_cast<int>(v->c.size());
  if (const auto* g = std::get_if<GridFnPoint>(&pt)) return static_cast<int>(g->fn->size());
  if (const auto* s = std::get_if<IndexSetPoint>(&pt)) return s->dim;
  return 1; // QuadPoint lives on a line
}

inline bool is_quad(const PointRepr& pt) { return std::holds_alternative<QuadPoint>(pt); }

// Exact equality of representations (used by the exact metrics).
inline bool points_identical(const PointRepr& x, const PointRepr& y) {
  if (x.index() != y.index()) {
    // Cross-representation equality only makes sense for coordinate views.
    if (is_quad(x) || is_quad(y)) return false;
    return point_coords(x) == point_coords(y);
  }
  if (const auto* v = std::get_if<VecPoint>(&x))
    return v->c == std::get<VecPoint>(y).c;
  if (const auto* g = std::get_if<GridFnPoint>(&x))
    return g->fn->values == std::get<GridFnPoint>(y).fn->values;
  if (const auto* q = std::get_if<QuadPoint>(&x)) {
    const auto& r = std::get<QuadPoint>(y);
    return q->a == r.a && q->b == r.b;
  }
  const auto& s = std::get<IndexSetPoint>(x);
  const auto& t = std::get<IndexSetPoint>(y);
  return s.dim == t.dim && s.idx == t.idx;
}

inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string format_point(const PointRepr& pt) {
  if (const auto* q = std::get_if<QuadPoint>(&pt))
    return "quad(" + q->a.str() + ", " + q->b.str() + ")";
  if (const auto* s = std::get_if<IndexSetPoint>(&pt)) {
    std::string out = "indices{";
    for (std::size_t i = 0; i < s->idx.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(s->idx[i]);
    }
    out += "}/" + std::to_string(s->dim);
    return out;
  }
  std::vector<double> c = point_coords(pt);
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += format_number(c[i]);
  }
  out += ")";
  return out;
}

} // namespace polarconv
