#pragma once

// Tensor-product Lagrange bases on axis-aligned cells and 3-point Gauss
// rules. Internal to the assembly code.

#include <array>
#include <cmath>
#include <vector>

#include "poro/mesh.hpp"

namespace poro::detail {

struct GaussRule1d {
  std::array<double, 3> x;
  std::array<double, 3> w;
};

/// 3-point Gauss-Legendre on [0, 1]; exact up to degree 5.
inline GaussRule1d gauss3() {
  const double s = 0.5 * std::sqrt(0.6);
  return {{0.5 - s, 0.5, 0.5 + s}, {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0}};
}

/// 1D Lagrange polynomial `i` of degree 1 (nodes 0,1) or 2 (nodes 0,1/2,1).
inline double lagrange(int degree, int i, double x) {
  if (degree == 1) return i == 0 ? 1.0 - x : x;
  switch (i) {
    case 0: return 2.0 * (x - 0.5) * (x - 1.0);
    case 1: return -4.0 * x * (x - 1.0);
    default: return 2.0 * x * (x - 0.5);
  }
}

inline double lagrange_deriv(int degree, int i, double x) {
  if (degree == 1) return i == 0 ? -1.0 : 1.0;
  switch (i) {
    case 0: return 4.0 * x - 3.0;
    case 1: return -8.0 * x + 4.0;
    default: return 4.0 * x - 1.0;
  }
}

struct QuadPoint {
  Point ref{};      // reference coordinates in [0,1]^dim
  double weight{};  // physical weight (includes the Jacobian)
};

/// Volume quadrature, 3 points per axis, for a cell of size h.
inline std::vector<QuadPoint> cell_quadrature(int dim, const Point& h) {
  const auto g = gauss3();
  std::vector<QuadPoint> q;
  double jac = 1.0;
  for (int a = 0; a < dim; ++a) jac *= h[a];
  const int nz = dim == 3 ? 3 : 1;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 3; ++i) {
        QuadPoint p;
        p.ref = {g.x[i], g.x[j], dim == 3 ? g.x[k] : 0.0};
        p.weight = jac * g.w[i] * g.w[j] * (dim == 3 ? g.w[k] : 1.0);
        q.push_back(p);
      }
  return q;
}

/// Facet quadrature on local face `local_face` of a cell of size h.
inline std::vector<QuadPoint> face_quadrature(int dim, const Point& h, int local_face) {
  const auto g = gauss3();
  const int axis = local_face / 2;
  const double fixed = static_cast<double>(local_face % 2);
  std::array<int, 2> free_axes{};
  int nf = 0;
  double jac = 1.0;
  for (int a = 0; a < dim; ++a)
    if (a != axis) {
      free_axes[nf++] = a;
      jac *= h[a];
    }
  std::vector<QuadPoint> q;
  const int n2 = nf == 2 ? 3 : 1;
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < 3; ++i) {
      QuadPoint p;
      p.ref[axis] = fixed;
      p.ref[free_axes[0]] = g.x[i];
      double w = g.w[i];
      if (nf == 2) {
        p.ref[free_axes[1]] = g.x[j];
        w *= g.w[j];
      }
      p.weight = jac * w;
      q.push_back(p);
    }
  return q;
}

/// Values and physical gradients of all tensor-product shape functions of the
/// given degree at one point. Local numbering is lexicographic, x fastest.
struct ShapeTable {
  std::vector<double> value;
  std::vector<Point> grad;
};

inline ShapeTable shape_functions(int dim, int degree, const Point& ref, const Point& h) {
  const int per_axis = degree + 1;
  int n = 1;
  for (int a = 0; a < dim; ++a) n *= per_axis;
  ShapeTable t;
  t.value.resize(static_cast<std::size_t>(n));
  t.grad.assign(static_cast<std::size_t>(n), Point{});
  for (int local = 0; local < n; ++local) {
    std::array<int, 3> idx{};
    int r = local;
    for (int a = 0; a < dim; ++a) {
      idx[a] = r % per_axis;
      r /= per_axis;
    }
    double v = 1.0;
    for (int a = 0; a < dim; ++a) v *= lagrange(degree, idx[a], ref[a]);
    t.value[local] = v;
    for (int g = 0; g < dim; ++g) {
      double d = 1.0;
      for (int a = 0; a < dim; ++a)
        d *= a == g ? lagrange_deriv(degree, idx[a], ref[a]) / h[a] : lagrange(degree, idx[a], ref[a]);
      t.grad[local][g] = d;
    }
  }
  return t;
}

}  // namespace poro::detail
