#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypercx/numerics.hpp"

namespace hypercx {

// Multiplication table of a finite-dimensional algebra over the basis
// {e_0, ..., e_{dim-1}}: e_i * e_j = sum_k c[i][j][k] e_k, together with the
// diagonal bilinear metric g and (once located) the unit element's coordinates.
struct StructureTable {
  int dim = 0;
  std::vector<Complex> c;  // dim^3 constants, index (i*dim + j)*dim + k
  RVec g;                  // diagonal metric entries, length dim
  std::optional<CVec> identity;

  // Provenance carried into the interchange document.
  std::string source;
  std::vector<std::pair<std::string, double>> params;

  Complex& at(int i, int j, int k) {
    return c[(static_cast<size_t>(i) * dim + j) * dim + k];
  }
  const Complex& at(int i, int j, int k) const {
    return c[(static_cast<size_t>(i) * dim + j) * dim + k];
  }

  static StructureTable zeros(int dim) {
    if (dim < 1) throw DomainError("StructureTable: dim must be >= 1");
    StructureTable t;
    t.dim = dim;
    t.c.assign(static_cast<size_t>(dim) * dim * dim, Complex(0, 0));
    t.g = RVec::Ones(dim);
    return t;
  }
};

inline double table_norm(const StructureTable& t) {
  double m = 0.0;
  for (const auto& z : t.c) m = std::max(m, std::abs(z));
  return m;
}

inline double max_imag(const StructureTable& t) {
  double m = 0.0;
  for (const auto& z : t.c) m = std::max(m, std::abs(z.imag()));
  return m;
}

inline bool is_real_table(const StructureTable& t, double tol = 1e-9) {
  return max_imag(t) <= tol;
}

inline CVec basis_element(int dim, int i) {
  if (i < 0 || i >= dim) throw DomainError("basis_element: index out of range");
  CVec v = CVec::Zero(dim);
  v(i) = 1.0;
  return v;
}

// Bilinear extension of the table: (xy)^k = sum_{ij} x^i y^j c[i][j][k].
inline CVec multiply(const StructureTable& t, const CVec& x, const CVec& y) {
  if (x.size() != t.dim || y.size() != t.dim)
    throw ShapeError("multiply: element length does not match table dim");
  CVec out = CVec::Zero(t.dim);
  for (int i = 0; i < t.dim; ++i) {
    if (x(i) == Complex(0, 0)) continue;
    for (int j = 0; j < t.dim; ++j) {
      const Complex xy = x(i) * y(j);
      if (xy == Complex(0, 0)) continue;
      for (int k = 0; k < t.dim; ++k) out(k) += xy * t.at(i, j, k);
    }
  }
  return out;
}

// Symmetric bilinear form of the stored diagonal metric (no conjugation).
inline Complex bilinear_g(const StructureTable& t, const CVec& x, const CVec& y) {
  if (x.size() != t.dim || y.size() != t.dim)
    throw ShapeError("bilinear_g: element length does not match table dim");
  Complex s = 0.0;
  for (int i = 0; i < t.dim; ++i) s += t.g(i) * x(i) * y(i);
  return s;
}

// x-bar = 2<x,e>e - x: the unit component survives, the rest is negated.
inline CVec conjugate(const StructureTable& t, const CVec& x) {
  if (!t.identity)
    throw InvalidInputError("conjugate: table has no identity element");
  const CVec& e = *t.identity;
  const Complex ee = bilinear_g(t, e, e);
  if (std::abs(ee) < 1e-12)
    throw DegenerateInputError("conjugate: unit has vanishing metric norm");
  const Complex coeff = 2.0 * bilinear_g(t, x, e) / ee;
  return coeff * e - x;
}

// e-coefficient of (x y-bar + y x-bar)/2. The remainder must be scalar along e.
inline Complex inner(const StructureTable& t, const CVec& x, const CVec& y,
                     const Tolerance& tol = {}) {
  if (!t.identity) throw InvalidInputError("inner: table has no identity element");
  const CVec& e = *t.identity;
  const CVec m =
      0.5 * (multiply(t, x, conjugate(t, y)) + multiply(t, y, conjugate(t, x)));
  const Complex ee = bilinear_g(t, e, e);
  const Complex s = bilinear_g(t, m, e) / ee;
  const double off = (m - s * e).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (off > std::max(tol.abs_tol, tol.rel_tol * scale))
    throw MetricInconsistencyError(
        "inner: (x y-bar + y x-bar)/2 is not a multiple of the unit", off);
  return s;
}

}  // namespace hypercx
