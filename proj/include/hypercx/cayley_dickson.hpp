#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hypercx/structure_table.hpp"

namespace hypercx {

// Doubling of a unital multiplication table. Writing elements of the doubled
// algebra as a + b*i with a, b in the input algebra and i the new unit e_n,
// the product expands as (a + bi)(c + di) = ac + a(di) + (bi)c + (bi)(di) and
// the four terms reduce to
//     a(di)    = (da)i
//     (bi)c    = (b c-bar)i          (left-i factors are canonicalized first)
//     (bi)(di) = -(d-bar) b
// with conjugation (a + bi)-bar = a-bar - bi. Equivalently
//     (a,b)(c,d) = (ac - d-bar b, da + b c-bar).
// Basis order: the coordinates of a followed by the coordinates of b.
namespace detail {

// Conjugation of basis vectors, as a dim x dim coefficient matrix row q ->
// coefficients of (e_q)-bar.
inline CMat conjugation_matrix(const StructureTable& t) {
  CMat k(t.dim, t.dim);
  for (int q = 0; q < t.dim; ++q) k.row(q) = conjugate(t, basis_element(t.dim, q)).transpose();
  return k;
}

// Integer fast path. Cayley-Dickson chains built from the reals keep every
// constant in {-1, 0, +1}; doubling them in integer arithmetic keeps the
// output exact by construction instead of by accident of rounding.
inline bool integer_table(const StructureTable& t, std::vector<int8_t>& out) {
  out.assign(t.c.size(), 0);
  for (size_t idx = 0; idx < t.c.size(); ++idx) {
    const Complex z = t.c[idx];
    const double r = std::round(z.real());
    if (std::abs(z.imag()) > 1e-12 || std::abs(z.real() - r) > 1e-12 ||
        std::abs(r) > 1.5)
      return false;
    out[idx] = static_cast<int8_t>(r);
  }
  if (!t.identity) return false;
  for (int i = 0; i < t.dim; ++i) {
    const Complex z = (*t.identity)(i);
    if (std::abs(z.imag()) > 1e-12 || std::abs(z.real() - (i == 0 ? 1.0 : 0.0)) > 1e-12)
      return false;
    if (std::abs(t.g(i) - 1.0) > 1e-12) return false;
  }
  return true;
}

}  // namespace detail

inline StructureTable doubled(const StructureTable& t) {
  if (!t.identity)
    throw InvalidInputError("doubled: input table lacks an identity element");
  const int n = t.dim;
  const int m = 2 * n;
  StructureTable out = StructureTable::zeros(m);

  std::vector<int8_t> ic;
  if (detail::integer_table(t, ic)) {
    // conj(e_0) = e_0, conj(e_q) = -e_q for q >= 1 in an orthonormal chain.
    auto a = [&](int i, int j, int k) -> int8_t {
      return ic[(static_cast<size_t>(i) * n + j) * n + k];
    };
    std::vector<int8_t> oc(out.c.size(), 0);
    auto w = [&](int i, int j, int k) -> int8_t& {
      return oc[(static_cast<size_t>(i) * m + j) * m + k];
    };
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        const int8_t cs = static_cast<int8_t>(q == 0 ? 1 : -1);
        for (int k = 0; k < n; ++k) {
          if (a(p, q, k)) w(p, q, k) = a(p, q, k);
          if (a(q, p, k)) w(p, n + q, n + k) = a(q, p, k);
          // (0,e_p)(e_q,0) = (0, e_p conj(e_q))
          if (a(p, q, k)) w(n + p, q, n + k) = static_cast<int8_t>(cs * a(p, q, k));
          // (0,e_p)(0,e_q) = (-conj(e_q) e_p, 0)
          if (a(q, p, k)) w(n + p, n + q, k) = static_cast<int8_t>(-cs * a(q, p, k));
        }
      }
    for (size_t idx = 0; idx < oc.size(); ++idx) out.c[idx] = Complex(oc[idx], 0);
  } else {
    const CMat K = detail::conjugation_matrix(t);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        for (int k = 0; k < n; ++k) {
          out.at(p, q, k) += t.at(p, q, k);
          out.at(p, n + q, n + k) += t.at(q, p, k);
          for (int r = 0; r < n; ++r) {
            out.at(n + p, q, n + k) += K(q, r) * t.at(p, r, k);
            out.at(n + p, n + q, k) -= K(q, r) * t.at(r, p, k);
          }
        }
  }

  out.g.head(n) = t.g;
  out.g.tail(n) = t.g;
  CVec e = CVec::Zero(m);
  e.head(n) = *t.identity;
  out.identity = e;
  out.source = t.source;
  out.params = t.params;
  return out;
}

// Levels 0..5 produce dims 1 (reals), 2, 4, 8, 16, 32.
inline StructureTable real_table() {
  StructureTable t = StructureTable::zeros(1);
  t.at(0, 0, 0) = 1.0;
  t.identity = basis_element(t.dim, 0);
  t.source = "cayley-dickson";
  t.params = {{"levels", 0.0}};
  return t;
}

inline StructureTable cayley_dickson_table(int levels) {
  if (levels < 0 || levels > 5)
    throw DomainError("cayley_dickson_table: levels must be in [0, 5]");
  StructureTable t = real_table();
  for (int l = 0; l < levels; ++l) t = doubled(t);
  t.params = {{"levels", static_cast<double>(levels)}};
  return t;
}

}  // namespace hypercx
