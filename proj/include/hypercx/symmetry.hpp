#pragma once

#include "hypercx/clifford.hpp"
#include "hypercx/numerics.hpp"
#include "hypercx/parallel.hpp"
#include "hypercx/structure_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace hypercx {

// Spinor factors of the base reflection through the direction r. With r
// scaled to g(r,r) = 2 the base map x -> r g(r,x) - x is an involution, and
// the contracted operators F = sum_a r^a U_a, F' = sum_a r^a L_a satisfy
//
//   g_a r_a F - U_a = F L_a^T F      for every direction a,
//
// so the factors intertwine the base reflection with conjugation on the
// spinor side. They are mutual transpose-inverses: F F'^T = I, by the
// anticommutation identity.
inline std::pair<CMat, CMat> lift_reflection(const ConnectingOperators& ops,
                                             const CVec& direction) {
  if (direction.size() != ops.n)
    throw ShapeError("lift_reflection: direction length does not match rank");
  Complex q = 0.0;
  for (int a = 0; a < ops.n; ++a) q += ops.g(a) * direction(a) * direction(a);
  if (std::abs(q) < 1e-8)
    throw DegenerateInputError("lift_reflection: direction is isotropic",
                               std::abs(q));
  const CVec r = direction * std::sqrt(2.0 / q);

  CMat f_up = CMat::Zero(ops.N, ops.N);
  CMat f_low = CMat::Zero(ops.N, ops.N);
  for (int a = 0; a < ops.n; ++a) {
    f_up += r(a) * ops.upper[a];
    f_low += r(a) * ops.lower[a];
  }

  double residual = 0.0;
  for (int a = 0; a < ops.n; ++a) {
    const Complex r_low = ops.g(a) * r(a);
    residual = std::max(
        residual, max_abs(CMat(r_low * f_up - ops.upper[a] -
                               f_up * ops.lower[a].transpose() * f_up)));
  }
  if (!(residual <= 1e-9))
    throw ConstructionError("lift_reflection: intertwining relation failed",
                            residual);
  return {std::move(f_up), std::move(f_low)};
}

// Spinor generator induced by an antisymmetric base rotation parameter,
// one half of the raised parameter contracted with an upper and a
// transposed lower operator. Linear in T.
inline CMat induced_infinitesimal(const ConnectingOperators& ops, const CMat& T) {
  if (T.rows() != ops.n || T.cols() != ops.n)
    throw ShapeError("induced_infinitesimal: parameter is not rank x rank");
  if (max_abs(CMat(T + T.transpose())) > 1e-12 * std::max(1.0, max_abs(T)))
    throw InvalidInputError("induced_infinitesimal: parameter is not antisymmetric");
  CMat out = CMat::Zero(ops.N, ops.N);
  for (int th = 0; th < ops.n; ++th)
    for (int ph = 0; ph < ops.n; ++ph) {
      if (T(th, ph) == 0.0) continue;
      out += (0.5 * T(th, ph)) * (ops.upper[ph] * ops.lower[th].transpose());
    }
  return out;
}

// Commutator of two raised antisymmetric parameters with the metric
// lowering one index between the factors. Oriented so the induced map is a
// Lie-algebra homomorphism: [hat T1, hat T2] = hat of this bracket.
inline CMat base_commutator(const RVec& g, const CMat& t1, const CMat& t2) {
  if (t1.rows() != g.size() || t1.cols() != g.size() || t2.rows() != g.size() ||
      t2.cols() != g.size())
    throw ShapeError("base_commutator: parameter does not match metric length");
  CMat gd = CMat::Zero(g.size(), g.size());
  for (int i = 0; i < g.size(); ++i) gd(i, i) = g(i);
  return t2 * gd * t1 - t1 * gd * t2;
}

// Dimension of the space of matrices D obeying the product rule
// D(x y) = D(x) y + x D(y) on all basis pairs. Real tables give the real
// count (the assembled system is then real), complex tables the complex one.
inline Eigen::Index derivation_dimension(const StructureTable& t,
                                         const Tolerance& tol = {},
                                         int jobs = 1) {
  if (!t.identity)
    throw InvalidInputError("derivation_dimension: table has no identity element");
  const int n = t.dim;
  CMat a = CMat::Zero(static_cast<Eigen::Index>(n) * n * n,
                      static_cast<Eigen::Index>(n) * n);
  parallel_for(n, jobs, [&](std::ptrdiff_t ii) {
    const int i = static_cast<int>(ii);
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) {
        const Eigen::Index row =
            (static_cast<Eigen::Index>(i) * n + j) * n + m;
        for (int k = 0; k < n; ++k) a(row, m * n + k) += t.at(i, j, k);
        for (int p = 0; p < n; ++p) {
          a(row, p * n + i) -= t.at(p, j, m);
          a(row, p * n + j) -= t.at(i, p, m);
        }
      }
  });
  return null_space_dimension(a, tol);
}

namespace detail {

inline std::vector<std::pair<int, int>> antisymmetric_pairs(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  return pairs;
}

}  // namespace detail

// Dimension of the antisymmetric parameters T whose base action kills
// e_base (when given) and whose induced spinor action leaves theta alone
// through hat T theta + theta hat T^T = 0 (when theta is given). Either
// constraint may be dropped by passing an empty argument; with both empty
// this is just the count n(n-1)/2.
inline Eigen::Index stabilizer_dimension(const ConnectingOperators& ops,
                                         const SpinMetric& sm, const CMat& theta,
                                         const CVec& e_base,
                                         const Tolerance& tol = {},
                                         int jobs = 1) {
  const bool use_theta = theta.size() != 0;
  const bool use_base = e_base.size() != 0;
  if (use_theta && (theta.rows() != ops.N || theta.cols() != ops.N))
    throw ShapeError("stabilizer_dimension: theta size does not match operators");
  if (use_base && e_base.size() != ops.n)
    throw ShapeError("stabilizer_dimension: base vector length does not match rank");
  if (sm.eps.rows() != ops.N)
    throw ShapeError("stabilizer_dimension: spin metric does not match operators");

  const auto pairs = detail::antisymmetric_pairs(ops.n);
  const Eigen::Index cols = static_cast<Eigen::Index>(pairs.size());
  if (!use_theta && !use_base) return cols;

  const Eigen::Index base_rows = use_base ? ops.n : 0;
  const Eigen::Index spin_rows =
      use_theta ? static_cast<Eigen::Index>(ops.N) * ops.N : 0;
  CMat a = CMat::Zero(base_rows + spin_rows, cols);
  parallel_for(cols, jobs, [&](std::ptrdiff_t pc) {
    const auto [pa, pb] = pairs[static_cast<size_t>(pc)];
    if (use_base) {
      a(pa, pc) = ops.g(pb) * e_base(pb);
      a(pb, pc) = -ops.g(pa) * e_base(pa);
    }
    if (use_theta) {
      const CMat gen = 0.5 * (ops.upper[pb] * ops.lower[pa].transpose() -
                              ops.upper[pa] * ops.lower[pb].transpose());
      const CMat cond = gen * theta + theta * gen.transpose();
      for (int rr = 0; rr < ops.N; ++rr)
        for (int cc = 0; cc < ops.N; ++cc)
          a(base_rows + static_cast<Eigen::Index>(rr) * ops.N + cc, pc) =
              cond(rr, cc);
    }
  });
  // A spin-tensor every generator preserves (the raised metric, say) leaves
  // only roundoff in the assembled system; the largest singular value is
  // then noise and the relative cutoff would hallucinate rank. Measure the
  // system against the scale of its inputs instead.
  double natural = 1.0;
  if (use_theta) natural = std::max(natural, max_abs(theta));
  if (use_base) natural = std::max(natural, max_abs_vec(e_base));
  if (max_abs(a) <= 1e-10 * natural) return cols;
  return null_space_dimension(a, tol);
}

struct ThetaClass {
  CVec eigenvalues;  // spectrum of theta with one slot lowered, sorted
  std::vector<std::pair<Complex, int>> clusters;
  int significant = 0;
  std::string label;
};

namespace detail {

inline std::string format_eigenvalue(const Complex& z) {
  char buf[64];
  if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real()))) {
    std::snprintf(buf, sizeof(buf), "%.6g", z.real());
    return buf;
  }
  std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

}  // namespace detail

// Eigenvalue classification of the controlling spin-tensor: the invariant
// content is the spectrum of theta with its second slot lowered by the spin
// metric, clustered at a relative tolerance. Conjugating theta and the
// metric by the same reflection factors leaves the multiset fixed.
inline ThetaClass classify_theta(const SpinMetric& sm, const CMat& theta,
                                 double tolerance = 1e-8) {
  if (theta.rows() != theta.cols() || theta.rows() != sm.eps.rows())
    throw ShapeError("classify_theta: theta size does not match the metric");
  ThetaClass out;
  out.eigenvalues = eigenvalues(CMat(theta * sm.eps));
  std::vector<Complex> ev(out.eigenvalues.data(),
                          out.eigenvalues.data() + out.eigenvalues.size());
  std::sort(ev.begin(), ev.end(), [](const Complex& x, const Complex& y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
  });
  for (size_t i = 0; i < ev.size(); ++i) out.eigenvalues(static_cast<int>(i)) = ev[i];

  double scale = ev.empty() ? 0.0 : std::abs(ev.front());
  const double cut = tolerance * scale;
  for (const Complex& z : ev) {
    if (std::abs(z) > cut) ++out.significant;
    bool merged = false;
    for (auto& [rep, count] : out.clusters)
      if (std::abs(z - rep) <= cut) {
        ++count;
        merged = true;
        break;
      }
    if (!merged) out.clusters.emplace_back(z, 1);
  }
  for (size_t i = 0; i < out.clusters.size(); ++i) {
    if (i) out.label += ", ";
    out.label += detail::format_eigenvalue(out.clusters[i].first) + " x" +
                 std::to_string(out.clusters[i].second);
  }
  return out;
}

struct SymmetryReport {
  int so_dim = 0;
  Eigen::Index derivation_dim = -1;
  Eigen::Index stabilizer_dim = -1;
  CVec theta_eigenvalues;
  std::string class_label;
};

// One-stop summary for a synthesized table and the spin-tensor behind it.
inline SymmetryReport symmetry_report(const ConnectingOperators& ops,
                                      const SpinMetric& sm, const CMat& theta,
                                      const StructureTable& t,
                                      const Tolerance& tol = {}, int jobs = 1) {
  SymmetryReport rep;
  rep.so_dim = ops.n * (ops.n - 1) / 2;
  rep.derivation_dim = derivation_dimension(t, tol, jobs);
  if (!t.identity)
    throw InvalidInputError("symmetry_report: table has no identity element");
  rep.stabilizer_dim =
      stabilizer_dimension(ops, sm, theta, *t.identity, tol, jobs);
  ThetaClass tc = classify_theta(sm, theta);
  rep.theta_eigenvalues = tc.eigenvalues;
  rep.class_label = tc.label;
  return rep;
}

}  // namespace hypercx
