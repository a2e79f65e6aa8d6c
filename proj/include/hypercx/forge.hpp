#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypercx/clifford.hpp"
#include "hypercx/numerics.hpp"
#include "hypercx/parallel.hpp"
#include "hypercx/structure_table.hpp"

namespace hypercx {

// Symmetric spin-tensor that selects which algebra the connecting operators
// synthesize, optionally remembered as a weighted sum of spinor squares plus
// a multiple of the raised spin metric.
struct ControllingSpinor {
  CMat theta;  // N x N, symmetric

  struct Part {
    Complex alpha;
    CVec x;
  };
  std::vector<Part> parts;   // the X_I X_I^T summands, weights alpha_I
  Complex alpha0 = 0.0;      // coefficient of the (2/N) eps_inv remainder
  bool has_decomposition = false;
};

// Diagonal rescaling that carries the operator-indexed directions to an
// orthonormal real basis: entry i multiplies direction i by 1/sqrt(g_ii).
struct InclusionMap {
  CVec h;
};

inline InclusionMap inclusion_operator(const RVec& g) {
  InclusionMap m;
  m.h = CVec(g.size());
  for (int i = 0; i < g.size(); ++i) {
    if (g(i) == 0.0)
      throw DegenerateInputError("inclusion_operator: metric has a zero diagonal entry");
    m.h(i) = std::sqrt(Complex(1.0 / g(i), 0.0));
  }
  return m;
}

inline ControllingSpinor theta_from_decomposition(
    const SpinMetric& sm, const std::vector<std::pair<Complex, CVec>>& parts) {
  const int N = static_cast<int>(sm.eps.rows());
  ControllingSpinor th;
  th.theta = CMat::Zero(N, N);
  Complex total = 0.0;
  for (const auto& [alpha, x] : parts) {
    if (x.size() != N)
      throw ShapeError("theta_from_decomposition: spinor length does not match the metric");
    th.theta += alpha * (x * x.transpose());
    th.parts.push_back({alpha, x});
    total += alpha;
  }
  th.alpha0 = Complex(1.0, 0.0) - total;
  th.theta += th.alpha0 * (2.0 / static_cast<double>(N)) * sm.eps_inv;
  th.has_decomposition = true;
  return th;
}

// Spinor with ones at the two distinguished coordinates (first, and one past
// the half-way point), rescaled so its metric square is exactly 2. Its outer
// product is the spin-tensor whose synthesized algebra is the octonion-pattern
// one at every admissible rank.
inline ControllingSpinor octonion_spinor(const ConnectingOperators& ops,
                                         const SpinMetric& sm) {
  if (ops.n % 8 != 0)
    throw DomainError("octonion_spinor: rank must be a multiple of 8");
  CVec x = CVec::Zero(ops.N);
  x(0) = 1.0;
  x(1 << (ops.n / 2 - 2)) = 1.0;
  const Complex t = x.transpose() * sm.eps * x;
  if (std::abs(t) <= 1e-10)
    throw DegenerateInputError("octonion_spinor: distinguished spinor is isotropic");
  x *= std::sqrt(2.0 / t);
  ControllingSpinor th;
  th.theta = x * x.transpose();
  th.parts.push_back({Complex(1.0, 0.0), x});
  th.alpha0 = 0.0;
  th.has_decomposition = true;
  return th;
}

// Least-squares unit element: solve x * e_j = e_j and e_j * x = e_j for all j
// simultaneously, accept when the worst defect is small against the table's
// own scale, and cache the element on the table.
inline CVec find_identity(StructureTable& t) {
  const int n = t.dim;
  CMat a = CMat::Zero(2 * n * n, n);
  CVec b = CVec::Zero(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const int left = j * n + k;
      const int right = n * n + left;
      for (int i = 0; i < n; ++i) {
        a(left, i) = t.at(i, j, k);
        a(right, i) = t.at(j, i, k);
      }
      if (j == k) {
        b(left) = 1.0;
        b(right) = 1.0;
      }
    }
  CVec e = least_squares(a, b);
  const double residual = max_abs_vec(CVec(a * e - b));
  const double scale = std::max(table_norm(t), 1e-300);
  // negated comparison so a NaN residual (degenerate solve) also rejects
  if (!(residual <= 1e-8 * scale))
    throw NoIdentityError("find_identity: no element acts as a two-sided unit",
                          residual);
  t.identity = e;
  return e;
}

namespace detail {

// Raw triple contraction of the operators against theta, all indices pulled
// back through the diagonal inclusion. No unit normalization yet.
// T[i,j,k] = sum_{AB} upper_i[A,B] * (upper_j^T (eps theta) lower_k)[A,B]:
// theta enters with its first slot lowered by the spin metric, the second
// operator is read in transposed slot order, the third is the lowered one
// with its direction index raised against g. Of the slot-order variants this
// is the one whose synthesized product carries a two-sided unit for both the
// outer-product and the pure-metric spin-tensor (the lowered pure-metric
// term is just (2/N) times the identity).
inline StructureTable contract_raw(const ConnectingOperators& ops,
                                   const SpinMetric& sm, const CMat& theta,
                                   const InclusionMap& h, int jobs = 1) {
  const int n = ops.n;
  const int N = ops.N;
  if (theta.rows() != N || theta.cols() != N)
    throw ShapeError("structural_constants: theta size does not match operators");
  if (h.h.size() != n)
    throw ShapeError("structural_constants: inclusion length does not match rank");
  if (max_abs(CMat(theta - theta.transpose())) > 1e-12 * std::max(1.0, max_abs(theta)))
    throw InvalidInputError("structural_constants: theta is not symmetric");

  StructureTable t = StructureTable::zeros(n);
  const double sqrt2 = std::sqrt(2.0);
  const CMat lowered = sm.eps * theta;
  std::vector<CMat> right(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) right[static_cast<size_t>(k)] = lowered * ops.lower[k];
  auto body = [&](std::ptrdiff_t jj) {
    const int j = static_cast<int>(jj);
    const CMat ut = ops.upper[j].transpose();
    for (int k = 0; k < n; ++k) {
      const CMat mid = ut * right[static_cast<size_t>(k)];
      for (int i = 0; i < n; ++i) {
        Complex s = ops.upper[i].cwiseProduct(mid).sum();
        s *= sqrt2 / ops.g(k);
        t.at(i, j, k) = h.h(i) * h.h(j) * s / h.h(k);
      }
    }
  };
  parallel_for(n, jobs, body);
  t.g = RVec::Ones(n);
  return t;
}

// Divide the table's unit by the principal square root of its own metric
// square, with the sign chosen so the largest-magnitude coordinate of the
// final unit has a positive real part (lowest index on ties). The table is
// scaled by the matching global factor, which keeps the unit exact.
inline Complex unit_normalize(StructureTable& t) {
  CVec e = find_identity(t);
  const Complex ee = bilinear_g(t, e, e);
  if (std::abs(ee) < 1e-12)
    throw SynthesisError("structural_constants: unit element has vanishing metric square",
                         std::abs(ee));
  Complex lambda = std::sqrt(ee);
  CVec ef = e / lambda;
  int pivot = 0;
  double best = -1.0;
  for (int i = 0; i < ef.size(); ++i)
    if (std::abs(ef(i)) > best + 1e-12) {
      best = std::abs(ef(i));
      pivot = i;
    }
  if (ef(pivot).real() < 0.0) {
    lambda = -lambda;
    ef = -ef;
  }
  for (auto& z : t.c) z *= lambda;
  t.identity = ef;
  t.params.emplace_back("lambda_re", lambda.real());
  t.params.emplace_back("lambda_im", lambda.imag());
  return lambda;
}

// Shared synthesis path once the spin metric is in hand.
inline StructureTable synthesize(const ConnectingOperators& ops,
                                 const SpinMetric& sm,
                                 const ControllingSpinor& th,
                                 const InclusionMap& h, int jobs = 1) {
  StructureTable t = detail::contract_raw(ops, sm, th.theta, h, jobs);
  try {
    detail::unit_normalize(t);
  } catch (const NoIdentityError& err) {
    throw SynthesisError(std::string("structural_constants: ") + err.what(),
                         err.residual);
  }
  t.source = "forge";
  t.params.emplace_back("n", static_cast<double>(ops.n));
  t.params.emplace_back("max_imag", max_imag(t));
  return t;
}

}  // namespace detail

inline StructureTable structural_constants(const ConnectingOperators& ops,
                                           const ControllingSpinor& th,
                                           const InclusionMap& h, int jobs = 1) {
  // The contraction needs the spin metric to lower theta's first slot; it is
  // fully determined by the operators, so recover it here.
  SpinMetric sm = compute_spin_metric(ops);
  return detail::synthesize(ops, sm, th, h, jobs);
}

// Table of the algebra indexed by a single basis spinor: the outer-product
// term plus whatever multiple of the raised metric restores the unit when the
// spinor square falls short of 2.
inline StructureTable basis_algebra(const ConnectingOperators& ops,
                                    const SpinMetric& sm, const CVec& x,
                                    const InclusionMap& h, int jobs = 1) {
  if (x.size() != ops.N)
    throw ShapeError("basis_algebra: spinor length does not match operators");
  const Complex sq = x.transpose() * sm.eps * x;
  const Complex coeff =
      (Complex(1.0, 0.0) - 0.5 * sq) * (2.0 / static_cast<double>(ops.N));
  ControllingSpinor th;
  th.theta = x * x.transpose() + coeff * sm.eps_inv;
  return detail::synthesize(ops, sm, th, h, jobs);
}

}  // namespace hypercx
