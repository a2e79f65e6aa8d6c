#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hypercx/numerics.hpp"

namespace hypercx {

// Complex reduced form of a rank-n generator family: upper holds the raised
// operators U_L (N x N), lower the lowered ones L_L, and g the diagonal
// metric on the n base directions. The defining equation is
//   U_L L_P^T + U_P L_L^T = g_LP * I.
struct ConnectingOperators {
  int n = 0;
  int N = 0;
  std::vector<CMat> upper;
  std::vector<CMat> lower;
  RVec g;
  std::vector<std::string> log;  // line-delimited JSON construction notes
};

struct SpinMetric {
  CMat eps;      // symmetric N x N, lowers spinor indices
  CMat eps_inv;  // raises them back: eps * eps_inv = I
  std::vector<std::string> log;
};

namespace detail {

inline std::string json_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace detail

// Worst pairwise defect of the defining equation, using the stored metric.
inline double clifford_residual(const ConnectingOperators& ops) {
  double worst = 0.0;
  CMat id = CMat::Identity(ops.N, ops.N);
  for (int a = 0; a < ops.n; ++a)
    for (int b = a; b < ops.n; ++b) {
      CMat m = ops.upper[a] * ops.lower[b].transpose() +
               ops.upper[b] * ops.lower[a].transpose();
      if (a == b) m -= ops.g(a) * id;
      worst = std::max(worst, max_abs(m));
    }
  return worst;
}

// Same contraction with the transposed pairing; the induction preserves it
// alongside the plain equation, and downstream code relies on both.
inline double transposed_clifford_residual(const ConnectingOperators& ops) {
  double worst = 0.0;
  CMat id = CMat::Identity(ops.N, ops.N);
  for (int a = 0; a < ops.n; ++a)
    for (int b = a; b < ops.n; ++b) {
      CMat m = ops.upper[a].transpose() * ops.lower[b] +
               ops.upper[b].transpose() * ops.lower[a];
      if (a == b) m -= ops.g(a) * id;
      worst = std::max(worst, max_abs(m));
    }
  return worst;
}

// Rank-2 seed: one-by-one operators with unit metric.
inline ConnectingOperators build_base() {
  ConnectingOperators ops;
  ops.n = 2;
  ops.N = 1;
  const double r = 1.0 / std::sqrt(2.0);
  CMat u0(1, 1), u1(1, 1), l0(1, 1), l1(1, 1);
  u0 << Complex(r, 0.0);
  u1 << Complex(0.0, r);
  l0 << Complex(r, 0.0);
  l1 << Complex(0.0, -r);
  ops.upper = {u0, u1};
  ops.lower = {l0, l1};
  ops.g = RVec::Ones(2);
  ops.log.push_back("{\"step\":\"base\",\"n\":2,\"N\":1}");
  return ops;
}

namespace detail {

struct ExtendVariant {
  bool transpose_tail;   // transpose the reused operators in the second block
  double tail_sign;      // sign on that block
  double imag_sign;      // sign of i in the first new direction
};

inline ConnectingOperators apply_extend(const ConnectingOperators& ops,
                                        const ExtendVariant& v) {
  const int N = ops.N, M = 2 * N;
  ConnectingOperators out;
  out.n = ops.n + 2;
  out.N = M;
  out.upper.reserve(static_cast<size_t>(out.n));
  out.lower.reserve(static_cast<size_t>(out.n));
  for (int a = 0; a < ops.n; ++a) {
    CMat u = CMat::Zero(M, M), l = CMat::Zero(M, M);
    u.topLeftCorner(N, N) = ops.upper[a];
    l.topLeftCorner(N, N) = ops.lower[a];
    CMat ut = v.transpose_tail ? CMat(ops.lower[a].transpose()) : ops.lower[a];
    CMat lt = v.transpose_tail ? CMat(ops.upper[a].transpose()) : ops.upper[a];
    u.bottomRightCorner(N, N) = v.tail_sign * ut;
    l.bottomRightCorner(N, N) = v.tail_sign * lt;
    out.upper.push_back(std::move(u));
    out.lower.push_back(std::move(l));
  }
  const Complex ih(0.0, 0.5 * v.imag_sign);
  CMat u_im = CMat::Zero(M, M), l_im = CMat::Zero(M, M);
  u_im.topRightCorner(N, N) = ih * CMat::Identity(N, N);
  u_im.bottomLeftCorner(N, N) = -ih * CMat::Identity(N, N);
  l_im = -u_im;
  CMat u_re = CMat::Zero(M, M);
  u_re.topRightCorner(N, N) = 0.5 * CMat::Identity(N, N);
  u_re.bottomLeftCorner(N, N) = 0.5 * CMat::Identity(N, N);
  out.upper.push_back(u_im);
  out.lower.push_back(l_im);
  out.upper.push_back(u_re);
  out.lower.push_back(u_re);

  // The metric is measured from the produced operators, never assumed.
  out.g = RVec::Zero(out.n);
  for (int a = 0; a < out.n; ++a) {
    CMat m = 2.0 * out.upper[a] * out.lower[a].transpose();
    out.g(a) = m.trace().real() / M;
  }
  return out;
}

}  // namespace detail

// One induction step n -> n+2. The block layout admits a handful of
// sign/transpose variations; each candidate is validated against the
// defining equation with its measured metric, and the first one passing
// is kept (the choice lands in the construction log).
inline ConnectingOperators extend(const ConnectingOperators& ops) {
  static constexpr double kGate = 1e-10;
  double best = -1.0;
  int index = 0;
  for (bool tr : {true, false})
    for (double sign : {-1.0, 1.0})
      for (double im : {1.0, -1.0}) {
        detail::ExtendVariant v{tr, sign, im};
        ConnectingOperators cand = detail::apply_extend(ops, v);
        double r = clifford_residual(cand);
        if (r <= kGate) {
          cand.log = ops.log;
          cand.log.push_back(
              "{\"step\":\"extend\",\"n\":" + std::to_string(cand.n) +
              ",\"variant\":" + std::to_string(index) +
              ",\"tail_transposed\":" + (tr ? "true" : "false") +
              ",\"tail_sign\":" + (sign > 0 ? "1" : "-1") +
              ",\"imag_sign\":" + (im > 0 ? "1" : "-1") +
              ",\"residual\":" + detail::json_number(r) + "}");
          return cand;
        }
        if (best < 0.0 || r < best) best = r;
        ++index;
      }
  throw ConstructionError(
      "extend: no block variant satisfies the defining equation (best residual " +
          detail::json_number(best) + ")",
      best);
}

namespace detail {

// Deterministic final change of spinor basis: reverse the order of the
// first half-block. The raw chain pairs spinor index r with N-1-r under
// the bilinear form; this reordering moves the pairing to r <-> r + N/2,
// which is the convention the distinguished spinor (ones at 0 and N/2)
// relies on. A permutation preserves the defining equation and the block
// pattern of every operator.
inline ConnectingOperators align_spinor_basis(ConnectingOperators ops) {
  const int N = ops.N;
  if (N < 4) return ops;
  std::vector<int> p(static_cast<size_t>(N));
  for (int r = 0; r < N; ++r) p[static_cast<size_t>(r)] = r < N / 2 ? N / 2 - 1 - r : r;
  for (int a = 0; a < ops.n; ++a) {
    CMat u = CMat::Zero(N, N), l = CMat::Zero(N, N);
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < N; ++c) {
        u(p[static_cast<size_t>(r)], p[static_cast<size_t>(c)]) = ops.upper[a](r, c);
        l(p[static_cast<size_t>(r)], p[static_cast<size_t>(c)]) = ops.lower[a](r, c);
      }
    // The quarter-turn phase rotates the operator pair so the induced
    // bilinear spinor form comes out real. It cancels inside every
    // upper-lower contraction, so g and the Clifford residual are
    // untouched; the symmetry sign of each pair flips.
    ops.upper[a] = Complex(0.0, 1.0) * u;
    ops.lower[a] = Complex(0.0, -1.0) * l;
  }
  ops.log.push_back("{\"step\":\"align-basis\",\"n\":" + std::to_string(ops.n) +
                    ",\"permutation\":\"reverse-first-half\",\"phase\":\"quarter-turn\"}");
  return ops;
}

}  // namespace detail

// Iterated extension from the rank-2 seed, followed by the deterministic
// basis alignment.
inline ConnectingOperators build(int n) {
  if (n < 2 || n > 16 || n % 2 != 0)
    throw DomainError("build: rank must be even and within [2, 16]");
  ConnectingOperators ops = build_base();
  while (ops.n < n) ops = extend(ops);
  return detail::align_spinor_basis(std::move(ops));
}

// Distinguished unit spinor used to anchor scale and sign conventions:
// ones at coordinates 0 and N/2.
inline CVec canonical_spinor(int N) {
  if (N < 2) throw DomainError("canonical_spinor: need N >= 2");
  CVec x = CVec::Zero(N);
  x(0) = 1.0;
  x(N / 2) = 1.0;
  return x;
}

namespace detail {

// Full 2N x 2N generator [[0, L^T], [U, 0]].
inline CMat full_generator(const ConnectingOperators& ops, int a) {
  const int N = ops.N;
  CMat g = CMat::Zero(2 * N, 2 * N);
  g.topRightCorner(N, N) = ops.lower[a].transpose();
  g.bottomLeftCorner(N, N) = ops.upper[a];
  return g;
}

// Solves C gamma_a = s * gamma_a^T C for all a as one stacked linear system;
// feasible only for small N. Returns the null-space basis.
inline std::vector<CVec> transpose_intertwiners(const std::vector<CMat>& gammas,
                                                double s) {
  const Eigen::Index m = gammas.front().rows();
  CMat stacked = CMat::Zero(static_cast<Eigen::Index>(gammas.size()) * m * m, m * m);
  Eigen::Index row = 0;
  for (const CMat& gam : gammas) {
    // vec(C gamma) = (gamma^T (x) I) vec(C); vec(gamma^T C) = (I (x) gamma^T) vec(C).
    CMat gt = gam.transpose();
    for (Eigen::Index cb = 0; cb < m; ++cb)
      for (Eigen::Index cc = 0; cc < m; ++cc)
        for (Eigen::Index rr = 0; rr < m; ++rr)
          stacked(row + cb * m + rr, cc * m + rr) = gam(cc, cb);
    for (Eigen::Index cb = 0; cb < m; ++cb)
      stacked.block(row + cb * m, cb * m, m, m) -= s * gt;
    row += m * m;
  }
  return null_space(stacked, Tolerance{1e-8, 1e-8});
}

}  // namespace detail

// Symmetric bilinear form on the spinor space, available when n is a
// multiple of 8. Small ranks solve the transpose-intertwiner system
// literally and demand a one-dimensional solution space; larger ranks use
// the product of the antisymmetric full generators, which solves the same
// system in closed form. Both routes end in identical validation gates.
inline SpinMetric compute_spin_metric(const ConnectingOperators& ops) {
  if (ops.n % 8 != 0)
    throw DomainError("compute_spin_metric: rank must be a multiple of 8");
  const int N = ops.N, M = 2 * N;
  std::vector<CMat> gammas;
  gammas.reserve(static_cast<size_t>(ops.n));
  for (int a = 0; a < ops.n; ++a) gammas.push_back(detail::full_generator(ops, a));

  SpinMetric sm;
  CMat c;
  if (M <= 32) {
    auto basis = detail::transpose_intertwiners(gammas, +1.0);
    double sign = 1.0;
    if (basis.size() != 1) {
      basis = detail::transpose_intertwiners(gammas, -1.0);
      sign = -1.0;
      if (basis.size() != 1)
        throw AmbiguityError(
            "compute_spin_metric: transpose intertwiner space is " +
            std::to_string(basis.size()) + "-dimensional for both signs");
    }
    c = Eigen::Map<const CMat>(basis[0].data(), M, M);
    sm.log.push_back("{\"step\":\"spin-metric\",\"method\":\"stacked-null-space\",\"sign\":" +
                     std::string(sign > 0 ? "1" : "-1") + ",\"dim\":1}");
  } else {
    c = CMat::Identity(M, M);
    int used = 0;
    for (const CMat& gam : gammas)
      if (max_abs(CMat(gam + gam.transpose())) <= 1e-12) {
        c = c * gam;
        ++used;
      }
    if (used % 2 != 0)
      throw ConstructionError(
          "compute_spin_metric: odd number of antisymmetric generators");
    sm.log.push_back(
        "{\"step\":\"spin-metric\",\"method\":\"generator-product\",\"factors\":" +
        std::to_string(used) + "}");
  }

  double cnorm = max_abs(c);
  if (cnorm == 0.0) throw ConstructionError("compute_spin_metric: zero intertwiner");
  double inter = 0.0;
  for (const CMat& gam : gammas)
    inter = std::max(inter, max_abs(CMat(c * gam - gam.transpose() * c)));
  if (inter > 1e-10 * cnorm)
    throw ConstructionError("compute_spin_metric: intertwining gate failed", inter);

  CMat sym = 0.5 * (c + c.transpose());
  if (max_abs(sym) <= 1e-10 * cnorm)
    throw WrongResidueError(
        "compute_spin_metric: symmetric part of the intertwiner vanishes");
  c = sym;

  double offd = std::max(max_abs(CMat(c.topRightCorner(N, N))),
                         max_abs(CMat(c.bottomLeftCorner(N, N))));
  if (offd > 1e-10 * cnorm)
    throw ConstructionError("compute_spin_metric: intertwiner is not block diagonal",
                            offd);

  CMat c1 = c.topLeftCorner(N, N), c2 = c.bottomRightCorner(N, N);
  CMat prod = c1 * c2;
  Complex mu = prod.trace() / static_cast<double>(N);
  if (std::abs(mu) <= 1e-12 * cnorm * cnorm)
    throw ConstructionError("compute_spin_metric: singular block product");
  if (max_abs(CMat(prod - mu * CMat::Identity(N, N))) > 1e-10 * std::abs(mu))
    throw ConstructionError("compute_spin_metric: block product is not scalar");
  Complex kappa = std::sqrt(mu);
  sm.eps = c2 / kappa;
  sm.eps_inv = c1 / kappa;

  CVec xc = canonical_spinor(N);
  Complex t = xc.transpose() * sm.eps * xc;
  if (std::abs(t) <= 1e-8)
    throw ConstructionError("compute_spin_metric: canonical spinor is isotropic");
  // Pin the remaining scalar freedom: the distinguished spinor squares to 2.
  // In the aligned operator basis this factor is exactly +1 or -1, so the
  // lowering gate below stays valid; a basis where it comes out with a
  // genuine phase is rejected there.
  sm.eps *= 2.0 / t;
  sm.eps_inv *= t / 2.0;

  double low = 0.0;
  for (int a = 0; a < ops.n; ++a)
    low = std::max(low, max_abs(CMat(sm.eps * ops.upper[a] * sm.eps - ops.lower[a])));
  if (low > 1e-9)
    throw ConstructionError("compute_spin_metric: double lowering gate failed", low);
  double unit = max_abs(CMat(sm.eps * sm.eps_inv - CMat::Identity(N, N)));
  if (unit > 1e-10)
    throw ConstructionError("compute_spin_metric: eps * eps_inv deviates from I", unit);
  sm.log.push_back("{\"step\":\"spin-metric-gates\",\"intertwine\":" +
                   detail::json_number(inter) + ",\"lowering\":" +
                   detail::json_number(low) + ",\"unit\":" + detail::json_number(unit) +
                   "}");
  return sm;
}

// Residual of lowering every upper operator with eps on both sides.
inline double lowering_residual(const ConnectingOperators& ops, const SpinMetric& sm) {
  double worst = 0.0;
  for (int a = 0; a < ops.n; ++a)
    worst = std::max(worst,
                     max_abs(CMat(sm.eps * ops.upper[a] * sm.eps - ops.lower[a])));
  return worst;
}

}  // namespace hypercx
