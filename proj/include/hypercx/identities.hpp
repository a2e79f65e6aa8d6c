#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hypercx/parallel.hpp"
#include "hypercx/structure_table.hpp"

namespace hypercx {

// Seed used by every randomized spot check unless a caller overrides it.
inline constexpr std::uint64_t kDefaultSeed = 123456789ull;

struct IdentityReport {
  std::string identity;
  double max_residual = 0.0;
  std::string witness;
  bool holds = true;
  double tolerance = 0.0;
};

struct SweepOptions {
  double tolerance = 1e-8;
  std::uint64_t seed = kDefaultSeed;
  int random_trials = 1000;
  int jobs = 1;
};

namespace detail {

struct Candidate {
  CVec v;
  std::string label;
};

// Normalized sums of up to max_terms distinct basis vectors, in a fixed
// scan order. The checked laws are quadratic (or cubic) in the swept slot,
// so single basis vectors alone would miss every cross term.
inline std::vector<Candidate> sweep_candidates(int dim, int max_terms) {
  std::vector<Candidate> out;
  for (int i = 0; i < dim; ++i)
    out.push_back({basis_element(dim, i), "e" + std::to_string(i)});
  if (max_terms >= 2) {
    const double s = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) {
        CVec v = s * (basis_element(dim, i) + basis_element(dim, j));
        out.push_back({std::move(v),
                       "(e" + std::to_string(i) + "+e" + std::to_string(j) + ")/sqrt2"});
      }
  }
  if (max_terms >= 3) {
    const double s = 1.0 / std::sqrt(3.0);
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        for (int k = j + 1; k < dim; ++k) {
          CVec v = s * (basis_element(dim, i) + basis_element(dim, j) +
                        basis_element(dim, k));
          out.push_back({std::move(v), "(e" + std::to_string(i) + "+e" +
                                           std::to_string(j) + "+e" +
                                           std::to_string(k) + ")/sqrt3"});
        }
  }
  return out;
}

inline CVec random_real_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CVec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(dist(rng), 0.0);
  double n = v.norm();
  if (n == 0.0) {
    v(0) = 1.0;
    n = 1.0;
  }
  return v / n;
}

// Runs defect(a, b) over the deterministic sweep (a from candidates, b from
// the basis) plus seeded random unit pairs. The reduction is a strict-max
// scan in a fixed order, so the reported witness does not depend on the
// worker count.
template <class Defect>
IdentityReport run_pair_law(const StructureTable& t, const std::string& name,
                            Defect&& defect, const SweepOptions& opt) {
  const auto as = sweep_candidates(t.dim, 2);
  struct Local {
    double residual = -1.0;
    int b = -1;
  };
  std::vector<Local> per_a(as.size());
  parallel_for(static_cast<std::ptrdiff_t>(as.size()), opt.jobs,
               [&](std::ptrdiff_t ia) {
                 Local best;
                 for (int jb = 0; jb < t.dim; ++jb) {
                   double r = max_abs_vec(defect(as[ia].v, basis_element(t.dim, jb)));
                   if (r > best.residual) best = {r, jb};
                 }
                 per_a[static_cast<size_t>(ia)] = best;
               });

  IdentityReport rep;
  rep.identity = name;
  rep.tolerance = opt.tolerance;
  for (size_t ia = 0; ia < as.size(); ++ia) {
    if (per_a[ia].residual > rep.max_residual) {
      rep.max_residual = per_a[ia].residual;
      rep.witness = "a=" + as[ia].label + ", b=e" + std::to_string(per_a[ia].b);
    }
  }

  std::mt19937_64 rng(opt.seed);
  std::vector<std::pair<CVec, CVec>> pairs;
  pairs.reserve(static_cast<size_t>(opt.random_trials));
  for (int trial = 0; trial < opt.random_trials; ++trial)
    pairs.emplace_back(random_real_unit(t.dim, rng), random_real_unit(t.dim, rng));
  std::vector<double> residuals(pairs.size(), 0.0);
  parallel_for(static_cast<std::ptrdiff_t>(pairs.size()), opt.jobs,
               [&](std::ptrdiff_t i) {
                 residuals[static_cast<size_t>(i)] =
                     max_abs_vec(defect(pairs[static_cast<size_t>(i)].first,
                                        pairs[static_cast<size_t>(i)].second));
               });
  for (size_t i = 0; i < residuals.size(); ++i) {
    if (residuals[i] > rep.max_residual) {
      rep.max_residual = residuals[i];
      rep.witness = "random pair #" + std::to_string(i);
    }
  }
  rep.holds = rep.max_residual <= rep.tolerance;
  return rep;
}

}  // namespace detail

// (aa)b - a(ab) - b(aa) + (ba)a over the quadratic sweep and random pairs.
inline IdentityReport check_weak_alternativity(const StructureTable& t,
                                               const SweepOptions& opt = {}) {
  return detail::run_pair_law(
      t, "weak alternativity",
      [&](const CVec& a, const CVec& b) {
        CVec aa = multiply(t, a, a);
        return CVec(multiply(t, aa, b) - multiply(t, a, multiply(t, a, b)) -
                    multiply(t, b, aa) + multiply(t, multiply(t, b, a), a));
      },
      opt);
}

// Left law (aa)b - a(ab) and right law b(aa) - (ba)a, combined residual.
inline IdentityReport check_alternative(const StructureTable& t,
                                        const SweepOptions& opt = {}) {
  return detail::run_pair_law(
      t, "alternativity",
      [&](const CVec& a, const CVec& b) {
        CVec aa = multiply(t, a, a);
        CVec left = multiply(t, aa, b) - multiply(t, a, multiply(t, a, b));
        CVec right = multiply(t, b, aa) - multiply(t, multiply(t, b, a), a);
        return max_abs_vec(left) >= max_abs_vec(right) ? left : right;
      },
      opt);
}

// a(ba) - (ab)a.
inline IdentityReport check_flexible(const StructureTable& t,
                                     const SweepOptions& opt = {}) {
  return detail::run_pair_law(
      t, "flexibility",
      [&](const CVec& a, const CVec& b) {
        return CVec(multiply(t, a, multiply(t, b, a)) -
                    multiply(t, multiply(t, a, b), a));
      },
      opt);
}

// a(aa) - (aa)a; cubic in a, so the sweep adds three-term combinations.
inline IdentityReport check_power_associative(const StructureTable& t,
                                              const SweepOptions& opt = {}) {
  const auto as = detail::sweep_candidates(t.dim, 3);
  IdentityReport rep;
  rep.identity = "power associativity";
  rep.tolerance = opt.tolerance;
  std::vector<double> residuals(as.size(), 0.0);
  parallel_for(static_cast<std::ptrdiff_t>(as.size()), opt.jobs,
               [&](std::ptrdiff_t i) {
                 const CVec& a = as[static_cast<size_t>(i)].v;
                 CVec aa = multiply(t, a, a);
                 residuals[static_cast<size_t>(i)] =
                     max_abs_vec(multiply(t, a, aa) - multiply(t, aa, a));
               });
  for (size_t i = 0; i < as.size(); ++i) {
    if (residuals[i] > rep.max_residual) {
      rep.max_residual = residuals[i];
      rep.witness = "a=" + as[i].label;
    }
  }
  std::mt19937_64 rng(opt.seed);
  for (int trial = 0; trial < opt.random_trials; ++trial) {
    CVec a = detail::random_real_unit(t.dim, rng);
    CVec aa = multiply(t, a, a);
    double r = max_abs_vec(multiply(t, a, aa) - multiply(t, aa, a));
    if (r > rep.max_residual) {
      rep.max_residual = r;
      rep.witness = "random element #" + std::to_string(trial);
    }
  }
  rep.holds = rep.max_residual <= rep.tolerance;
  return rep;
}

struct NormalizationReport {
  IdentityReport weak;
  IdentityReport full;
};

// Quadratic constraints on the structure constants themselves, with the
// diagonal metric g. Writing S[i,j,l,m] = (1/2) sum_k g_k (c_ijk c_lmk +
// c_ljk c_imk) and T[i,j,l,m] for the same contraction with both products
// transposed, the weak law is S = T and the full law is T[i,j,l,m] =
// g_j g_i when j == m and i == l (zero otherwise). The full law is the
// polarized composition property of the Euclidean norm.
inline NormalizationReport check_normalization(const StructureTable& t,
                                               double tolerance = 1e-9,
                                               int jobs = 1) {
  const int n = t.dim;
  NormalizationReport out;
  out.weak.identity = "weak normalization";
  out.full.identity = "full normalization";
  out.weak.tolerance = out.full.tolerance = tolerance;

  struct Local {
    double weak = -1.0, full = -1.0;
    int wj = 0, wl = 0, wm = 0, fj = 0, fl = 0, fm = 0;
  };
  std::vector<Local> per_i(static_cast<size_t>(n));
  parallel_for(n, jobs, [&](std::ptrdiff_t ii) {
    const int i = static_cast<int>(ii);
    Local best;
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int m = 0; m < n; ++m) {
          Complex s = 0.0, tt = 0.0;
          for (int k = 0; k < n; ++k) {
            s += t.g(k) * (t.at(i, j, k) * t.at(l, m, k) + t.at(l, j, k) * t.at(i, m, k));
            tt += t.g(k) * (t.at(j, i, k) * t.at(m, l, k) + t.at(j, l, k) * t.at(m, i, k));
          }
          s *= 0.5;
          tt *= 0.5;
          double wr = std::abs(s - tt);
          Complex target = (j == m && i == l) ? Complex(t.g(j) * t.g(i)) : Complex(0.0);
          double fr = std::abs(tt - target);
          if (wr > best.weak) best.weak = wr, best.wj = j, best.wl = l, best.wm = m;
          if (fr > best.full) best.full = fr, best.fj = j, best.fl = l, best.fm = m;
        }
    per_i[static_cast<size_t>(i)] = best;
  });
  for (int i = 0; i < n; ++i) {
    const Local& b = per_i[static_cast<size_t>(i)];
    if (b.weak > out.weak.max_residual) {
      out.weak.max_residual = b.weak;
      out.weak.witness = "(i,j,l,m)=(" + std::to_string(i) + "," + std::to_string(b.wj) +
                         "," + std::to_string(b.wl) + "," + std::to_string(b.wm) + ")";
    }
    if (b.full > out.full.max_residual) {
      out.full.max_residual = b.full;
      out.full.witness = "(i,j,l,m)=(" + std::to_string(i) + "," + std::to_string(b.fj) +
                         "," + std::to_string(b.fl) + "," + std::to_string(b.fm) + ")";
    }
  }
  out.weak.holds = out.weak.max_residual <= tolerance;
  out.full.holds = out.full.max_residual <= tolerance;
  return out;
}

// Exhaustive scan for products that vanish on candidates supported on at
// most max_support basis directions (e_p and e_p +/- e_q). An empty result
// certifies the absence of zero divisors of that support class only.
inline std::vector<std::pair<CVec, CVec>> find_zero_divisors(const StructureTable& t,
                                                             int max_support,
                                                             int jobs = 1) {
  if (max_support < 1 || max_support > 2)
    throw DomainError("find_zero_divisors: max_support must be 1 or 2");
  std::vector<CVec> candidates;
  for (int p = 0; p < t.dim; ++p) candidates.push_back(basis_element(t.dim, p));
  if (max_support == 2) {
    for (int p = 0; p < t.dim; ++p)
      for (int q = p + 1; q < t.dim; ++q) {
        candidates.push_back(basis_element(t.dim, p) + basis_element(t.dim, q));
        candidates.push_back(basis_element(t.dim, p) - basis_element(t.dim, q));
      }
  }
  const size_t nc = candidates.size();
  std::vector<std::vector<std::pair<CVec, CVec>>> found(nc);
  parallel_for(static_cast<std::ptrdiff_t>(nc), jobs, [&](std::ptrdiff_t iu) {
    const CVec& u = candidates[static_cast<size_t>(iu)];
    for (const CVec& v : candidates) {
      if (u.norm() * v.norm() < 1.0) continue;
      if (multiply(t, u, v).norm() <= 1e-10)
        found[static_cast<size_t>(iu)].emplace_back(u, v);
    }
  });
  std::vector<std::pair<CVec, CVec>> out;
  for (auto& f : found)
    for (auto& p : f) out.push_back(std::move(p));
  return out;
}

// Verifies that (a b~ + b a~)/2 is a multiple of the identity on all basis
// pairs and that the multiple reproduces the stored diagonal metric.
inline IdentityReport check_metric_compat(const StructureTable& t, double tolerance = 1e-9) {
  if (!t.identity) throw InvalidInputError("check_metric_compat: table has no identity");
  IdentityReport rep;
  rep.identity = "metric compatibility";
  rep.tolerance = tolerance;
  const CVec e = *t.identity;
  for (int i = 0; i < t.dim; ++i) {
    CVec bi = basis_element(t.dim, i);
    CVec bic = conjugate(t, bi);
    for (int j = 0; j < t.dim; ++j) {
      CVec bj = basis_element(t.dim, j);
      CVec m = 0.5 * (multiply(t, bi, conjugate(t, bj)) + multiply(t, bj, bic));
      // Decompose m = coeff * e + rest with coeff read off a maximal entry of e.
      int piv = 0;
      for (int k = 1; k < t.dim; ++k)
        if (std::abs(e(k)) > std::abs(e(piv))) piv = k;
      Complex coeff = m(piv) / e(piv);
      double off = max_abs_vec(m - coeff * e);
      Complex stored = (i == j) ? Complex(t.g(i)) : Complex(0.0);
      double dev = std::max(off, std::abs(coeff - stored));
      if (dev > rep.max_residual) {
        rep.max_residual = dev;
        rep.witness = "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
    }
  }
  rep.holds = rep.max_residual <= tolerance;
  return rep;
}

}  // namespace hypercx
