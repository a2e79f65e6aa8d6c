#include <catch2/catch_amalgamated.hpp>

#include <hypercx/cayley_dickson.hpp>
#include <hypercx/forge.hpp>
#include <hypercx/identities.hpp>

#include <map>

using namespace hypercx;

namespace {

struct ForgeBundle {
  ConnectingOperators ops;
  SpinMetric sm;
  ControllingSpinor th;
  InclusionMap h;
  StructureTable table;
};

// The operator chain is deterministic but not free; build each rank once.
const ForgeBundle& forged(int n) {
  static std::map<int, ForgeBundle> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    ConnectingOperators ops = build(n);
    SpinMetric sm = compute_spin_metric(ops);
    ControllingSpinor th = octonion_spinor(ops, sm);
    InclusionMap h = inclusion_operator(ops.g);
    StructureTable t = structural_constants(ops, th, h);
    it = cache
             .emplace(n, ForgeBundle{std::move(ops), std::move(sm), std::move(th),
                                     std::move(h), std::move(t)})
             .first;
  }
  return it->second;
}

double unit_defect(const StructureTable& t) {
  REQUIRE(t.identity.has_value());
  const CVec& e = *t.identity;
  double worst = 0.0;
  for (int j = 0; j < t.dim; ++j) {
    const CVec b = basis_element(t.dim, j);
    worst = std::max(worst, max_abs_vec(CVec(multiply(t, e, b) - b)));
    worst = std::max(worst, max_abs_vec(CVec(multiply(t, b, e) - b)));
  }
  return worst;
}

// Both alternative laws on every basis triple, no sampling.
double exhaustive_alternativity(const StructureTable& t) {
  double worst = 0.0;
  for (int i = 0; i < t.dim; ++i)
    for (int j = 0; j < t.dim; ++j)
      for (int k = 0; k < t.dim; ++k) {
        const CVec a = basis_element(t.dim, i);
        const CVec b = basis_element(t.dim, j);
        const CVec c = basis_element(t.dim, k);
        CVec assoc = multiply(t, multiply(t, a, b), c) - multiply(t, a, multiply(t, b, c));
        CVec swapped =
            multiply(t, multiply(t, b, a), c) - multiply(t, b, multiply(t, a, c));
        worst = std::max(worst, max_abs_vec(CVec(assoc + swapped)));
        CVec swapped_right =
            multiply(t, multiply(t, a, c), b) - multiply(t, a, multiply(t, c, b));
        worst = std::max(worst, max_abs_vec(CVec(assoc + swapped_right)));
      }
  return worst;
}

double table_diff(const StructureTable& a, const StructureTable& b) {
  REQUIRE(a.dim == b.dim);
  double worst = 0.0;
  for (size_t i = 0; i < a.c.size(); ++i)
    worst = std::max(worst, std::abs(a.c[i] - b.c[i]));
  return worst;
}

}  // namespace

TEST_CASE("inclusion operator takes metric weights to reciprocal square roots",
          "[forge]") {
  RVec g(3);
  g << 1.0, 0.25, -1.0;
  InclusionMap m = inclusion_operator(g);
  REQUIRE(m.h(0) == Complex(1.0, 0.0));
  REQUIRE(m.h(1) == Complex(2.0, 0.0));
  // principal branch: the square root of -1 sits on the positive imaginary axis
  REQUIRE(std::abs(m.h(2) - Complex(0.0, 1.0)) <= 1e-15);

  RVec bad(2);
  bad << 1.0, 0.0;
  REQUIRE_THROWS_AS(inclusion_operator(bad), DegenerateInputError);
}

TEST_CASE("distinguished spinor is pinned to two coordinates with square two",
          "[forge]") {
  const ForgeBundle& fb = forged(8);
  const ControllingSpinor& th = fb.th;
  REQUIRE(th.has_decomposition);
  REQUIRE(th.parts.size() == 1);
  REQUIRE(th.parts[0].alpha == Complex(1.0, 0.0));
  REQUIRE(th.alpha0 == Complex(0.0, 0.0));

  const CVec& x = th.parts[0].x;
  REQUIRE(x.size() == 8);
  for (int r = 0; r < 8; ++r) {
    if (r == 0 || r == 4)
      REQUIRE(std::abs(x(r)) > 0.5);
    else
      REQUIRE(std::abs(x(r)) == 0.0);
  }
  REQUIRE(std::abs(x(0) - x(4)) <= 1e-15);
  const Complex sq = x.transpose() * fb.sm.eps * x;
  REQUIRE(std::abs(sq - 2.0) <= 1e-12);
  REQUIRE((th.theta - CMat(x * x.transpose())).norm() <= 1e-14);

  // ranks off the 8-periodic lattice have no admissible spinor; the gate
  // fires on the operators before any metric data is touched
  ConnectingOperators ops6 = build(6);
  REQUIRE_THROWS_AS(octonion_spinor(ops6, fb.sm), DomainError);
}

TEST_CASE("identity search finds the doubling unit and rejects the zero table",
          "[forge]") {
  StructureTable quat = cayley_dickson_table(2);
  CVec e = find_identity(quat);
  REQUIRE((e - basis_element(4, 0)).norm() <= 1e-12);
  REQUIRE(quat.identity.has_value());

  StructureTable dead = StructureTable::zeros(4);
  REQUIRE_THROWS_AS(find_identity(dead), NoIdentityError);
}

TEST_CASE("rank eight synthesis is real, unital, alternative, and norm-composing",
          "[forge]") {
  const StructureTable& t = forged(8).table;
  REQUIRE((*t.identity - basis_element(8, 1)).norm() <= 1e-12);
  REQUIRE(unit_defect(t) <= 1e-12);
  REQUIRE(exhaustive_alternativity(t) <= 1e-12);
  REQUIRE(max_imag(t) <= 1e-12);
  REQUIRE(std::abs(table_norm(t) - 1.0) <= 1e-12);

  NormalizationReport nr = check_normalization(t);
  REQUIRE(nr.weak.holds);
  REQUIRE(nr.full.holds);
  REQUIRE(nr.full.max_residual <= 1e-9);
  REQUIRE(check_metric_compat(t).holds);
}

TEST_CASE("rank sixteen keeps the weak laws and loses full composition",
          "[forge]") {
  const StructureTable& t = forged(16).table;
  REQUIRE((*t.identity - basis_element(16, 1)).norm() <= 1e-12);
  REQUIRE(unit_defect(t) <= 1e-12);
  REQUIRE(max_imag(t) <= 1e-12);

  REQUIRE(check_weak_alternativity(t).holds);
  REQUIRE(check_flexible(t).holds);
  REQUIRE(check_power_associative(t).holds);
  IdentityReport alt = check_alternative(t);
  REQUIRE_FALSE(alt.holds);
  REQUIRE(alt.max_residual >= 0.5);

  NormalizationReport nr = check_normalization(t);
  REQUIRE(nr.weak.holds);
  REQUIRE(nr.weak.max_residual <= 1e-9);
  REQUIRE_FALSE(nr.full.holds);
  REQUIRE(nr.full.max_residual >= 0.5);

  auto zd = find_zero_divisors(t, 2, 1);
  REQUIRE(zd.size() == 21168);
  const auto& [u, v] = zd.front();
  REQUIRE(multiply(t, u, v).norm() <= 1e-10);
}

TEST_CASE("scaling the spin-tensor is absorbed by unit normalization", "[forge]") {
  const ForgeBundle& fb = forged(8);
  for (double s : {2.0, -3.0}) {
    ControllingSpinor scaled;
    scaled.theta = s * fb.th.theta;
    StructureTable t = structural_constants(fb.ops, scaled, fb.h);
    REQUIRE(table_diff(t, fb.table) <= 1e-12);
  }
}

TEST_CASE("basis spinor shortcut matches the assembled spin-tensor", "[forge]") {
  const ForgeBundle& fb = forged(8);
  StructureTable t = basis_algebra(fb.ops, fb.sm, fb.th.parts[0].x, fb.h);
  REQUIRE(table_diff(t, fb.table) <= 1e-14);
}

TEST_CASE("zero spinor falls back to the pure metric algebra", "[forge]") {
  const ForgeBundle& fb = forged(8);
  StructureTable t = basis_algebra(fb.ops, fb.sm, CVec::Zero(fb.ops.N), fb.h);
  REQUIRE((*t.identity - basis_element(8, 1)).norm() <= 1e-10);
  REQUIRE(unit_defect(t) <= 1e-10);
  REQUIRE(check_weak_alternativity(t).holds);
  REQUIRE(check_flexible(t).holds);
  REQUIRE(check_metric_compat(t).holds);
  // the metric term alone does not reproduce the division pattern
  REQUIRE_FALSE(check_alternative(t).holds);
}

TEST_CASE("decomposed spin-tensor tracks coefficients and closes to one", "[forge]") {
  const ForgeBundle& fb = forged(8);
  const int N = fb.ops.N;

  ControllingSpinor empty = theta_from_decomposition(fb.sm, {});
  REQUIRE(empty.alpha0 == Complex(1.0, 0.0));
  REQUIRE((empty.theta - CMat((2.0 / N) * fb.sm.eps_inv)).norm() <= 1e-14);

  ControllingSpinor single =
      theta_from_decomposition(fb.sm, {{Complex(1.0, 0.0), fb.th.parts[0].x}});
  REQUIRE((single.theta - fb.th.theta).norm() <= 1e-14);
  REQUIRE(std::abs(single.alpha0) <= 1e-15);

  CVec y = CVec::Zero(N);
  y(2) = 1.0;
  ControllingSpinor mix = theta_from_decomposition(
      fb.sm, {{Complex(0.3, 0.0), fb.th.parts[0].x}, {Complex(0.7, 0.0), y}});
  REQUIRE(std::abs(mix.alpha0) <= 1e-12);
  CMat expect = 0.3 * (fb.th.parts[0].x * fb.th.parts[0].x.transpose()) +
                0.7 * (y * y.transpose());
  REQUIRE((mix.theta - expect).norm() <= 1e-14);

  CVec wrong = CVec::Zero(N + 1);
  REQUIRE_THROWS_AS(theta_from_decomposition(fb.sm, {{Complex(1.0, 0.0), wrong}}),
                    ShapeError);
}

TEST_CASE("spin rotations of the basis spinor preserve the algebra class",
          "[forge]") {
  const ForgeBundle& fb = forged(8);
  const int N = fb.ops.N;

  // generator K = u v^T eps - v u^T eps is antisymmetric for the spin metric,
  // so exp(angle K) preserves it; Taylor series is plenty at this angle
  CVec u = CVec::Zero(N), v = CVec::Zero(N);
  u(1) = 1.0;
  v(2) = 1.0;
  CMat K = u * (fb.sm.eps * v).transpose() - v * (fb.sm.eps * u).transpose();
  CMat R = CMat::Identity(N, N);
  CMat term = CMat::Identity(N, N);
  for (int p = 1; p < 24; ++p) {
    term = term * (0.37 * K) / static_cast<double>(p);
    R += term;
  }
  REQUIRE(max_abs(CMat(R.transpose() * fb.sm.eps * R - fb.sm.eps)) <= 1e-12);

  CVec xr = R * fb.th.parts[0].x;
  const Complex sq = xr.transpose() * fb.sm.eps * xr;
  REQUIRE(std::abs(sq - 2.0) <= 1e-9);

  StructureTable t = basis_algebra(fb.ops, fb.sm, xr, fb.h);
  REQUIRE(unit_defect(t) <= 1e-10);
  REQUIRE(max_imag(t) <= 1e-10);
  IdentityReport alt = check_alternative(t);
  REQUIRE(alt.holds);
  REQUIRE(alt.max_residual <= 1e-9);
}

TEST_CASE("contraction is bitwise identical across job counts", "[forge]") {
  const ForgeBundle& fb = forged(8);
  StructureTable serial = structural_constants(fb.ops, fb.th, fb.h, 1);
  StructureTable threaded = structural_constants(fb.ops, fb.th, fb.h, 3);
  for (size_t i = 0; i < serial.c.size(); ++i)
    REQUIRE(serial.c[i] == threaded.c[i]);
}

TEST_CASE("malformed inputs are rejected before contraction", "[forge]") {
  const ForgeBundle& fb = forged(8);

  ControllingSpinor small;
  small.theta = CMat::Zero(4, 4);
  REQUIRE_THROWS_AS(structural_constants(fb.ops, small, fb.h), ShapeError);

  ControllingSpinor skew;
  skew.theta = CMat::Zero(fb.ops.N, fb.ops.N);
  skew.theta(0, 1) = 1.0;
  REQUIRE_THROWS_AS(structural_constants(fb.ops, skew, fb.h), InvalidInputError);

  InclusionMap short_h;
  short_h.h = CVec::Ones(3);
  REQUIRE_THROWS_AS(structural_constants(fb.ops, fb.th, short_h), ShapeError);
}
