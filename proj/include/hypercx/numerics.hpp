#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

#include "hypercx/errors.hpp"

namespace hypercx {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

struct Tolerance {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
};

inline bool all_finite(const CMat& a) { return a.allFinite(); }

// Largest absolute entry; zero-sized matrices have norm 0.
inline double max_abs(const CMat& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_abs_vec(const CVec& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

inline CMat matmul(const CMat& a, const CMat& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul: inner dimensions disagree (" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + ")");
  return a * b;
}

// Orthonormal basis of the numerical kernel {x : ||a x|| <= tol * ||a|| * ||x||},
// via a rank-revealing singular value decomposition. Singular values at or
// below abs_tol * sigma_max are treated as zero (scale-invariant rank policy).
inline std::vector<CVec> null_space(const CMat& a, const Tolerance& tol = {}) {
  if (a.rows() < 1 || a.cols() < 1) throw ShapeError("null_space: empty matrix");
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  const double cut = tol.abs_tol * smax;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  std::vector<CVec> basis;
  basis.reserve(static_cast<size_t>(a.cols() - rank));
  for (Eigen::Index j = rank; j < a.cols(); ++j) basis.push_back(svd.matrixV().col(j));
  return basis;
}

inline Eigen::Index null_space_dimension(const CMat& a, const Tolerance& tol = {}) {
  return static_cast<Eigen::Index>(null_space(a, tol).size());
}

struct EigenSystem {
  CVec values;
  CMat vectors;  // column j pairs with values(j)
};

// Dense spectrum of a square matrix (sizes used here stay <= 256).
inline CVec eigenvalues(const CMat& a) {
  if (a.rows() != a.cols()) throw ShapeError("eigenvalues: matrix not square");
  Eigen::ComplexEigenSolver<CMat> es(a, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw ConstructionError("eigenvalues: solver failed");
  return es.eigenvalues();
}

inline EigenSystem eigen_pairs(const CMat& a) {
  if (a.rows() != a.cols()) throw ShapeError("eigen_pairs: matrix not square");
  Eigen::ComplexEigenSolver<CMat> es(a, /*computeEigenvectors=*/true);
  if (es.info() != Eigen::Success) throw ConstructionError("eigen_pairs: solver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Least-squares solve min ||a x - b||_2 through a rank-revealing QR.
inline CVec least_squares(const CMat& a, const CVec& b) {
  if (a.rows() != b.rows()) throw ShapeError("least_squares: row counts disagree");
  return a.colPivHouseholderQr().solve(b);
}

}  // namespace hypercx
