#pragma once

#include <Eigen/Dense>

namespace relaxden {

/// Eigen-decomposition of a symmetric matrix, eigenvalues in descending order.
struct SymEigResult {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // columns, orthonormal
};

/// Absolute asymmetry tolerance, scaled by max(1, max|a_ij|).
inline constexpr double kSymmetryTolerance = 1e-8;

/// Throws ContractViolation when `a` is not square or not symmetric within
/// kSymmetryTolerance.
void require_symmetric(const Eigen::MatrixXd& a, const char* what);

SymEigResult symmetric_eigen(const Eigen::MatrixXd& a);

/// Entrywise clamp to [-1, 1] (projection onto the cube C_d).
Eigen::VectorXd project_box(const Eigen::VectorXd& v);

/// In-place clamp of every entry to [-1, 1].
void project_box_inplace(Eigen::Ref<Eigen::MatrixXd> m);

/// Projection onto the spectral-norm unit ball: singular values clamped to <= 1.
Eigen::MatrixXd project_spectral_ball(const Eigen::MatrixXd& x);

/// Projection onto {B : B >= -I}: eigenvalues clamped to >= -1. The input is
/// symmetrized first; asymmetry beyond tolerance throws ContractViolation.
Eigen::MatrixXd project_shifted_psd(const Eigen::MatrixXd& a);

/// Classical Gram-Schmidt with normalization, column order preserved.
/// Throws DegenerateInputError for (numerically) dependent columns.
Eigen::MatrixXd gram_schmidt(const Eigen::MatrixXd& x);

/// Orthonormal polar factor U V^T of a thin SVD. Throws DegenerateInputError
/// when `y` is rank deficient.
Eigen::MatrixXd polar_factor(const Eigen::MatrixXd& y);

}  // namespace relaxden
