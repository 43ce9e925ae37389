#include "relaxden/matrix_kernels.hpp"

#include <algorithm>
#include <string>

#include "relaxden/errors.hpp"

namespace relaxden {

namespace {

constexpr double kRankTolerance = 1e-10;

}  // namespace

void require_symmetric(const Eigen::MatrixXd& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw ContractViolation(std::string(what) + ": matrix is not square");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw ContractViolation(std::string(what) + ": matrix is not symmetric (max |a - a^T| = " +
                            std::to_string(asym) + ")");
  }
}

SymEigResult symmetric_eigen(const Eigen::MatrixXd& a) {
  require_symmetric(a, "symmetric_eigen");
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("symmetric eigensolver failed to converge");
  }
  // Eigen returns ascending order.
  return {solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
}

Eigen::VectorXd project_box(const Eigen::VectorXd& v) { return v.cwiseMax(-1.0).cwiseMin(1.0); }

void project_box_inplace(Eigen::Ref<Eigen::MatrixXd> m) { m = m.cwiseMax(-1.0).cwiseMin(1.0); }

Eigen::MatrixXd project_spectral_ball(const Eigen::MatrixXd& x) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 1.0) return x;
  return svd.matrixU() * s.cwiseMin(1.0).asDiagonal() * svd.matrixV().transpose();
}

Eigen::MatrixXd project_shifted_psd(const Eigen::MatrixXd& a) {
  require_symmetric(a, "project_shifted_psd");
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("symmetric eigensolver failed to converge");
  }
  const auto& lambda = solver.eigenvalues();
  if (lambda.size() == 0 || lambda(0) >= -1.0) return sym;
  const auto& q = solver.eigenvectors();
  Eigen::MatrixXd out = q * lambda.cwiseMax(-1.0).asDiagonal() * q.transpose();
  return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd gram_schmidt(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd q(x.rows(), x.cols());
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    Eigen::VectorXd v = x.col(j);
    // Two classical passes; the second only removes rounding residue.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd coeffs = q.leftCols(j).transpose() * v;
      v -= q.leftCols(j) * coeffs;
    }
    const double norm = v.norm();
    if (norm <= kRankTolerance * scale) {
      throw DegenerateInputError("gram_schmidt: column " + std::to_string(j + 1) +
                                 " is linearly dependent on the previous ones");
    }
    q.col(j) = v / norm;
  }
  return q;
}

Eigen::MatrixXd polar_factor(const Eigen::MatrixXd& y) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s.size() < y.cols() || s(s.size() - 1) <= kRankTolerance * std::max(1.0, s(0))) {
    throw DegenerateInputError("polar_factor: input is rank deficient");
  }
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace relaxden
