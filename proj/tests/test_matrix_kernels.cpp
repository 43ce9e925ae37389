#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "relaxden/errors.hpp"
#include "relaxden/matrix_kernels.hpp"
#include "test_support.hpp"

using namespace relaxden;
using relaxden::testing::haar_stiefel;
using relaxden::testing::uniform_matrix;

namespace {

Eigen::MatrixXd random_symmetric(Index p, std::mt19937_64& rng, double scale = 2.0) {
  const Eigen::MatrixXd m = uniform_matrix(p, p, rng, -scale, scale);
  return 0.5 * (m + m.transpose());
}

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& a) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

// argmin ||B - A|| over B >= -I by gradient descent on the factorization
// B = -I + C C^T (no projection involved).
Eigen::MatrixXd psd_oracle(const Eigen::MatrixXd& a) {
  const Index p = a.rows();
  const Eigen::MatrixXd target = a + Eigen::MatrixXd::Identity(p, p);
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(p, p) * 1.5;
  const double step = 0.25 / (target.norm() + 4.0);
  for (int it = 0; it < 200'000; ++it) {
    const Eigen::MatrixXd r = c * c.transpose() - target;
    c -= step * 4.0 * r * c;
  }
  return c * c.transpose() - Eigen::MatrixXd::Identity(p, p);
}

// Maximizes <X, Y> over V_3(2) by an Euler-angle grid followed by local
// pattern search; X is the first two columns of Rz(a) Ry(b) Rz(c).
Eigen::MatrixXd stiefel_grid_argmax(const Eigen::MatrixXd& y) {
  auto frame = [](double a, double b, double c) {
    const Eigen::Matrix3d r = (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) *
                               Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
                               Eigen::AngleAxisd(c, Eigen::Vector3d::UnitZ()))
                                  .toRotationMatrix();
    return Eigen::MatrixXd(r.leftCols(2));
  };
  const double pi = std::numbers::pi;
  double best = -1e300, ba = 0, bb = 0, bc = 0;
  constexpr int kSteps = 48;
  for (int i = 0; i < kSteps; ++i)
    for (int j = 0; j <= kSteps / 2; ++j)
      for (int l = 0; l < kSteps; ++l) {
        const double a = 2 * pi * i / kSteps, b = pi * j / (kSteps / 2), c = 2 * pi * l / kSteps;
        const double v = frame(a, b, c).cwiseProduct(y).sum();
        if (v > best) best = v, ba = a, bb = b, bc = c;
      }
  for (double h = 2 * pi / kSteps; h > 1e-10; h *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int dim = 0; dim < 3; ++dim)
        for (double s : {-h, h}) {
          double a = ba, b = bb, c = bc;
          (dim == 0 ? a : dim == 1 ? b : c) += s;
          const double v = frame(a, b, c).cwiseProduct(y).sum();
          if (v > best + 1e-15) best = v, ba = a, bb = b, bc = c, improved = true;
        }
    }
  }
  return frame(ba, bb, bc);
}

}  // namespace

TEST(SymmetricEigen, ReconstructionAndOrthogonality) {
  std::mt19937_64 rng(1);
  for (Index p : {1, 2, 5, 9, 16}) {
    const Eigen::MatrixXd a = random_symmetric(p, rng);
    const auto r = symmetric_eigen(a);
    const Eigen::MatrixXd rebuilt =
        r.eigenvectors * r.eigenvalues.asDiagonal() * r.eigenvectors.transpose();
    EXPECT_LE((a - rebuilt).norm(), 1e-10 * (1.0 + a.norm()));
    EXPECT_LE((r.eigenvectors.transpose() * r.eigenvectors - Eigen::MatrixXd::Identity(p, p)).norm(),
              1e-10);
    for (Index i = 1; i < p; ++i) EXPECT_GE(r.eigenvalues(i - 1), r.eigenvalues(i));
  }
}

TEST(SymmetricEigen, RejectsAsymmetric) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  a(0, 2) = 1e-3;
  EXPECT_THROW(symmetric_eigen(a), ContractViolation);
  EXPECT_THROW(symmetric_eigen(Eigen::MatrixXd::Zero(2, 3)), ContractViolation);
}

TEST(ProjectBox, Examples) {
  EXPECT_EQ(project_box(Eigen::Vector2d(0.5, -0.3)), Eigen::VectorXd(Eigen::Vector2d(0.5, -0.3)));
  EXPECT_EQ(project_box(Eigen::Vector2d(2, -3)), Eigen::VectorXd(Eigen::Vector2d(1, -1)));
  EXPECT_EQ(project_box(Eigen::Vector3d(1, 1, 1)), Eigen::VectorXd(Eigen::Vector3d(1, 1, 1)));
}

TEST(ProjectBox, IdempotentAndNonexpansive) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const Eigen::VectorXd a = uniform_matrix(4, 1, rng, -3, 3);
    const Eigen::VectorXd b = uniform_matrix(4, 1, rng, -3, 3);
    const Eigen::VectorXd pa = project_box(a);
    EXPECT_LE((project_box(pa) - pa).norm(), 1e-12);
    EXPECT_LE((pa - project_box(b)).norm(), (a - b).norm() + 1e-9);
  }
}

TEST(ProjectSpectralBall, Examples) {
  EXPECT_EQ(project_spectral_ball(Eigen::MatrixXd::Zero(3, 2)), Eigen::MatrixXd::Zero(3, 2));
  std::mt19937_64 rng(3);
  const Eigen::MatrixXd q = haar_stiefel(4, 3, rng);
  EXPECT_LE((project_spectral_ball(q) - q).norm(), 1e-12);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 0.5;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(3, 2);
  expected(0, 0) = 1.0;
  expected(1, 1) = 0.5;
  EXPECT_LE((project_spectral_ball(d) - expected).norm(), 1e-12);
}

TEST(ProjectSpectralBall, IdempotentNonexpansiveAndBounded) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const Eigen::MatrixXd a = uniform_matrix(3, 2, rng, -2, 2);
    const Eigen::MatrixXd b = uniform_matrix(3, 2, rng, -2, 2);
    const Eigen::MatrixXd pa = project_spectral_ball(a);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(pa);
    EXPECT_LE(svd.singularValues()(0), 1.0 + 1e-12);
    EXPECT_LE((project_spectral_ball(pa) - pa).norm(), 1e-9);
    EXPECT_LE((pa - project_spectral_ball(b)).norm(), (a - b).norm() + 1e-9);
  }
}

TEST(ProjectSpectralBall, MatchesSymmetricBlockClamp) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    const Index d = 2 + t % 4, k = 1 + t % std::min<Index>(d, 3);
    const Eigen::MatrixXd x = uniform_matrix(d, k, rng, -2, 2);
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(d + k, d + k);
    block.topRightCorner(d, k) = x;
    block.bottomLeftCorner(k, d) = x.transpose();
    const auto eig = symmetric_eigen(block);
    const Eigen::VectorXd clamped = eig.eigenvalues.cwiseMax(-1.0).cwiseMin(1.0);
    const Eigen::MatrixXd back = eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.transpose();
    EXPECT_LE((back.topRightCorner(d, k) - project_spectral_ball(x)).norm(), 1e-9);
  }
}

TEST(ProjectShiftedPsd, Examples) {
  const Eigen::MatrixXd i4 = Eigen::MatrixXd::Identity(4, 4);
  EXPECT_LE((project_shifted_psd(i4) - i4).norm(), 1e-12);
  EXPECT_LE((project_shifted_psd(-2.0 * i4) + i4).norm(), 1e-12);
}

TEST(ProjectShiftedPsd, MatchesFactorizationOracle) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 5; ++t) {
    const Eigen::MatrixXd a = random_symmetric(5, rng, 3.0);
    const Eigen::MatrixXd p = project_shifted_psd(a);
    const Eigen::MatrixXd oracle = psd_oracle(a);
    EXPECT_LE((a - p).norm(), (a - oracle).norm() + 1e-9);
    EXPECT_LE((p - oracle).norm(), 1e-4);
  }
}

TEST(ProjectShiftedPsd, SatisfiesOptimalityConditions) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const Index p = 1 + t % 9;
    const Eigen::MatrixXd a = random_symmetric(p, rng, 3.0);
    const Eigen::MatrixXd b = project_shifted_psd(a);
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(p, p);
    // B + I >= 0, A - B <= 0, <A - B, B + I> = 0
    EXPECT_GE(sym_eigenvalues(b + id).minCoeff(), -1e-10);
    EXPECT_LE(sym_eigenvalues(a - b).maxCoeff(), 1e-10);
    EXPECT_NEAR((a - b).cwiseProduct(b + id).sum(), 0.0, 1e-9);
  }
}

TEST(ProjectShiftedPsd, IdempotentAndNonexpansive) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const Eigen::MatrixXd a = random_symmetric(5, rng, 3.0);
    const Eigen::MatrixXd b = random_symmetric(5, rng, 3.0);
    const Eigen::MatrixXd pa = project_shifted_psd(a);
    EXPECT_LE((project_shifted_psd(pa) - pa).norm(), 1e-9);
    EXPECT_LE((pa - project_shifted_psd(b)).norm(), (a - b).norm() + 1e-9);
  }
}

TEST(ProjectShiftedPsd, SymmetrizesSmallDriftAndRejectsLarge) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
  a(0, 1) = 1e-10;
  const Eigen::MatrixXd p = project_shifted_psd(a);
  EXPECT_EQ(p, p.transpose());
  a(0, 1) = 1e-4;
  EXPECT_THROW(project_shifted_psd(a), ContractViolation);
}

TEST(GramSchmidt, Examples) {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXd q = haar_stiefel(5, 3, rng);
  EXPECT_LE((gram_schmidt(q) - q).norm(), 1e-12);
  Eigen::MatrixXd x(3, 2);
  x << 2, 1, 0, 1, 0, 0;
  Eigen::MatrixXd expected(3, 2);
  expected << 1, 0, 0, 1, 0, 0;
  EXPECT_LE((gram_schmidt(x) - expected).norm(), 1e-15);
}

TEST(GramSchmidt, OrthonormalWithSameSpan) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 100; ++t) {
    const Eigen::MatrixXd x = uniform_matrix(3, 2, rng);
    const Eigen::MatrixXd q = gram_schmidt(x);
    EXPECT_LE((q.transpose() * q - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-10);
    EXPECT_LE((q.col(0) - x.col(0).normalized()).norm(), 1e-12);
    const Eigen::MatrixXd proj_x = x * (x.transpose() * x).inverse() * x.transpose();
    EXPECT_LE((q * q.transpose() - proj_x).norm(), 1e-9);
  }
}

TEST(GramSchmidt, RankDeficient) {
  Eigen::MatrixXd x(3, 2);
  x << 1, 2, 1, 2, 0, 0;
  EXPECT_THROW(gram_schmidt(x), DegenerateInputError);
  EXPECT_THROW(gram_schmidt(Eigen::MatrixXd::Zero(3, 1)), DegenerateInputError);
}

TEST(PolarFactor, Examples) {
  std::mt19937_64 rng(11);
  const Eigen::MatrixXd q = haar_stiefel(3, 2, rng);
  EXPECT_LE((polar_factor(q) - q).norm(), 1e-12);
  EXPECT_LE((polar_factor(3.0 * q) - q).norm(), 1e-12);
}

TEST(PolarFactor, MatchesRotationalGridSearch) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 5; ++t) {
    const Eigen::MatrixXd y = uniform_matrix(3, 2, rng);
    const Eigen::MatrixXd p = polar_factor(y);
    const Eigen::MatrixXd oracle = stiefel_grid_argmax(y);
    EXPECT_GE(p.cwiseProduct(y).sum(), oracle.cwiseProduct(y).sum() - 1e-12);
    EXPECT_LE((p - oracle).norm(), 1e-5);
  }
}

TEST(PolarFactor, MaximizesOverSpectralBall) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXd y = uniform_matrix(4, 2, rng);
    const double best = polar_factor(y).cwiseProduct(y).sum();
    for (int s = 0; s < 20; ++s) {
      const Eigen::MatrixXd z = project_spectral_ball(uniform_matrix(4, 2, rng, -3, 3));
      EXPECT_LE(z.cwiseProduct(y).sum(), best + 1e-12);
    }
  }
}

TEST(PolarFactor, RankDeficient) {
  Eigen::MatrixXd y(3, 2);
  y << 1, 2, 1, 2, 1, 2;
  EXPECT_THROW(polar_factor(y), DegenerateInputError);
}

TEST(StiefelEncoding, BlockMatrixIsPsdWithRankD) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    const Index d = 2 + t % 4;
    const Index k = 1 + t % std::min<Index>(d, 3);
    const Eigen::MatrixXd x = haar_stiefel(d, k, rng);
    Eigen::MatrixXd v(d + k, d + k);
    v << Eigen::MatrixXd::Identity(d, d), x, x.transpose(), Eigen::MatrixXd::Identity(k, k);
    const Eigen::VectorXd ev = sym_eigenvalues(v);
    EXPECT_GE(ev.minCoeff(), -1e-9);
    EXPECT_EQ((ev.array() > 1e-9).count(), d);
  }
}

TEST(StiefelEncoding, SpectralNormAboveOneBreaksPsd) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 100; ++t) {
    const Index d = 3, k = 2;
    Eigen::MatrixXd x = uniform_matrix(d, k, rng);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    x *= 1.05 / svd.singularValues()(0);
    Eigen::MatrixXd v(d + k, d + k);
    v << Eigen::MatrixXd::Identity(d, d), x, x.transpose(), Eigen::MatrixXd::Identity(k, k);
    EXPECT_LT(sym_eigenvalues(v).minCoeff(), -1e-3);
    // Schur complement I - X^T X fails as well
    EXPECT_LT(sym_eigenvalues(Eigen::MatrixXd::Identity(k, k) - x.transpose() * x).minCoeff(), 0.0);
  }
}
