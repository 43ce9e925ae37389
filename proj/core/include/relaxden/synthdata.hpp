#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "relaxden/graph.hpp"
#include "relaxden/signal.hpp"

namespace relaxden {

/// Multi-colour QR-style module grid corrupted by Gaussian noise.
struct QrSpec {
  Index modules_h = 20;
  Index modules_w = 20;
  Index upsample = 10;
  double noise_sigma = 0.70710678118654752;  // sqrt(2) * 0.5
  std::uint64_t seed = 1;

  void validate() const;
  Index height() const noexcept { return modules_h * upsample; }
  Index width() const noexcept { return modules_w * upsample; }
};

struct QrData {
  VectorSignal truth;  // entries in {-1, 1}, 3 channels, row-major fine grid
  VectorSignal noisy;
};

/**
 * Three independent uniform +-1 module grids (one per colour channel), each
 * module replicated upsample x upsample times, plus i.i.d. N(0, sigma^2) noise
 * per pixel and channel. Deterministic in the seed; channels and the noise use
 * separate generator streams.
 */
QrData gen_multicolor_qr(const QrSpec& spec);

/// Draw from the von Mises-Fisher density proportional to exp(kappa <mu, x>)
/// on the unit sphere. Throws ParameterError for non-unit mu or kappa <= 0.
Eigen::VectorXd sample_vmf(const Eigen::VectorXd& mu, double kappa, std::mt19937_64& rng);
Eigen::VectorXd sample_vmf(const Eigen::VectorXd& mu, double kappa, std::uint64_t seed);

/// Expected <mu, x> under vMF in three dimensions: coth(kappa) - 1/kappa.
double vmf_mean_resultant_3d(double kappa);

/// Replaces each column of each node by a vMF draw around it, then applies
/// Gram-Schmidt nodewise. Degenerate draws are retried up to 8 times.
MatrixSignal perturb_stiefel(const MatrixSignal& x, double kappa, std::uint64_t seed);

/// Random point on the Stiefel manifold (Gram-Schmidt of a Gaussian matrix).
Eigen::MatrixXd random_stiefel(Index d, Index k, std::mt19937_64& rng);

struct StiefelSignalSpec {
  enum class Profile { piecewise_constant, smooth };

  Index length = 200;
  Index d = 3;
  Index k = 2;
  Profile profile = Profile::piecewise_constant;
  Index segments = 4;         // piecewise-constant blocks
  double smoothness = 3.14159265358979324;  // total rotation angle of the smooth path (radians)
  double kappa = 50.0;        // vMF concentration used by the noisy companion signal
  std::uint64_t seed = 1;

  void validate() const;
};

std::string to_string(StiefelSignalSpec::Profile profile);
StiefelSignalSpec::Profile parse_profile(const std::string& name);

/**
 * Ground-truth V_d(k) signal on a chain.
 *
 * piecewise_constant: `segments` contiguous blocks, each a random Stiefel value.
 * smooth: X_n = R(t_n) X_0 with t_n = n / (N - 1) and R(t) a product of planar
 * rotations whose angles grow linearly in t; the angles sum to `smoothness`.
 */
MatrixSignal gen_stiefel_signal(const StiefelSignalSpec& spec);

}  // namespace relaxden
