#include "relaxden/synthdata.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "relaxden/errors.hpp"
#include "relaxden/matrix_kernels.hpp"

namespace relaxden {

namespace {

std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  return std::mt19937_64(seq);
}

Eigen::VectorXd gaussian_vector(Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = normal(rng);
  return v;
}

// Uniform unit vector orthogonal to the unit vector mu.
Eigen::VectorXd tangent_direction(const Eigen::VectorXd& mu, std::mt19937_64& rng) {
  for (;;) {
    Eigen::VectorXd v = gaussian_vector(mu.size(), rng);
    v -= v.dot(mu) * mu;
    const double norm = v.norm();
    if (norm > 1e-12) return v / norm;
  }
}

// Cosine component <mu, x> of a vMF draw.
double sample_vmf_cosine(Index dim, double kappa, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  if (dim == 3) {
    // Inverse CDF of the density proportional to exp(kappa w) on [-1, 1].
    const double u = 1.0 - uniform(rng);  // (0, 1]
    const double w = 1.0 + std::log(u + (1.0 - u) * std::exp(-2.0 * kappa)) / kappa;
    return std::clamp(w, -1.0, 1.0);
  }
  // Wood (1994) rejection sampler.
  const double m1 = static_cast<double>(dim - 1);
  const double b = m1 / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + m1 * m1));
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + m1 * std::log(1.0 - x0 * x0);
  std::gamma_distribution<double> gamma(0.5 * m1, 1.0);
  for (;;) {
    const double g1 = gamma(rng);
    const double g2 = gamma(rng);
    const double beta = g1 / (g1 + g2);
    const double w = (1.0 - (1.0 + b) * beta) / (1.0 - (1.0 - b) * beta);
    const double u = uniform(rng);
    if (kappa * w + m1 * std::log(1.0 - x0 * w) - c >= std::log(u)) return w;
  }
}

}  // namespace

void QrSpec::validate() const {
  if (modules_h < 1 || modules_w < 1) throw ParameterError("QR module grid must be at least 1x1");
  if (upsample < 1) throw ParameterError("QR upsample factor must be >= 1");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw ParameterError("QR noise sigma must be >= 0, got " + std::to_string(noise_sigma));
  }
}

QrData gen_multicolor_qr(const QrSpec& spec) {
  spec.validate();
  constexpr Index kChannels = 3;
  const Index height = spec.height();
  const Index width = spec.width();
  Eigen::MatrixXd truth(height * width, kChannels);
  Eigen::MatrixXd noisy(height * width, kChannels);
  for (Index ch = 0; ch < kChannels; ++ch) {
    auto module_rng = stream(spec.seed, static_cast<std::uint64_t>(ch), 0);
    std::bernoulli_distribution coin(0.5);
    Eigen::MatrixXd modules(spec.modules_h, spec.modules_w);
    for (Index r = 0; r < spec.modules_h; ++r)
      for (Index c = 0; c < spec.modules_w; ++c) modules(r, c) = coin(module_rng) ? 1.0 : -1.0;

    auto noise_rng = stream(spec.seed, static_cast<std::uint64_t>(ch), 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Index r = 0; r < height; ++r) {
      for (Index c = 0; c < width; ++c) {
        const Index v = r * width + c;
        truth(v, ch) = modules(r / spec.upsample, c / spec.upsample);
        noisy(v, ch) = spec.noise_sigma > 0.0
                           ? truth(v, ch) + spec.noise_sigma * normal(noise_rng)
                           : truth(v, ch);
      }
    }
  }
  return {VectorSignal(std::move(truth)), VectorSignal(std::move(noisy))};
}

Eigen::VectorXd sample_vmf(const Eigen::VectorXd& mu, double kappa, std::mt19937_64& rng) {
  if (mu.size() < 1 || std::abs(mu.norm() - 1.0) > 1e-10) {
    throw ParameterError("sample_vmf: mean direction must be a unit vector");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw ParameterError("sample_vmf: kappa must be positive, got " + std::to_string(kappa));
  }
  if (mu.size() == 1) {
    // S^0 = {-1, 1}: P(+mu) = e^kappa / (e^kappa + e^-kappa).
    std::bernoulli_distribution same(1.0 / (1.0 + std::exp(-2.0 * kappa)));
    return same(rng) ? Eigen::VectorXd(mu) : Eigen::VectorXd(-mu);
  }
  const double w = sample_vmf_cosine(mu.size(), kappa, rng);
  const Eigen::VectorXd v = tangent_direction(mu, rng);
  Eigen::VectorXd x = w * mu + std::sqrt(std::max(0.0, 1.0 - w * w)) * v;
  return x / x.norm();
}

Eigen::VectorXd sample_vmf(const Eigen::VectorXd& mu, double kappa, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_vmf(mu, kappa, rng);
}

double vmf_mean_resultant_3d(double kappa) { return 1.0 / std::tanh(kappa) - 1.0 / kappa; }

MatrixSignal perturb_stiefel(const MatrixSignal& x, double kappa, std::uint64_t seed) {
  constexpr int kMaxAttempts = 8;
  std::mt19937_64 rng(seed);
  std::vector<Eigen::MatrixXd> nodes;
  nodes.reserve(static_cast<std::size_t>(x.size()));
  for (Index n = 0; n < x.size(); ++n) {
    const auto& node = x.node(n);
    const Eigen::MatrixXd gram = node.transpose() * node;
    if ((gram - Eigen::MatrixXd::Identity(x.cols(), x.cols())).cwiseAbs().maxCoeff() > 1e-8) {
      throw ParameterError("perturb_stiefel: node " + std::to_string(n + 1) +
                           " is not on the Stiefel manifold");
    }
    for (int attempt = 1;; ++attempt) {
      Eigen::MatrixXd draw(x.rows(), x.cols());
      for (Index j = 0; j < x.cols(); ++j) draw.col(j) = sample_vmf(node.col(j), kappa, rng);
      try {
        nodes.push_back(gram_schmidt(draw));
        break;
      } catch (const DegenerateInputError&) {
        if (attempt == kMaxAttempts) throw;
      }
    }
  }
  return MatrixSignal(x.rows(), x.cols(), std::move(nodes));
}

Eigen::MatrixXd random_stiefel(Index d, Index k, std::mt19937_64& rng) {
  for (;;) {
    Eigen::MatrixXd g(d, k);
    for (Index j = 0; j < k; ++j) g.col(j) = gaussian_vector(d, rng);
    try {
      return gram_schmidt(g);
    } catch (const DegenerateInputError&) {
      // measure-zero event; draw again
    }
  }
}

void StiefelSignalSpec::validate() const {
  if (length < 1) throw ParameterError("signal length must be >= 1");
  if (d < 1 || k < 1 || k > d) {
    throw ParameterError("need 1 <= k <= d, got d=" + std::to_string(d) + " k=" + std::to_string(k));
  }
  if (segments < 1) throw ParameterError("segments must be >= 1");
  if (!(smoothness >= 0.0) || !std::isfinite(smoothness)) {
    throw ParameterError("smoothness must be >= 0");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw ParameterError("kappa must be positive");
}

std::string to_string(StiefelSignalSpec::Profile profile) {
  return profile == StiefelSignalSpec::Profile::smooth ? "smooth" : "piecewise-constant";
}

StiefelSignalSpec::Profile parse_profile(const std::string& name) {
  if (name == "smooth") return StiefelSignalSpec::Profile::smooth;
  if (name == "piecewise-constant" || name == "piecewise") {
    return StiefelSignalSpec::Profile::piecewise_constant;
  }
  throw ParameterError("unknown profile '" + name + "' (expected smooth or piecewise-constant)");
}

MatrixSignal gen_stiefel_signal(const StiefelSignalSpec& spec) {
  spec.validate();
  auto rng = stream(spec.seed, 0x5717, 0);
  std::vector<Eigen::MatrixXd> nodes;
  nodes.reserve(static_cast<std::size_t>(spec.length));

  if (spec.profile == StiefelSignalSpec::Profile::piecewise_constant) {
    const Index blocks = std::min(spec.segments, spec.length);
    for (Index s = 0; s < blocks; ++s) {
      const Eigen::MatrixXd value = random_stiefel(spec.d, spec.k, rng);
      const Index begin = s * spec.length / blocks;
      const Index end = (s + 1) * spec.length / blocks;
      for (Index n = begin; n < end; ++n) nodes.push_back(value);
    }
    return MatrixSignal(spec.d, spec.k, std::move(nodes));
  }

  const Eigen::MatrixXd base = random_stiefel(spec.d, spec.k, rng);
  // Rotation planes (i, i+1), closed into a cycle when d > 2.
  std::vector<std::pair<Index, Index>> planes;
  for (Index i = 0; i + 1 < spec.d; ++i) planes.emplace_back(i, i + 1);
  if (spec.d > 2) planes.emplace_back(0, spec.d - 1);
  std::uniform_real_distribution<double> weight_dist(0.5, 1.0);
  std::vector<double> weights(planes.size());
  double weight_sum = 0.0;
  for (auto& w : weights) weight_sum += (w = weight_dist(rng));
  for (auto& w : weights) w *= spec.smoothness / weight_sum;

  for (Index n = 0; n < spec.length; ++n) {
    const double t = spec.length > 1 ? static_cast<double>(n) / static_cast<double>(spec.length - 1)
                                     : 0.0;
    Eigen::MatrixXd rotation = Eigen::MatrixXd::Identity(spec.d, spec.d);
    for (std::size_t p = 0; p < planes.size(); ++p) {
      const double angle = weights[p] * t;
      Eigen::MatrixXd givens = Eigen::MatrixXd::Identity(spec.d, spec.d);
      const auto [i, j] = planes[p];
      givens(i, i) = std::cos(angle);
      givens(j, j) = std::cos(angle);
      givens(i, j) = -std::sin(angle);
      givens(j, i) = std::sin(angle);
      rotation = givens * rotation;
    }
    nodes.push_back(rotation * base);
  }
  return MatrixSignal(spec.d, spec.k, std::move(nodes));
}

}  // namespace relaxden
