#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "relaxden/admm.hpp"
#include "relaxden/graph.hpp"
#include "relaxden/signal.hpp"

namespace relaxden {

/// How the rounding threshold eta in C_d is chosen.
struct RoundingConfig {
  enum class Mode { zero, random, fixed };
  Mode mode = Mode::zero;
  std::uint64_t seed = 0;
  Eigen::VectorXd eta;  // used when mode == fixed

  static RoundingConfig zero() { return {}; }
  static RoundingConfig random(std::uint64_t seed) { return {Mode::random, seed, {}}; }
  static RoundingConfig fixed(Eigen::VectorXd eta) { return {Mode::fixed, 0, std::move(eta)}; }
};

struct BinaryDenoiseResult {
  VectorSignal relaxed;   // u-iterate, inside [-1, 1]^d at every node
  VectorSignal rounded;   // entries in {-1, 1}
  Eigen::VectorXd eta_used;
  double dist_to_binary = 0.0;  // mean | |u| - 1 | over entries
  SolverReport report;
};

/**
 * ADMM for min -sum <x_n, y_n> + lambda TV(x) s.t. x_n in [-1, 1]^d.
 *
 *   x <- prox_{TV, lambda/rho}(u - z + y / rho)
 *   u <- clamp(x + z)
 *   z <- z + x - u
 *
 * starting from x = u = z = 0. Stops when ||x - u||_F <= tol_primal and
 * rho ||u_new - u_old||_F <= tol_dual (defaults 1e-8 sqrt(N d)).
 */
BinaryDenoiseResult denoise_binary_tv(const VectorSignal& y, const Graph& g,
                                      const AdmmConfig& cfg,
                                      const RoundingConfig& rounding = RoundingConfig::zero());

/// Entrywise threshold: +1 where x > eta_i, -1 where x <= eta_i.
/// Throws ParameterError unless eta lies in [-1, 1]^d.
VectorSignal threshold_round(const VectorSignal& x, const Eigen::VectorXd& eta);

struct TightnessAudit {
  std::vector<double> sampled_objectives;  // K(round(x, eta)) per sampled eta
  double relaxed_objective = 0.0;
  double min = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double mean_deviation = 0.0;  // mean - relaxed_objective
};

/// Samples `num_eta` uniform thresholds and evaluates the rounded objective.
/// With num_eta == 0 the sample list is empty and min/mean/max are NaN.
TightnessAudit tightness_audit(const VectorSignal& relaxed, const VectorSignal& y, const Graph& g,
                               double lambda, long num_eta, std::uint64_t seed);

}  // namespace relaxden
