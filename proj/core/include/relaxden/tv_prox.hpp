#pragma once

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "relaxden/graph.hpp"
#include "relaxden/signal.hpp"

namespace relaxden {

struct TvProxConfig {
  double gamma = 1.0;            // prox step; lambda / rho inside the ADMM solvers
  double inner_tol = 1e-10;      // duality-gap target of the iterative graph solvers
  long inner_max_iter = 50'000;
  // Measure the gap relative to max(1, ||z||^2 / 2). Off for standalone calls;
  // the ADMM solvers turn it on so the target stays above round-off on large inputs.
  bool scale_gap = false;

  /// Gap target for input z.
  double gap_target(const Eigen::VectorXd& z) const;

  /// Throws ParameterError on non-positive gamma, tolerance or iteration cap.
  void validate() const;
};

/// Diagnostics of one scalar prox evaluation.
struct TvProxStats {
  long iterations = 0;
  double gap = 0.0;
};

/**
 * Exact 1-D TV denoising: argmin_x 1/2 ||x - z||^2 + gamma * sum |x_{i+1} - x_i|.
 *
 * Direct (taut-string family) algorithm, linear in practice and non-iterative.
 * `in` and `out` may alias.
 */
void tv_prox_chain(std::span<const double> in, std::span<double> out, double gamma);
Eigen::VectorXd tv_prox_chain(const Eigen::VectorXd& z, double gamma);

/// Edge dual certificate of a chain prox: p_i = sum_{j <= i} (z_j - x_j).
Eigen::VectorXd chain_dual_from_primal(const Eigen::VectorXd& z, const Eigen::VectorXd& x);

/// Duality gap sum_e (gamma |(Dx)_e| - p_e (Dx)_e) for a feasible edge dual p,
/// with (Dx)_e = x_n - x_m for e = (n, m).
double tv_duality_gap(const Eigen::VectorXd& x, const Eigen::VectorXd& dual, double gamma,
                      const Graph& g);

/// D^T p: node-wise signed sum of incident edge values.
Eigen::VectorXd edge_divergence(const Eigen::VectorXd& dual, const Graph& g);

/**
 * Scalar graph TV prox via accelerated projected gradient on the edge dual
 * max_{|p_e| <= gamma} -1/2 ||z - D^T p||^2, step 1 / (2 max-degree).
 *
 * The primal iterate is z - D^T p or, when lower in gap, its support polish
 * (flat components of the dual's interior edges set to their means).
 * Stops once the duality gap is <= cfg.gap_target(z); throws NonConvergenceError
 * (carrying the achieved gap) after cfg.inner_max_iter iterations. `warm_dual`,
 * when given, is used as the starting point and receives the final dual.
 */
Eigen::VectorXd tv_prox_graph(const Eigen::VectorXd& z, const Graph& g, const TvProxConfig& cfg,
                              Eigen::VectorXd* warm_dual = nullptr, TvProxStats* stats = nullptr);

/**
 * Coordinatewise TV prox with per-coordinate warm starts, reused across the
 * iterations of an ADMM solver. Chains use the exact solver (unless
 * Method::dual_gradient is forced), anything else tv_prox_graph.
 */
class TvProxOperator {
 public:
  enum class Method { automatic, dual_gradient };

  TvProxOperator(const Graph& g, TvProxConfig cfg, Method method = Method::automatic);

  /// Replaces each column of `coords` (N x C) by its scalar TV prox.
  void apply(Eigen::Ref<Eigen::MatrixXd> coords);

  const TvProxConfig& config() const noexcept { return cfg_; }
  /// Summed iterations and largest gap over the coordinates of the last apply().
  const TvProxStats& last_stats() const noexcept { return last_; }

 private:
  const Graph& graph_;
  TvProxConfig cfg_;
  Method method_;
  std::vector<Eigen::VectorXd> duals_;
  TvProxStats last_;
};

VectorSignal tv_prox_signal(const VectorSignal& z, const Graph& g, const TvProxConfig& cfg);
MatrixSignal tv_prox_signal(const MatrixSignal& z, const Graph& g, const TvProxConfig& cfg);

}  // namespace relaxden
