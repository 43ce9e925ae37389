#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "relaxden/admm.hpp"
#include "relaxden/graph.hpp"
#include "relaxden/signal.hpp"
#include "relaxden/stiefel_tv.hpp"

namespace relaxden {

/// Per-edge symmetric (d+2k) x (d+2k) matrices, indexed like Graph::edges().
using EdgeBlockField = std::vector<Eigen::MatrixXd>;

/// Result of the adjoint of Q: one d x k matrix per node, one k x k per edge.
struct QAdjoint {
  std::vector<Eigen::MatrixXd> nodes;
  std::vector<Eigen::MatrixXd> edges;
};

struct StiefelTikResult {
  MatrixSignal x;
  EdgeCoupling coupling;
  StiefelFeasibility feasibility;
  std::vector<double> coupling_defect;  // ||L_e - X_n^T X_m||_F per edge
  SolverReport report;
};

/**
 * Q_(n,m)(X, L) - I for one edge:
 *
 *   [ 0      X_n   X_m ]
 *   [ X_n^T  0     L   ]
 *   [ X_m^T  L^T   0   ]
 *
 * Adding the identity gives the Gram matrix [I, X_n, X_m]^T [I, X_n, X_m]
 * whenever X_n, X_m are Stiefel and L = X_n^T X_m.
 */
Eigen::MatrixXd assemble_q_edge(const Eigen::MatrixXd& x_n, const Eigen::MatrixXd& x_m,
                                const Eigen::MatrixXd& l);

/// Q(X, L) over all edges.
EdgeBlockField apply_q(const MatrixSignal& x, const EdgeCoupling& l, const Graph& g);

/// Adjoint of Q split into its X and L parts. Every block must be symmetric.
QAdjoint adjoint_q(std::span<const Eigen::MatrixXd> u, const Graph& g, Index d, Index k);

/// Called after each iteration with (iteration, U, Z).
using TikhonovObserver =
    std::function<void(long, std::span<const Eigen::MatrixXd>, std::span<const Eigen::MatrixXd>)>;

/**
 * ADMM for min -sum <X_n, Y_n>_F - lambda sum <L_e, 1_k>_F s.t. Q_(n,m) >= 0:
 *
 *   X_n <- (Q_X^*(U - Z)_n + Y_n / rho) / (2 nu_n)
 *   L_e <- (Q_L^*(U - Z)_e + (lambda / rho) 1_k) / 2
 *   U_e <- projection of Q_e(X, L) + Z_e onto {A >= -I}
 *   Z   <- Z + Q(X, L) - U
 *
 * Throws TopologyError when a vertex has no neighbour. Default tolerances
 * 1e-7 sqrt(M) (d + 2k).
 */
StiefelTikResult denoise_stiefel_tikhonov(const MatrixSignal& y, const Graph& g,
                                          const AdmmConfig& cfg,
                                          const TikhonovObserver& observer = {});

}  // namespace relaxden
