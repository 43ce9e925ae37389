#pragma once

#include "relaxden/admm.hpp"
#include "relaxden/graph.hpp"
#include "relaxden/signal.hpp"

namespace relaxden {

/// How far a matrix signal is from having orthonormal columns.
struct StiefelFeasibility {
  double mean_norm_deviation = 0.0;     // mean over nodes/columns of | ||col|| - 1 |
  double mean_inner_product = 0.0;      // mean over nodes and pairs i < j of |<col_i, col_j>|
};

StiefelFeasibility stiefel_feasibility(const MatrixSignal& x);

struct StiefelTvResult {
  MatrixSignal relaxed;  // U-iterate, spectral norm <= 1 per node
  StiefelFeasibility feasibility;
  SolverReport report;
};

/**
 * ADMM for min -sum <X_n, Y_n>_F + lambda TV(X) s.t. ||X_n||_2 <= 1.
 *
 *   X <- prox_{TV, lambda/rho}(U - Z + Y / rho)    (coordinatewise)
 *   U <- nodewise projection onto the spectral unit ball of X + Z
 *   Z <- Z + X - U
 *
 * Zero initialization; default tolerances 1e-8 sqrt(N d k).
 */
StiefelTvResult denoise_stiefel_tv(const MatrixSignal& y, const Graph& g, const AdmmConfig& cfg);

/// Nodewise polar factor; lands every node exactly on the Stiefel manifold.
MatrixSignal round_to_stiefel(const MatrixSignal& x);

}  // namespace relaxden
