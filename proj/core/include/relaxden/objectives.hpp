#pragma once

#include "relaxden/graph.hpp"
#include "relaxden/signal.hpp"

namespace relaxden {

/// Anisotropic graph TV: sum over edges of ||x_n - x_m||_1.
double tv_seminorm(const VectorSignal& x, const Graph& g);

/// Matrix-valued anisotropic TV: sum over edges of the entrywise (1,1)-norm of X_n - X_m.
double tv_seminorm(const MatrixSignal& x, const Graph& g);

/// K(x) = -sum_n <x_n, y_n> + lambda * TV(x).
double objective_binary(const VectorSignal& x, const VectorSignal& y, double lambda,
                        const Graph& g);

/// K(X) = -sum_n <X_n, Y_n>_F + lambda * TV(X).
double objective_stiefel_tv(const MatrixSignal& x, const MatrixSignal& y, double lambda,
                            const Graph& g);

/// L(X, L) = -sum_n <X_n, Y_n>_F - lambda * sum_e <L_e, 1_k>_F.
double objective_tikhonov(const MatrixSignal& x, const EdgeCoupling& coupling,
                          const MatrixSignal& y, double lambda, const Graph& g);

}  // namespace relaxden
