#pragma once

#include <optional>
#include <vector>

#include "relaxden/tv_prox.hpp"

namespace relaxden {

/// Step size, regularization and stopping rule shared by the three ADMM solvers.
namespace detail {
inline TvProxConfig scaled_inner() {
  TvProxConfig cfg;
  cfg.scale_gap = true;
  return cfg;
}
}  // namespace detail

struct AdmmConfig {
  double rho = 0.1;
  double lambda = 1.2;
  long max_iter = 10'000;
  /// Unset tolerances take the solver-specific default scaled by problem size.
  std::optional<double> tol_primal;
  std::optional<double> tol_dual;
  /// Inner TV prox settings; gamma is overwritten with lambda / rho,
  /// and the gap target is scaled by the input size by default.
  TvProxConfig tv_cfg = detail::scaled_inner();
  /// The objective is recorded every `trace_stride` iterations.
  long trace_stride = 1;

  /// Throws ParameterError naming the offending field.
  void validate() const;

  static AdmmConfig binary_tv_defaults();        // lambda 1.2, rho 0.1
  static AdmmConfig stiefel_tv_defaults();       // lambda 0.75, rho 0.5
  static AdmmConfig stiefel_tikhonov_defaults(); // lambda 10, rho 0.1, 2e4 iterations
};

struct SolverReport {
  long iterations = 0;
  long trace_stride = 1;
  std::vector<double> objective_trace;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double tol_primal = 0.0;
  double tol_dual = 0.0;
  bool converged = false;
  long inner_iterations = 0;  // summed over all TV prox calls
  double runtime_seconds = 0.0;
};

}  // namespace relaxden
