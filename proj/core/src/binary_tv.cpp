#include "relaxden/binary_tv.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "relaxden/errors.hpp"
#include "relaxden/matrix_kernels.hpp"
#include "relaxden/metrics.hpp"
#include "relaxden/objectives.hpp"

namespace relaxden {

namespace {

Eigen::VectorXd uniform_cube_point(std::mt19937_64& rng, Index dim) {
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  Eigen::VectorXd eta(dim);
  for (Index i = 0; i < dim; ++i) eta(i) = uniform(rng);
  return eta;
}

Eigen::VectorXd choose_eta(const RoundingConfig& rounding, Index dim) {
  switch (rounding.mode) {
    case RoundingConfig::Mode::zero:
      return Eigen::VectorXd::Zero(dim);
    case RoundingConfig::Mode::random: {
      std::mt19937_64 rng(rounding.seed);
      return uniform_cube_point(rng, dim);
    }
    case RoundingConfig::Mode::fixed:
      return rounding.eta;
  }
  return Eigen::VectorXd::Zero(dim);
}

}  // namespace

VectorSignal threshold_round(const VectorSignal& x, const Eigen::VectorXd& eta) {
  if (eta.size() != x.dim()) {
    throw DimensionError("threshold has " + std::to_string(eta.size()) +
                         " entries, signal dimension is " + std::to_string(x.dim()));
  }
  if (!eta.allFinite() || eta.cwiseAbs().maxCoeff() > 1.0) {
    throw ParameterError("rounding threshold must lie in [-1, 1]^d");
  }
  Eigen::MatrixXd out(x.size(), x.dim());
  for (Index n = 0; n < x.size(); ++n)
    for (Index i = 0; i < x.dim(); ++i) out(n, i) = x.data()(n, i) > eta(i) ? 1.0 : -1.0;
  return VectorSignal(std::move(out));
}

BinaryDenoiseResult denoise_binary_tv(const VectorSignal& y, const Graph& g,
                                      const AdmmConfig& cfg, const RoundingConfig& rounding) {
  cfg.validate();
  y.check_shape(g);
  const auto start = std::chrono::steady_clock::now();

  const Index n = y.size();
  const Index d = y.dim();
  Eigen::VectorXd eta = choose_eta(rounding, d);
  threshold_round(VectorSignal::zeros(1, d), eta);  // validates eta before the solve
  const double scale = std::sqrt(static_cast<double>(n * d));
  SolverReport report;
  report.trace_stride = cfg.trace_stride;
  report.tol_primal = cfg.tol_primal.value_or(1e-8 * scale);
  report.tol_dual = cfg.tol_dual.value_or(1e-8 * scale);

  TvProxConfig inner = cfg.tv_cfg;
  inner.gamma = cfg.lambda / cfg.rho;
  TvProxOperator prox(g, inner);

  const Eigen::MatrixXd y_scaled = y.data() / cfg.rho;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, d);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, d);
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, d);
  Eigen::MatrixXd u_prev(n, d);

  for (long it = 1; it <= cfg.max_iter; ++it) {
    x = u - z + y_scaled;
    prox.apply(x);
    report.inner_iterations += prox.last_stats().iterations;
    u_prev.swap(u);
    u = x + z;
    project_box_inplace(u);
    z += x - u;

    report.iterations = it;
    report.primal_residual = (x - u).norm();
    report.dual_residual = cfg.rho * (u - u_prev).norm();
    const bool done =
        report.primal_residual <= report.tol_primal && report.dual_residual <= report.tol_dual;
    if (it % cfg.trace_stride == 0 || done || it == cfg.max_iter) {
      report.objective_trace.push_back(objective_binary(VectorSignal(u), y, cfg.lambda, g));
    }
    if (done) {
      report.converged = true;
      break;
    }
  }

  BinaryDenoiseResult result;
  result.relaxed = VectorSignal(std::move(u));
  result.eta_used = std::move(eta);
  result.rounded = threshold_round(result.relaxed, result.eta_used);
  result.dist_to_binary = metric_dist_to_Bd(result.relaxed);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.report = std::move(report);
  return result;
}

TightnessAudit tightness_audit(const VectorSignal& relaxed, const VectorSignal& y, const Graph& g,
                               double lambda, long num_eta, std::uint64_t seed) {
  TightnessAudit audit;
  audit.relaxed_objective = objective_binary(relaxed, y, lambda, g);
  if (num_eta <= 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    audit.min = audit.mean = audit.max = audit.mean_deviation = nan;
    return audit;
  }
  std::mt19937_64 rng(seed);
  audit.sampled_objectives.reserve(static_cast<std::size_t>(num_eta));
  double sum = 0.0;
  for (long s = 0; s < num_eta; ++s) {
    const Eigen::VectorXd eta = uniform_cube_point(rng, relaxed.dim());
    const double k = objective_binary(threshold_round(relaxed, eta), y, lambda, g);
    audit.sampled_objectives.push_back(k);
    sum += k;
  }
  const auto [lo, hi] =
      std::minmax_element(audit.sampled_objectives.begin(), audit.sampled_objectives.end());
  audit.min = *lo;
  audit.max = *hi;
  audit.mean = sum / static_cast<double>(num_eta);
  audit.mean_deviation = audit.mean - audit.relaxed_objective;
  return audit;
}

}  // namespace relaxden
