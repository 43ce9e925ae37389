#include "relaxden/admm.hpp"

#include <cmath>
#include <string>

#include "relaxden/errors.hpp"

namespace relaxden {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(field) + " must be positive and finite, got " +
                         std::to_string(value));
  }
}

}  // namespace

void AdmmConfig::validate() const {
  require_positive(rho, "rho");
  require_positive(lambda, "lambda");
  if (max_iter < 1) throw ParameterError("max_iter must be >= 1, got " + std::to_string(max_iter));
  if (tol_primal) require_positive(*tol_primal, "tol_primal");
  if (tol_dual) require_positive(*tol_dual, "tol_dual");
  if (trace_stride < 1) {
    throw ParameterError("trace_stride must be >= 1, got " + std::to_string(trace_stride));
  }
  TvProxConfig inner = tv_cfg;
  inner.gamma = lambda / rho;
  inner.validate();
}

AdmmConfig AdmmConfig::binary_tv_defaults() {
  AdmmConfig cfg;
  cfg.rho = 0.1;
  cfg.lambda = 1.2;
  cfg.max_iter = 10'000;
  return cfg;
}

AdmmConfig AdmmConfig::stiefel_tv_defaults() {
  AdmmConfig cfg;
  cfg.rho = 0.5;
  cfg.lambda = 0.75;
  cfg.max_iter = 10'000;
  return cfg;
}

AdmmConfig AdmmConfig::stiefel_tikhonov_defaults() {
  AdmmConfig cfg;
  cfg.rho = 0.1;
  cfg.lambda = 10.0;
  cfg.max_iter = 20'000;
  return cfg;
}

}  // namespace relaxden
