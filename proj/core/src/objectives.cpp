#include "relaxden/objectives.hpp"

#include <string>

#include "relaxden/errors.hpp"

namespace relaxden {

namespace {

void require_positive_lambda(double lambda) {
  if (!(lambda > 0.0)) {
    throw ParameterError("lambda must be positive, got " + std::to_string(lambda));
  }
}

void require_same_shape(const VectorSignal& a, const VectorSignal& b) {
  if (a.size() != b.size() || a.dim() != b.dim()) {
    throw DimensionError("vector signal shapes differ: " + std::to_string(a.size()) + "x" +
                         std::to_string(a.dim()) + " vs " + std::to_string(b.size()) + "x" +
                         std::to_string(b.dim()));
  }
}

}  // namespace

double tv_seminorm(const VectorSignal& x, const Graph& g) {
  x.check_shape(g);
  double tv = 0.0;
  for (const auto& e : g.edges()) tv += (x.node(e.first) - x.node(e.second)).lpNorm<1>();
  return tv;
}

double tv_seminorm(const MatrixSignal& x, const Graph& g) {
  x.check_shape(g);
  double tv = 0.0;
  for (const auto& e : g.edges()) {
    tv += (x.node(e.first) - x.node(e.second)).cwiseAbs().sum();
  }
  return tv;
}

double objective_binary(const VectorSignal& x, const VectorSignal& y, double lambda,
                        const Graph& g) {
  require_positive_lambda(lambda);
  require_same_shape(x, y);
  x.check_shape(g);
  return -x.data().cwiseProduct(y.data()).sum() + lambda * tv_seminorm(x, g);
}

double objective_stiefel_tv(const MatrixSignal& x, const MatrixSignal& y, double lambda,
                            const Graph& g) {
  require_positive_lambda(lambda);
  x.check_same_shape(y);
  x.check_shape(g);
  double fidelity = 0.0;
  for (Index n = 0; n < x.size(); ++n) fidelity += x.node(n).cwiseProduct(y.node(n)).sum();
  return -fidelity + lambda * tv_seminorm(x, g);
}

double objective_tikhonov(const MatrixSignal& x, const EdgeCoupling& coupling,
                          const MatrixSignal& y, double lambda, const Graph& g) {
  require_positive_lambda(lambda);
  x.check_same_shape(y);
  x.check_shape(g);
  coupling.check_shape(g);
  if (coupling.size() > 0 && coupling.dim() != x.cols()) {
    throw DimensionError("edge coupling is " + std::to_string(coupling.dim()) +
                         "x" + std::to_string(coupling.dim()) + ", expected k=" +
                         std::to_string(x.cols()));
  }
  double fidelity = 0.0;
  for (Index n = 0; n < x.size(); ++n) fidelity += x.node(n).cwiseProduct(y.node(n)).sum();
  double coupling_sum = 0.0;
  // <L, 1_k>_F is the entry sum.
  for (Index e = 0; e < coupling.size(); ++e) coupling_sum += coupling.edge(e).sum();
  return -fidelity - lambda * coupling_sum;
}

}  // namespace relaxden
