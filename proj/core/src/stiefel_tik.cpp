#include "relaxden/stiefel_tik.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "relaxden/errors.hpp"
#include "relaxden/matrix_kernels.hpp"
#include "relaxden/objectives.hpp"

namespace relaxden {

Eigen::MatrixXd assemble_q_edge(const Eigen::MatrixXd& x_n, const Eigen::MatrixXd& x_m,
                                const Eigen::MatrixXd& l) {
  const Index d = x_n.rows();
  const Index k = x_n.cols();
  if (x_m.rows() != d || x_m.cols() != k || l.rows() != k || l.cols() != k || k > d) {
    throw DimensionError("assemble_q_edge: expected X_n, X_m of size d x k and L of size k x k");
  }
  const Index p = d + 2 * k;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(p, p);
  q.block(0, d, d, k) = x_n;
  q.block(d, 0, k, d) = x_n.transpose();
  q.block(0, d + k, d, k) = x_m;
  q.block(d + k, 0, k, d) = x_m.transpose();
  q.block(d, d + k, k, k) = l;
  q.block(d + k, d, k, k) = l.transpose();
  return q;
}

EdgeBlockField apply_q(const MatrixSignal& x, const EdgeCoupling& l, const Graph& g) {
  x.check_shape(g);
  l.check_shape(g);
  EdgeBlockField out;
  out.reserve(static_cast<std::size_t>(g.num_edges()));
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    out.push_back(assemble_q_edge(x.node(ed.first), x.node(ed.second), l.edge(e)));
  }
  return out;
}

QAdjoint adjoint_q(std::span<const Eigen::MatrixXd> u, const Graph& g, Index d, Index k) {
  if (static_cast<Index>(u.size()) != g.num_edges()) {
    throw DimensionError("adjoint_q: field has " + std::to_string(u.size()) +
                         " blocks, graph has " + std::to_string(g.num_edges()) + " edges");
  }
  const Index p = d + 2 * k;
  QAdjoint out;
  out.nodes.assign(static_cast<std::size_t>(g.num_vertices()), Eigen::MatrixXd::Zero(d, k));
  out.edges.reserve(u.size());
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto& w = u[static_cast<std::size_t>(e)];
    if (w.rows() != p || w.cols() != p) {
      throw DimensionError("adjoint_q: block " + std::to_string(e) + " is not " +
                           std::to_string(p) + "x" + std::to_string(p));
    }
    require_symmetric(w, "adjoint_q");
    const auto& ed = g.edge(e);
    out.nodes[static_cast<std::size_t>(ed.first)] +=
        w.block(0, d, d, k) + w.block(d, 0, k, d).transpose();
    out.nodes[static_cast<std::size_t>(ed.second)] +=
        w.block(0, d + k, d, k) + w.block(d + k, 0, k, d).transpose();
    out.edges.push_back(w.block(d, d + k, k, k) + w.block(d + k, d, k, k).transpose());
  }
  return out;
}

StiefelTikResult denoise_stiefel_tikhonov(const MatrixSignal& y, const Graph& g,
                                          const AdmmConfig& cfg,
                                          const TikhonovObserver& observer) {
  cfg.validate();
  y.check_shape(g);
  if (g.num_edges() == 0) {
    throw TopologyError("stiefel tikhonov: graph has no edges");
  }
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (g.neighbor_count(v) == 0) {
      throw TopologyError("stiefel tikhonov: vertex " + std::to_string(v + 1) +
                          " has no neighbours");
    }
  }
  const auto start = std::chrono::steady_clock::now();

  const Index n = y.size();
  const Index m = g.num_edges();
  const Index d = y.rows();
  const Index k = y.cols();
  const Index p = d + 2 * k;
  SolverReport report;
  report.trace_stride = cfg.trace_stride;
  const double scale = std::sqrt(static_cast<double>(m)) * static_cast<double>(p);
  report.tol_primal = cfg.tol_primal.value_or(1e-7 * scale);
  report.tol_dual = cfg.tol_dual.value_or(1e-7 * scale);

  MatrixSignal x = MatrixSignal::zeros(n, d, k);
  EdgeCoupling l = EdgeCoupling::zeros(m, k);
  EdgeBlockField u(static_cast<std::size_t>(m), Eigen::MatrixXd::Zero(p, p));
  EdgeBlockField z = u;
  EdgeBlockField diff = u;
  const Eigen::MatrixXd ones_term = Eigen::MatrixXd::Constant(k, k, cfg.lambda / cfg.rho);

  for (long it = 1; it <= cfg.max_iter; ++it) {
    for (Index e = 0; e < m; ++e) {
      diff[static_cast<std::size_t>(e)] = u[static_cast<std::size_t>(e)] - z[static_cast<std::size_t>(e)];
    }
    const QAdjoint adj = adjoint_q(diff, g, d, k);
    for (Index v = 0; v < n; ++v) {
      x.node(v) = (adj.nodes[static_cast<std::size_t>(v)] + y.node(v) / cfg.rho) /
                  (2.0 * static_cast<double>(g.neighbor_count(v)));
    }
    for (Index e = 0; e < m; ++e) {
      l.edge(e) = 0.5 * (adj.edges[static_cast<std::size_t>(e)] + ones_term);
    }

    double primal_sq = 0.0;
    double dual_sq = 0.0;
    for (Index e = 0; e < m; ++e) {
      const auto& ed = g.edge(e);
      const Eigen::MatrixXd q = assemble_q_edge(x.node(ed.first), x.node(ed.second), l.edge(e));
      auto& ue = u[static_cast<std::size_t>(e)];
      auto& ze = z[static_cast<std::size_t>(e)];
      Eigen::MatrixXd u_next = project_shifted_psd(q + ze);
      dual_sq += (u_next - ue).squaredNorm();
      ue = std::move(u_next);
      const Eigen::MatrixXd r = q - ue;
      primal_sq += r.squaredNorm();
      ze += r;
    }

    report.iterations = it;
    report.primal_residual = std::sqrt(primal_sq);
    report.dual_residual = cfg.rho * std::sqrt(dual_sq);
    if (observer) observer(it, u, z);
    const bool done =
        report.primal_residual <= report.tol_primal && report.dual_residual <= report.tol_dual;
    if (it % cfg.trace_stride == 0 || done || it == cfg.max_iter) {
      report.objective_trace.push_back(objective_tikhonov(x, l, y, cfg.lambda, g));
    }
    if (done) {
      report.converged = true;
      break;
    }
  }

  StiefelTikResult result;
  result.feasibility = stiefel_feasibility(x);
  result.coupling_defect.reserve(static_cast<std::size_t>(m));
  for (Index e = 0; e < m; ++e) {
    const auto& ed = g.edge(e);
    result.coupling_defect.push_back(
        (l.edge(e) - x.node(ed.first).transpose() * x.node(ed.second)).norm());
  }
  result.x = std::move(x);
  result.coupling = std::move(l);
  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.report = std::move(report);
  return result;
}

}  // namespace relaxden
