#include "relaxden/tv_prox.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaxden/errors.hpp"

namespace relaxden {

void TvProxConfig::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ParameterError("tv prox: gamma must be positive, got " + std::to_string(gamma));
  }
  if (!(inner_tol > 0.0)) {
    throw ParameterError("tv prox: inner_tol must be positive, got " + std::to_string(inner_tol));
  }
  if (inner_max_iter < 1) {
    throw ParameterError("tv prox: inner_max_iter must be >= 1, got " +
                         std::to_string(inner_max_iter));
  }
}

// Condat's direct algorithm ("A direct algorithm for 1D total variation
// denoising", IEEE SPL 2013). Tracks the lower/upper bounds of the taut string
// segment that starts at k0 and emits it as soon as one bound is violated.
void tv_prox_chain(std::span<const double> in, std::span<double> out, double gamma) {
  const auto width = static_cast<Index>(in.size());
  if (static_cast<Index>(out.size()) != width) {
    throw DimensionError("tv_prox_chain: output length differs from input length");
  }
  if (width == 0) return;
  if (!(gamma > 0.0)) {
    throw ParameterError("tv_prox_chain: gamma must be positive, got " + std::to_string(gamma));
  }
  if (width == 1) {
    out[0] = in[0];
    return;
  }
  std::vector<double> copy;
  if (in.data() == out.data()) {
    copy.assign(in.begin(), in.end());
    in = copy;
  }

  const double twolambda = 2.0 * gamma;
  const double minlambda = -gamma;
  Index k = 0, k0 = 0, kplus = 0, kminus = 0;
  double umin = gamma, umax = minlambda;
  double vmin = in[0] - gamma, vmax = in[0] + gamma;

  for (;;) {
    while (k == width - 1) {
      if (umin < 0.0) {
        do out[k0++] = vmin; while (k0 <= kminus);
        k = kminus = k0;
        vmin = in[k0];
        umin = gamma;
        umax = vmin + umin - vmax;
      } else if (umax > 0.0) {
        do out[k0++] = vmax; while (k0 <= kplus);
        k = kplus = k0;
        vmax = in[k0];
        umax = minlambda;
        umin = vmax + umax - vmin;
      } else {
        vmin += umin / static_cast<double>(k - k0 + 1);
        do out[k0++] = vmin; while (k0 <= k);
        return;
      }
    }
    if ((umin += in[k + 1] - vmin) < minlambda) {
      do out[k0++] = vmin; while (k0 <= kminus);
      k = kminus = kplus = k0;
      vmin = in[k0];
      vmax = vmin + twolambda;
      umin = gamma;
      umax = minlambda;
    } else if ((umax += in[k + 1] - vmax) > gamma) {
      do out[k0++] = vmax; while (k0 <= kplus);
      k = kminus = kplus = k0;
      vmax = in[k0];
      vmin = vmax - twolambda;
      umin = gamma;
      umax = minlambda;
    } else {
      ++k;
      if (umin >= gamma) {
        kminus = k;
        vmin += (umin - gamma) / static_cast<double>(kminus - k0 + 1);
        umin = gamma;
      }
      if (umax <= minlambda) {
        kplus = k;
        vmax += (umax + gamma) / static_cast<double>(kplus - k0 + 1);
        umax = minlambda;
      }
    }
  }
}

Eigen::VectorXd tv_prox_chain(const Eigen::VectorXd& z, double gamma) {
  Eigen::VectorXd x(z.size());
  tv_prox_chain(std::span<const double>(z.data(), static_cast<std::size_t>(z.size())),
                std::span<double>(x.data(), static_cast<std::size_t>(x.size())), gamma);
  return x;
}

Eigen::VectorXd chain_dual_from_primal(const Eigen::VectorXd& z, const Eigen::VectorXd& x) {
  const Index n = z.size();
  Eigen::VectorXd p(std::max<Index>(n - 1, 0));
  double acc = 0.0;
  for (Index i = 0; i + 1 < n; ++i) {
    acc += z(i) - x(i);
    p(i) = acc;
  }
  return p;
}

Eigen::VectorXd edge_divergence(const Eigen::VectorXd& dual, const Graph& g) {
  Eigen::VectorXd div = Eigen::VectorXd::Zero(g.num_vertices());
  const auto edges = g.edges();
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto& ed = edges[static_cast<std::size_t>(e)];
    div(ed.first) += dual(e);
    div(ed.second) -= dual(e);
  }
  return div;
}

double tv_duality_gap(const Eigen::VectorXd& x, const Eigen::VectorXd& dual, double gamma,
                      const Graph& g) {
  double gap = 0.0;
  const auto edges = g.edges();
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto& ed = edges[static_cast<std::size_t>(e)];
    const double dx = x(ed.first) - x(ed.second);
    gap += gamma * std::abs(dx) - dual(e) * dx;
  }
  return std::max(gap, 0.0);
}

namespace {

void require_matching(const Eigen::VectorXd& z, const Graph& g) {
  if (z.size() != g.num_vertices()) {
    throw DimensionError("tv prox: signal has " + std::to_string(z.size()) +
                         " entries, graph has " + std::to_string(g.num_vertices()) + " vertices");
  }
}

Eigen::VectorXd initial_dual(const Graph& g, double gamma, const Eigen::VectorXd* warm) {
  if (warm != nullptr && warm->size() == g.num_edges()) {
    return warm->cwiseMax(-gamma).cwiseMin(gamma);
  }
  return Eigen::VectorXd::Zero(g.num_edges());
}

// D x restricted to edges, (Dx)_e = x_n - x_m.
void edge_gradient(const Eigen::VectorXd& x, const Graph& g, Eigen::VectorXd& out) {
  const auto edges = g.edges();
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto& ed = edges[static_cast<std::size_t>(e)];
    out(e) = x(ed.first) - x(ed.second);
  }
}

[[noreturn]] void throw_inner(const char* solver, double gap, long iterations, double tol) {
  throw NonConvergenceError(std::string(solver) + ": duality gap " + std::to_string(gap) +
                                " above tolerance " + std::to_string(tol) + " after " +
                                std::to_string(iterations) + " iterations",
                            gap, iterations);
}

}  // namespace

double TvProxConfig::gap_target(const Eigen::VectorXd& z) const {
  return scale_gap ? inner_tol * std::max(1.0, 0.5 * z.squaredNorm()) : inner_tol;
}

namespace {

// gap(x~, p) = sum_e (gamma |Dx~_e| - p_e Dx~_e) + 1/2 ||x~ - (z - D^T p)||^2,
// valid for any primal candidate x~.
double candidate_gap(const Eigen::VectorXd& cand, const Eigen::VectorXd& x_dual,
                     const Eigen::VectorXd& p, double gamma, const Graph& g) {
  return tv_duality_gap(cand, p, gamma, g) + 0.5 * (cand - x_dual).squaredNorm();
}

// Support polish: edges with |p_e| < gamma are taken as flat, and x is set to
// the mean of z - D^T p_bound over each flat component. Exact once the
// active set of the dual is identified.
class SupportPolish {
 public:
  explicit SupportPolish(const Graph& g)
      : graph_(g), parent_(static_cast<std::size_t>(g.num_vertices())),
        sum_(g.num_vertices()), count_(g.num_vertices()) {}

  const Eigen::VectorXd& run(const Eigen::VectorXd& z, const Eigen::VectorXd& p, double gamma) {
    const Index n = graph_.num_vertices();
    for (Index i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
    Eigen::VectorXd& w = out_;
    w = z;
    const auto edges = graph_.edges();
    for (Index e = 0; e < graph_.num_edges(); ++e) {
      const auto& ed = edges[static_cast<std::size_t>(e)];
      if (std::abs(p(e)) < gamma) {
        unite(ed.first, ed.second);
      } else {
        w(ed.first) -= p(e);
        w(ed.second) += p(e);
      }
    }
    sum_.setZero();
    count_.setZero();
    for (Index i = 0; i < n; ++i) {
      const Index r = find(i);
      sum_(r) += w(i);
      count_(r) += 1.0;
    }
    for (Index i = 0; i < n; ++i) {
      const Index r = find(i);
      w(i) = sum_(r) / count_(r);
    }
    return w;
  }

 private:
  Index find(Index i) {
    auto& par = parent_;
    while (par[static_cast<std::size_t>(i)] != i) {
      par[static_cast<std::size_t>(i)] =
          par[static_cast<std::size_t>(par[static_cast<std::size_t>(i)])];
      i = par[static_cast<std::size_t>(i)];
    }
    return i;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

  const Graph& graph_;
  std::vector<Index> parent_;
  Eigen::VectorXd sum_;
  Eigen::VectorXd count_;
  Eigen::VectorXd out_;
};

}  // namespace

Eigen::VectorXd tv_prox_graph(const Eigen::VectorXd& z, const Graph& g, const TvProxConfig& cfg,
                              Eigen::VectorXd* warm_dual, TvProxStats* stats) {
  cfg.validate();
  require_matching(z, g);
  const double gamma = cfg.gamma;
  if (g.num_edges() == 0) {
    if (stats) *stats = {0, 0.0};
    if (warm_dual) warm_dual->resize(0);
    return z;
  }

  constexpr long kCheckEvery = 5;
  const double step = 1.0 / (2.0 * static_cast<double>(g.max_degree()));
  const double target = cfg.gap_target(z);

  SupportPolish polish(g);
  Eigen::VectorXd p = initial_dual(g, gamma, warm_dual);
  Eigen::VectorXd x;
  double gap = 0.0;
  // Best of the dual-induced primal z - D^T p and its support polish.
  auto evaluate = [&] {
    x = z - edge_divergence(p, g);
    gap = tv_duality_gap(x, p, gamma, g);
    const Eigen::VectorXd& cand = polish.run(z, p, gamma);
    const double cand_gap = candidate_gap(cand, x, p, gamma, g);
    if (cand_gap < gap) {
      x = cand;
      gap = cand_gap;
    }
  };
  evaluate();
  long it = 0;

  Eigen::VectorXd w = p;
  Eigen::VectorXd grad(g.num_edges());
  Eigen::VectorXd p_next(g.num_edges());
  double t = 1.0;
  while (gap > target) {
    if (it >= cfg.inner_max_iter) {
      if (warm_dual) *warm_dual = p;
      throw_inner("tv_prox_graph", gap, it, target);
    }
    ++it;
    const Eigen::VectorXd xw = z - edge_divergence(w, g);
    edge_gradient(xw, g, grad);
    p_next = (w + step * grad).cwiseMax(-gamma).cwiseMin(gamma);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    // Adaptive restart when the momentum direction opposes the step.
    if ((w - p_next).dot(p_next - p) > 0.0) {
      w = p_next;
      t = 1.0;
    } else {
      w = p_next + ((t - 1.0) / t_next) * (p_next - p);
      t = t_next;
    }
    p.swap(p_next);
    if (it % kCheckEvery == 0 || it == cfg.inner_max_iter) evaluate();
  }
  if (warm_dual) *warm_dual = p;
  if (stats) *stats = {it, gap};
  return x;
}

TvProxOperator::TvProxOperator(const Graph& g, TvProxConfig cfg, Method method)
    : graph_(g), cfg_(cfg), method_(method) {
  cfg_.validate();
}

void TvProxOperator::apply(Eigen::Ref<Eigen::MatrixXd> coords) {
  if (coords.rows() != graph_.num_vertices()) {
    throw DimensionError("tv prox: signal has " + std::to_string(coords.rows()) +
                         " nodes, graph has " + std::to_string(graph_.num_vertices()));
  }
  if (static_cast<Index>(duals_.size()) != coords.cols()) {
    duals_.assign(static_cast<std::size_t>(coords.cols()), Eigen::VectorXd());
  }
  last_ = {0, 0.0};
  for (Index j = 0; j < coords.cols(); ++j) {
    if (method_ == Method::automatic && graph_.is_chain()) {
      tv_prox_chain(std::span<const double>(coords.col(j).data(),
                                            static_cast<std::size_t>(coords.rows())),
                    std::span<double>(coords.col(j).data(), static_cast<std::size_t>(coords.rows())),
                    cfg_.gamma);
      continue;
    }
    const Eigen::VectorXd z = coords.col(j);
    TvProxStats stats;
    auto& dual = duals_[static_cast<std::size_t>(j)];
    coords.col(j) = tv_prox_graph(z, graph_, cfg_, &dual, &stats);
    last_.iterations += stats.iterations;
    last_.gap = std::max(last_.gap, stats.gap);
  }
}

VectorSignal tv_prox_signal(const VectorSignal& z, const Graph& g, const TvProxConfig& cfg) {
  z.check_shape(g);
  Eigen::MatrixXd coords = z.data();
  TvProxOperator op(g, cfg);
  op.apply(coords);
  return VectorSignal(std::move(coords));
}

MatrixSignal tv_prox_signal(const MatrixSignal& z, const Graph& g, const TvProxConfig& cfg) {
  z.check_shape(g);
  Eigen::MatrixXd coords = z.coordinates();
  TvProxOperator op(g, cfg);
  op.apply(coords);
  return MatrixSignal::from_coordinates(z.rows(), z.cols(), coords);
}

}  // namespace relaxden
