#include "relaxden/signal.hpp"

#include <string>

#include "relaxden/errors.hpp"

namespace relaxden {

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw DataError(std::string(what) + " contains non-finite entries");
}

}  // namespace

VectorSignal::VectorSignal(Eigen::MatrixXd data) : data_(std::move(data)) {
  require_finite(data_, "vector signal");
}

VectorSignal VectorSignal::zeros(Index num_vertices, Index dim) {
  return VectorSignal(Eigen::MatrixXd::Zero(num_vertices, dim));
}

void VectorSignal::check_shape(const Graph& g) const {
  if (size() != g.num_vertices()) {
    throw DimensionError("signal has " + std::to_string(size()) + " nodes, graph has " +
                         std::to_string(g.num_vertices()));
  }
}

MatrixSignal::MatrixSignal(Index rows, Index cols, std::vector<Eigen::MatrixXd> nodes)
    : rows_(rows), cols_(cols), nodes_(std::move(nodes)) {
  if (rows_ <= 0 || cols_ <= 0 || cols_ > rows_) {
    throw DimensionError("matrix signal needs 0 < k <= d, got d=" + std::to_string(rows_) +
                         " k=" + std::to_string(cols_));
  }
  for (const auto& m : nodes_) {
    if (m.rows() != rows_ || m.cols() != cols_) {
      throw DimensionError("node matrix is " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(rows_) +
                           "x" + std::to_string(cols_));
    }
    require_finite(m, "matrix signal");
  }
}

MatrixSignal MatrixSignal::zeros(Index num_vertices, Index rows, Index cols) {
  return MatrixSignal(rows, cols,
                      std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(num_vertices),
                                                   Eigen::MatrixXd::Zero(rows, cols)));
}

Eigen::MatrixXd MatrixSignal::coordinates() const {
  Eigen::MatrixXd out(size(), rows_ * cols_);
  for (Index n = 0; n < size(); ++n) {
    const auto& m = node(n);
    for (Index i = 0; i < rows_; ++i)
      for (Index j = 0; j < cols_; ++j) out(n, i * cols_ + j) = m(i, j);
  }
  return out;
}

MatrixSignal MatrixSignal::from_coordinates(Index rows, Index cols, const Eigen::MatrixXd& coords) {
  if (coords.cols() != rows * cols) {
    throw DimensionError("coordinate matrix has " + std::to_string(coords.cols()) +
                         " columns, expected " + std::to_string(rows * cols));
  }
  std::vector<Eigen::MatrixXd> nodes(static_cast<std::size_t>(coords.rows()),
                                     Eigen::MatrixXd(rows, cols));
  for (Index n = 0; n < coords.rows(); ++n) {
    auto& m = nodes[static_cast<std::size_t>(n)];
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = coords(n, i * cols + j);
  }
  return MatrixSignal(rows, cols, std::move(nodes));
}

void MatrixSignal::check_shape(const Graph& g) const {
  if (size() != g.num_vertices()) {
    throw DimensionError("signal has " + std::to_string(size()) + " nodes, graph has " +
                         std::to_string(g.num_vertices()));
  }
}

void MatrixSignal::check_same_shape(const MatrixSignal& other) const {
  if (size() != other.size() || rows_ != other.rows_ || cols_ != other.cols_) {
    throw DimensionError("matrix signal shapes differ: " + std::to_string(size()) + "x" +
                         std::to_string(rows_) + "x" + std::to_string(cols_) + " vs " +
                         std::to_string(other.size()) + "x" + std::to_string(other.rows_) + "x" +
                         std::to_string(other.cols_));
  }
}

EdgeCoupling::EdgeCoupling(Index dim, std::vector<Eigen::MatrixXd> edges)
    : dim_(dim), edges_(std::move(edges)) {
  for (const auto& m : edges_) {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw DimensionError("edge coupling must be " + std::to_string(dim_) + "x" +
                           std::to_string(dim_));
    }
    require_finite(m, "edge coupling");
  }
}

EdgeCoupling EdgeCoupling::zeros(Index num_edges, Index dim) {
  return EdgeCoupling(dim, std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(num_edges),
                                                        Eigen::MatrixXd::Zero(dim, dim)));
}

void EdgeCoupling::check_shape(const Graph& g) const {
  if (size() != g.num_edges()) {
    throw DimensionError("edge coupling has " + std::to_string(size()) + " entries, graph has " +
                         std::to_string(g.num_edges()) + " edges");
  }
}

}  // namespace relaxden
