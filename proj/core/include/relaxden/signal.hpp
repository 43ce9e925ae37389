#pragma once

#include <vector>

#include <Eigen/Dense>

#include "relaxden/graph.hpp"

namespace relaxden {

/// N vectors in R^d, stored as an N x d matrix (row n is x_n, column i is the
/// i-th coordinate signal).
class VectorSignal {
 public:
  VectorSignal() = default;
  /// Throws DataError on non-finite entries.
  explicit VectorSignal(Eigen::MatrixXd data);

  static VectorSignal zeros(Index num_vertices, Index dim);

  Index size() const noexcept { return data_.rows(); }
  Index dim() const noexcept { return data_.cols(); }

  const Eigen::MatrixXd& data() const noexcept { return data_; }
  Eigen::MatrixXd& data() noexcept { return data_; }

  auto node(Index n) const { return data_.row(n); }
  auto node(Index n) { return data_.row(n); }

  /// Throws DimensionError unless size() matches the graph.
  void check_shape(const Graph& g) const;

 private:
  Eigen::MatrixXd data_;
};

/// N matrices in R^{d x k}, k <= d.
class MatrixSignal {
 public:
  MatrixSignal() = default;
  /// All nodes must be d x k with k <= d and finite entries.
  MatrixSignal(Index rows, Index cols, std::vector<Eigen::MatrixXd> nodes);

  static MatrixSignal zeros(Index num_vertices, Index rows, Index cols);

  Index size() const noexcept { return static_cast<Index>(nodes_.size()); }
  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }

  const Eigen::MatrixXd& node(Index n) const { return nodes_[static_cast<std::size_t>(n)]; }
  Eigen::MatrixXd& node(Index n) { return nodes_[static_cast<std::size_t>(n)]; }

  const std::vector<Eigen::MatrixXd>& nodes() const noexcept { return nodes_; }

  /// Coordinate-major view: an N x (d*k) matrix whose column i*k+j is the
  /// scalar signal of entry (i, j).
  Eigen::MatrixXd coordinates() const;
  static MatrixSignal from_coordinates(Index rows, Index cols, const Eigen::MatrixXd& coords);

  void check_shape(const Graph& g) const;
  /// Throws DimensionError unless sizes and node shapes agree.
  void check_same_shape(const MatrixSignal& other) const;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Eigen::MatrixXd> nodes_;
};

/// Per-edge k x k matrices L_(n,m).
class EdgeCoupling {
 public:
  EdgeCoupling() = default;
  EdgeCoupling(Index dim, std::vector<Eigen::MatrixXd> edges);

  static EdgeCoupling zeros(Index num_edges, Index dim);

  Index size() const noexcept { return static_cast<Index>(edges_.size()); }
  Index dim() const noexcept { return dim_; }

  const Eigen::MatrixXd& edge(Index e) const { return edges_[static_cast<std::size_t>(e)]; }
  Eigen::MatrixXd& edge(Index e) { return edges_[static_cast<std::size_t>(e)]; }

  void check_shape(const Graph& g) const;

 private:
  Index dim_ = 0;
  std::vector<Eigen::MatrixXd> edges_;
};

}  // namespace relaxden
