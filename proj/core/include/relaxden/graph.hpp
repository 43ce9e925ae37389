#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace relaxden {

using Index = std::ptrdiff_t;

/// Undirected edge between two vertices, stored 0-based with first < second.
struct Edge {
  Index first;
  Index second;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Shape of a row-major 4-neighbour grid, kept when a graph came from build_grid.
struct GridShape {
  Index height;
  Index width;
};

/**
 * Connected, undirected, unweighted graph.
 *
 * Vertices are 0..N-1 in storage (documentation uses 1..N). Edges are sorted
 * lexicographically, duplicate-free and satisfy first < second. Construction
 * validates all of this plus connectivity, after which the graph is immutable.
 */
class Graph {
 public:
  /// Validates and normalizes `edges`. Pairs may be given in either
  /// orientation; self loops, duplicates, out-of-range endpoints and a
  /// disconnected vertex set throw GraphError / IndexError.
  Graph(Index num_vertices, std::vector<Edge> edges);

  Index num_vertices() const noexcept { return num_vertices_; }
  Index num_edges() const noexcept { return static_cast<Index>(edges_.size()); }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(Index e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Indices of edges incident to vertex `n`.
  std::span<const Index> incident_edges(Index n) const;

  /// nu_n: number of vertices adjacent to `n`.
  Index neighbor_count(Index n) const;

  Index max_degree() const noexcept { return max_degree_; }

  /// True when every edge joins consecutive vertices (n, n+1).
  bool is_chain() const noexcept { return is_chain_; }

  const std::optional<GridShape>& grid_shape() const noexcept { return grid_; }

 private:
  friend Graph build_grid(Index height, Index width);

  Index num_vertices_;
  std::vector<Edge> edges_;
  std::vector<Index> adjacency_offsets_;
  std::vector<Index> adjacency_;
  Index max_degree_ = 0;
  bool is_chain_ = false;
  std::optional<GridShape> grid_;
};

/// Path graph 0-1-2-...-(N-1). Throws InvalidSizeError for N == 0.
Graph build_chain(Index num_vertices);

/// 4-neighbour grid, vertices in row-major order. Throws InvalidSizeError on
/// a zero dimension. A 1xW grid is a chain of length W.
Graph build_grid(Index height, Index width);

/// Free-function form of Graph::neighbor_count; throws IndexError when out of range.
Index neighbor_count(const Graph& g, Index n);

}  // namespace relaxden
