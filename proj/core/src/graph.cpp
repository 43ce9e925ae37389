#include "relaxden/graph.hpp"

#include <algorithm>
#include <string>

#include "relaxden/errors.hpp"

namespace relaxden {

Graph::Graph(Index num_vertices, std::vector<Edge> edges)
    : num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ <= 0) {
    throw InvalidSizeError("graph needs at least one vertex, got " +
                           std::to_string(num_vertices_));
  }
  for (auto& e : edges_) {
    if (e.first < 0 || e.second < 0 || e.first >= num_vertices_ ||
        e.second >= num_vertices_) {
      throw IndexError("edge (" + std::to_string(e.first) + ", " +
                       std::to_string(e.second) + ") out of range for " +
                       std::to_string(num_vertices_) + " vertices");
    }
    if (e.first == e.second) {
      throw GraphError("self loop at vertex " + std::to_string(e.first));
    }
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw GraphError("duplicate edge (" + std::to_string(dup->first) + ", " +
                     std::to_string(dup->second) + ")");
  }

  // CSR incidence lists.
  std::vector<Index> degree(static_cast<std::size_t>(num_vertices_), 0);
  for (const auto& e : edges_) {
    ++degree[static_cast<std::size_t>(e.first)];
    ++degree[static_cast<std::size_t>(e.second)];
  }
  adjacency_offsets_.assign(static_cast<std::size_t>(num_vertices_) + 1, 0);
  for (Index n = 0; n < num_vertices_; ++n) {
    adjacency_offsets_[static_cast<std::size_t>(n) + 1] =
        adjacency_offsets_[static_cast<std::size_t>(n)] + degree[static_cast<std::size_t>(n)];
    max_degree_ = std::max(max_degree_, degree[static_cast<std::size_t>(n)]);
  }
  adjacency_.resize(2 * edges_.size());
  std::vector<Index> fill(adjacency_offsets_.begin(), adjacency_offsets_.end() - 1);
  for (Index e = 0; e < num_edges(); ++e) {
    const auto& edge = edges_[static_cast<std::size_t>(e)];
    adjacency_[static_cast<std::size_t>(fill[static_cast<std::size_t>(edge.first)]++)] = e;
    adjacency_[static_cast<std::size_t>(fill[static_cast<std::size_t>(edge.second)]++)] = e;
  }

  // Connectivity by iterative DFS from vertex 0.
  std::vector<char> seen(static_cast<std::size_t>(num_vertices_), 0);
  std::vector<Index> stack{0};
  seen[0] = 1;
  Index reached = 1;
  while (!stack.empty()) {
    const Index n = stack.back();
    stack.pop_back();
    for (Index e : incident_edges(n)) {
      const auto& edge = edges_[static_cast<std::size_t>(e)];
      const Index m = edge.first == n ? edge.second : edge.first;
      if (!seen[static_cast<std::size_t>(m)]) {
        seen[static_cast<std::size_t>(m)] = 1;
        ++reached;
        stack.push_back(m);
      }
    }
  }
  if (reached != num_vertices_) {
    throw GraphError("graph is not connected: " + std::to_string(reached) + " of " +
                     std::to_string(num_vertices_) + " vertices reachable from vertex 1");
  }

  is_chain_ = num_edges() == num_vertices_ - 1 &&
              std::all_of(edges_.begin(), edges_.end(),
                          [](const Edge& e) { return e.second == e.first + 1; });
}

std::span<const Index> Graph::incident_edges(Index n) const {
  if (n < 0 || n >= num_vertices_) {
    throw IndexError("vertex " + std::to_string(n) + " out of range for " +
                     std::to_string(num_vertices_) + " vertices");
  }
  const auto begin = adjacency_offsets_[static_cast<std::size_t>(n)];
  const auto end = adjacency_offsets_[static_cast<std::size_t>(n) + 1];
  return std::span<const Index>(adjacency_).subspan(static_cast<std::size_t>(begin),
                                                    static_cast<std::size_t>(end - begin));
}

Index Graph::neighbor_count(Index n) const {
  // No multi-edges, so incident edges and neighbours coincide.
  return static_cast<Index>(incident_edges(n).size());
}

Graph build_chain(Index num_vertices) {
  if (num_vertices <= 0) {
    throw InvalidSizeError("chain length must be positive, got " + std::to_string(num_vertices));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(num_vertices - 1));
  for (Index n = 0; n + 1 < num_vertices; ++n) edges.push_back({n, n + 1});
  return Graph(num_vertices, std::move(edges));
}

Graph build_grid(Index height, Index width) {
  if (height <= 0 || width <= 0) {
    throw InvalidSizeError("grid dimensions must be positive, got " + std::to_string(height) +
                           "x" + std::to_string(width));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(height * (width - 1) + width * (height - 1)));
  for (Index r = 0; r < height; ++r) {
    for (Index c = 0; c < width; ++c) {
      const Index v = r * width + c;
      if (c + 1 < width) edges.push_back({v, v + 1});
      if (r + 1 < height) edges.push_back({v, v + width});
    }
  }
  Graph g(height * width, std::move(edges));
  g.grid_ = GridShape{height, width};
  return g;
}

Index neighbor_count(const Graph& g, Index n) { return g.neighbor_count(n); }

}  // namespace relaxden
