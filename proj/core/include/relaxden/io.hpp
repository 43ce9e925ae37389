#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "relaxden/graph.hpp"
#include "relaxden/signal.hpp"

namespace relaxden::io {

/// Graph topology recorded next to a signal so it can be rebuilt on load.
struct Topology {
  enum class Kind { chain, grid };
  Kind kind = Kind::chain;
  Index height = 1;  // grid only
  Index width = 1;

  Graph build(Index num_vertices) const;
  std::string to_string() const;
  static Topology parse(const std::string& text);
  static Topology chain() { return {}; }
  static Topology grid(Index h, Index w) { return {Kind::grid, h, w}; }
};

/**
 * Text signal file:
 *
 *   # relaxden signal
 *   N=<nodes> d=<rows> k=<cols> kind=<vector|matrix> graph=<chain|grid:HxW>
 *   <one node per line, d*k values, node matrix flattened row-major>
 *
 * Values are written in shortest round-trip form, so load(save(x)) == x bit for bit.
 */
struct SignalFile {
  enum class Kind { vector, matrix };
  Kind kind = Kind::vector;
  Index d = 0;
  Index k = 1;
  Eigen::MatrixXd values;  // N x (d*k)
  Topology topology;

  static SignalFile from(const VectorSignal& x, Topology topology);
  static SignalFile from(const MatrixSignal& x, Topology topology);
  VectorSignal as_vector() const;
  MatrixSignal as_matrix() const;
};

void write_signal(const std::filesystem::path& path, const SignalFile& file);
SignalFile read_signal(const std::filesystem::path& path);

/// Binary P6, 8-bit: channel value v -> round(127.5 (clamp(v, -1, 1) + 1)).
void write_ppm(const std::filesystem::path& path, const VectorSignal& rgb, Index height,
               Index width);
/// Inverse affine map c -> c / 127.5 - 1. Returns the signal and (height, width).
std::pair<VectorSignal, GridShape> read_ppm(const std::filesystem::path& path);

/// Per-channel disagreement mask (255 where rounded != truth, 0 elsewhere) as P6.
void write_error_map(const std::filesystem::path& path, const VectorSignal& rounded,
                     const VectorSignal& truth, Index height, Index width);

/// Ordered key=value document; '#' starts a comment line.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

void write_key_values(const std::filesystem::path& path, const KeyValues& entries);
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);
double parse_double(const std::string& text, const std::string& context);

}  // namespace relaxden::io
