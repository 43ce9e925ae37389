#include "relaxden/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "relaxden/errors.hpp"

namespace relaxden::io {

namespace fs = std::filesystem;

namespace {

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

Index parse_index(const std::string& text, const std::string& context) {
  Index value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw IoError(context + ": expected an integer, got '" + text + "'");
  return value;
}

unsigned char to_byte(double v) {
  const double c = std::clamp(v, -1.0, 1.0);
  return static_cast<unsigned char>(std::lround(127.5 * (c + 1.0)));
}

void write_p6(const fs::path& path, const std::vector<unsigned char>& bytes, Index height,
              Index width) {
  auto out = open_out(path, std::ios::out | std::ios::binary);
  out << "P6\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

double parse_double(const std::string& text, const std::string& context) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw IoError(context + ": expected a number, got '" + text + "'");
  }
  return value;
}

Graph Topology::build(Index num_vertices) const {
  if (kind == Kind::chain) return build_chain(num_vertices);
  if (height * width != num_vertices) {
    throw DimensionError("grid " + std::to_string(height) + "x" + std::to_string(width) +
                         " does not match " + std::to_string(num_vertices) + " nodes");
  }
  return build_grid(height, width);
}

std::string Topology::to_string() const {
  if (kind == Kind::chain) return "chain";
  return "grid:" + std::to_string(height) + "x" + std::to_string(width);
}

Topology Topology::parse(const std::string& text) {
  if (text == "chain") return chain();
  if (text.rfind("grid:", 0) == 0) {
    const auto dims = text.substr(5);
    const auto x = dims.find('x');
    if (x == std::string::npos) throw IoError("bad grid topology '" + text + "'");
    return grid(parse_index(dims.substr(0, x), "grid height"),
                parse_index(dims.substr(x + 1), "grid width"));
  }
  throw IoError("unknown topology '" + text + "'");
}

SignalFile SignalFile::from(const VectorSignal& x, Topology topology) {
  return {Kind::vector, x.dim(), 1, x.data(), topology};
}

SignalFile SignalFile::from(const MatrixSignal& x, Topology topology) {
  return {Kind::matrix, x.rows(), x.cols(), x.coordinates(), topology};
}

VectorSignal SignalFile::as_vector() const {
  if (kind != Kind::vector) throw DimensionError("signal file holds a matrix signal, not vectors");
  return VectorSignal(values);
}

MatrixSignal SignalFile::as_matrix() const {
  if (kind != Kind::matrix) throw DimensionError("signal file holds a vector signal, not matrices");
  return MatrixSignal::from_coordinates(d, k, values);
}

void write_signal(const fs::path& path, const SignalFile& file) {
  auto out = open_out(path);
  out << "# relaxden signal\n";
  out << "N=" << file.values.rows() << " d=" << file.d << " k=" << file.k
      << " kind=" << (file.kind == SignalFile::Kind::vector ? "vector" : "matrix")
      << " graph=" << file.topology.to_string() << '\n';
  std::string line;
  for (Index n = 0; n < file.values.rows(); ++n) {
    line.clear();
    for (Index c = 0; c < file.values.cols(); ++c) {
      if (c) line += ' ';
      line += format_double(file.values(n, c));
    }
    line += '\n';
    out << line;
  }
  if (!out) throw IoError("failed writing " + path.string());
}

SignalFile read_signal(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  if (line.rfind("# relaxden signal", 0) != 0) {
    throw IoError(path.string() + ": missing '# relaxden signal' header");
  }
  if (!std::getline(in, line)) throw IoError(path.string() + ": missing shape line");
  std::map<std::string, std::string> header;
  {
    std::istringstream fields(line);
    std::string token;
    while (fields >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw IoError(path.string() + ": bad header token '" + token + "'");
      header[token.substr(0, eq)] = token.substr(eq + 1);
    }
  }
  for (const char* key : {"N", "d", "k", "kind", "graph"}) {
    if (!header.count(key)) throw IoError(path.string() + ": header lacks '" + key + "'");
  }
  SignalFile file;
  const Index n = parse_index(header["N"], path.string() + " N");
  file.d = parse_index(header["d"], path.string() + " d");
  file.k = parse_index(header["k"], path.string() + " k");
  if (header["kind"] == "vector") {
    file.kind = SignalFile::Kind::vector;
  } else if (header["kind"] == "matrix") {
    file.kind = SignalFile::Kind::matrix;
  } else {
    throw IoError(path.string() + ": unknown kind '" + header["kind"] + "'");
  }
  file.topology = Topology::parse(header["graph"]);
  if (n < 0 || file.d < 1 || file.k < 1) throw IoError(path.string() + ": invalid shape");
  const Index cols = file.d * file.k;
  file.values.resize(n, cols);
  for (Index row = 0; row < n; ++row) {
    if (!std::getline(in, line)) {
      throw IoError(path.string() + ": expected " + std::to_string(n) + " rows, got " +
                    std::to_string(row));
    }
    std::istringstream fields(line);
    std::string token;
    Index c = 0;
    while (fields >> token) {
      if (c >= cols) throw IoError(path.string() + ": too many values on row " + std::to_string(row + 1));
      file.values(row, c++) = parse_double(token, path.string() + " row " + std::to_string(row + 1));
    }
    if (c != cols) {
      throw IoError(path.string() + ": row " + std::to_string(row + 1) + " has " +
                    std::to_string(c) + " values, expected " + std::to_string(cols));
    }
  }
  return file;
}

void write_ppm(const fs::path& path, const VectorSignal& rgb, Index height, Index width) {
  if (rgb.dim() != 3 || rgb.size() != height * width) {
    throw DimensionError("write_ppm: expected a " + std::to_string(height) + "x" +
                         std::to_string(width) + " image with 3 channels");
  }
  std::vector<unsigned char> bytes(static_cast<std::size_t>(rgb.size() * 3));
  for (Index v = 0; v < rgb.size(); ++v)
    for (Index ch = 0; ch < 3; ++ch) bytes[static_cast<std::size_t>(3 * v + ch)] = to_byte(rgb.data()(v, ch));
  write_p6(path, bytes, height, width);
}

std::pair<VectorSignal, GridShape> read_ppm(const fs::path& path) {
  auto in = open_in(path, std::ios::in | std::ios::binary);
  std::string magic;
  in >> magic;
  if (magic != "P6") throw IoError(path.string() + ": not a binary PPM (P6)");
  Index header[3];
  for (auto& value : header) {
    in >> std::ws;
    while (in.peek() == '#') {
      std::string comment;
      std::getline(in, comment);
      in >> std::ws;
    }
    in >> value;
    if (!in) throw IoError(path.string() + ": malformed PPM header");
  }
  const Index width = header[0];
  const Index height = header[1];
  if (header[2] != 255 || width < 1 || height < 1) {
    throw IoError(path.string() + ": only 8-bit PPM images are supported");
  }
  in.get();  // single whitespace before the raster
  std::vector<unsigned char> bytes(static_cast<std::size_t>(width * height * 3));
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(bytes.size())) {
    throw IoError(path.string() + ": truncated PPM raster");
  }
  Eigen::MatrixXd data(width * height, 3);
  for (Index v = 0; v < width * height; ++v)
    for (Index ch = 0; ch < 3; ++ch)
      data(v, ch) = static_cast<double>(bytes[static_cast<std::size_t>(3 * v + ch)]) / 127.5 - 1.0;
  return {VectorSignal(std::move(data)), GridShape{height, width}};
}

void write_error_map(const fs::path& path, const VectorSignal& rounded, const VectorSignal& truth,
                     Index height, Index width) {
  if (rounded.dim() != 3 || truth.dim() != 3 || rounded.size() != height * width ||
      truth.size() != rounded.size()) {
    throw DimensionError("write_error_map: shapes do not match a 3-channel image");
  }
  std::vector<unsigned char> bytes(static_cast<std::size_t>(rounded.size() * 3));
  for (Index v = 0; v < rounded.size(); ++v)
    for (Index ch = 0; ch < 3; ++ch)
      bytes[static_cast<std::size_t>(3 * v + ch)] =
          rounded.data()(v, ch) != truth.data()(v, ch) ? 255 : 0;
  write_p6(path, bytes, height, width);
}

void write_key_values(const fs::path& path, const KeyValues& entries) {
  auto out = open_out(path);
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

std::map<std::string, std::string> read_key_values(const fs::path& path) {
  auto in = open_in(path);
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw IoError(path.string() + ": malformed line '" + line + "'");
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

}  // namespace relaxden::io
