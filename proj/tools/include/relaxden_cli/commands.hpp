#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace relaxden::cli {

enum ExitCode : int { kOk = 0, kValidation = 2, kNonConvergence = 3, kIo = 4 };

enum class Model { binary_tv, stiefel_tv, stiefel_tik };
std::string to_string(Model model);
Model parse_model(const std::string& name);

struct GenerateOptions {
  std::string kind = "qr";  // qr | stiefel
  std::filesystem::path out;
  std::optional<std::filesystem::path> manifest;  // replaces every data parameter below
  std::uint64_t seed = 1;
  // qr
  long modules_h = 20;
  long modules_w = 20;
  long upsample = 10;
  double sigma = 0.70710678118654752;
  // stiefel
  long length = 200;
  long d = 3;
  long k = 2;
  std::string profile = "piecewise";
  long segments = 4;
  double smoothness = 3.14159265358979324;
  double kappa = 50.0;
  std::optional<std::uint64_t> noise_seed;  // defaults to seed + 1
};

struct DenoiseOptions {
  Model model = Model::binary_tv;
  std::filesystem::path in;
  std::optional<std::filesystem::path> truth;
  std::filesystem::path out;
  std::optional<double> lambda;  // unset: model default
  std::optional<double> rho;
  std::optional<long> max_iter;
  std::optional<double> tol;     // primal and dual
  std::string eta = "zero";      // zero | random | comma-separated vector
  std::uint64_t seed = 0;        // for eta = random
  std::optional<long> upsample;  // enables module accuracy on QR grids
};

struct SweepOptions {
  DenoiseOptions base;
  std::vector<double> grid;
  unsigned parallel = 1;
};

struct EvalOptions {
  std::filesystem::path in;
  std::filesystem::path truth;
  std::optional<std::filesystem::path> out;
};

int cmd_generate(const GenerateOptions& opts, std::ostream& log);
int cmd_denoise(const DenoiseOptions& opts, std::ostream& log);
int cmd_sweep(const SweepOptions& opts, std::ostream& log);
int cmd_eval(const EvalOptions& opts, std::ostream& log);

/// Parses argv and dispatches; errors are reported on `err` and mapped to exit codes.
int run(int argc, const char* const* argv, std::ostream& log, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& log, std::ostream& err);

}  // namespace relaxden::cli
