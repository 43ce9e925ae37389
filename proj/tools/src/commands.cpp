#include "relaxden_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "relaxden/binary_tv.hpp"
#include "relaxden/errors.hpp"
#include "relaxden/io.hpp"
#include "relaxden/metrics.hpp"
#include "relaxden/objectives.hpp"
#include "relaxden/stiefel_tik.hpp"
#include "relaxden/stiefel_tv.hpp"
#include "relaxden/synthdata.hpp"

namespace relaxden::cli {

namespace fs = std::filesystem;
using io::format_double;
using io::KeyValues;

std::string to_string(Model model) {
  switch (model) {
    case Model::binary_tv: return "binary-tv";
    case Model::stiefel_tv: return "stiefel-tv";
    case Model::stiefel_tik: return "stiefel-tik";
  }
  return "?";
}

Model parse_model(const std::string& name) {
  if (name == "binary-tv") return Model::binary_tv;
  if (name == "stiefel-tv") return Model::stiefel_tv;
  if (name == "stiefel-tik") return Model::stiefel_tik;
  throw ParameterError("model: expected binary-tv, stiefel-tv or stiefel-tik, got '" + name + "'");
}

namespace {

std::string join(const Eigen::VectorXd& v) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v(i));
  }
  return out;
}

long parse_long(const std::map<std::string, std::string>& kv, const std::string& key,
                const fs::path& path) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw IoError(path.string() + ": manifest lacks '" + key + "'");
  long value = 0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError(path.string() + ": '" + key + "' is not an integer");
  }
  return value;
}

std::uint64_t parse_u64(const std::map<std::string, std::string>& kv, const std::string& key,
                        const fs::path& path) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw IoError(path.string() + ": manifest lacks '" + key + "'");
  std::uint64_t value = 0;
  const auto& s = it->second;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw IoError(path.string() + ": '" + key + "' is not an unsigned integer");
  }
  return value;
}

const std::string& require_key(const std::map<std::string, std::string>& kv,
                               const std::string& key, const fs::path& path) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw IoError(path.string() + ": manifest lacks '" + key + "'");
  return it->second;
}

GenerateOptions load_manifest(const fs::path& path, GenerateOptions opts) {
  const auto kv = io::read_key_values(path);
  opts.kind = require_key(kv, "kind", path);
  opts.seed = parse_u64(kv, "seed", path);
  if (opts.kind == "qr") {
    opts.modules_h = parse_long(kv, "modules_h", path);
    opts.modules_w = parse_long(kv, "modules_w", path);
    opts.upsample = parse_long(kv, "upsample", path);
    opts.sigma = io::parse_double(require_key(kv, "sigma", path), path.string() + ": sigma");
  } else if (opts.kind == "stiefel") {
    opts.length = parse_long(kv, "length", path);
    opts.d = parse_long(kv, "d", path);
    opts.k = parse_long(kv, "k", path);
    opts.profile = require_key(kv, "profile", path);
    opts.segments = parse_long(kv, "segments", path);
    opts.smoothness =
        io::parse_double(require_key(kv, "smoothness", path), path.string() + ": smoothness");
    opts.kappa = io::parse_double(require_key(kv, "kappa", path), path.string() + ": kappa");
    opts.noise_seed = parse_u64(kv, "noise_seed", path);
  } else {
    throw IoError(path.string() + ": unknown kind '" + opts.kind + "'");
  }
  return opts;
}

io::SignalFile load_signal(const fs::path& path) {
  if (path.extension() == ".ppm") {
    auto [rgb, shape] = io::read_ppm(path);
    return io::SignalFile::from(rgb, io::Topology::grid(shape.height, shape.width));
  }
  return io::read_signal(path);
}

RoundingConfig parse_eta(const std::string& text, std::uint64_t seed) {
  if (text == "zero" || text.empty()) return RoundingConfig::zero();
  if (text == "random") return RoundingConfig::random(seed);
  std::vector<double> values;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw ParameterError("eta: expected 'zero', 'random' or a comma-separated vector, got '" +
                           text + "'");
    }
    values.push_back(v);
  }
  return RoundingConfig::fixed(Eigen::Map<Eigen::VectorXd>(values.data(),
                                                           static_cast<Index>(values.size())));
}

AdmmConfig admm_config(const DenoiseOptions& opts) {
  AdmmConfig cfg;
  switch (opts.model) {
    case Model::binary_tv: cfg = AdmmConfig::binary_tv_defaults(); break;
    case Model::stiefel_tv: cfg = AdmmConfig::stiefel_tv_defaults(); break;
    case Model::stiefel_tik: cfg = AdmmConfig::stiefel_tikhonov_defaults(); break;
  }
  if (opts.lambda) cfg.lambda = *opts.lambda;
  if (opts.rho) cfg.rho = *opts.rho;
  if (opts.max_iter) cfg.max_iter = *opts.max_iter;
  if (opts.tol) {
    cfg.tol_primal = *opts.tol;
    cfg.tol_dual = *opts.tol;
  }
  cfg.trace_stride = 10;
  cfg.validate();
  return cfg;
}

void append_report(KeyValues& kv, const SolverReport& r) {
  kv.emplace_back("status", r.converged ? "converged" : "max_iter");
  kv.emplace_back("iterations", std::to_string(r.iterations));
  kv.emplace_back("primal_residual", format_double(r.primal_residual));
  kv.emplace_back("dual_residual", format_double(r.dual_residual));
  kv.emplace_back("tol_primal", format_double(r.tol_primal));
  kv.emplace_back("tol_dual", format_double(r.tol_dual));
  kv.emplace_back("inner_iterations", std::to_string(r.inner_iterations));
  kv.emplace_back("runtime_seconds", format_double(r.runtime_seconds));
}

struct DenoiseOutcome {
  int code = kOk;
  std::optional<double> mse;
};

DenoiseOutcome denoise_binary(const DenoiseOptions& opts, const AdmmConfig& cfg,
                              const io::SignalFile& input, const std::optional<io::SignalFile>& truth,
                              KeyValues& kv) {
  const VectorSignal y = input.as_vector();
  const Graph g = input.topology.build(y.size());
  std::optional<VectorSignal> ref;
  if (truth) {
    ref = truth->as_vector();
    ref->check_shape(g);
    if (ref->dim() != y.dim()) throw DimensionError("truth: dimension differs from input");
  }
  const auto res = denoise_binary_tv(y, g, cfg, parse_eta(opts.eta, opts.seed));

  io::write_signal(opts.out / "restored.sig", io::SignalFile::from(res.relaxed, input.topology));
  io::write_signal(opts.out / "rounded.sig", io::SignalFile::from(res.rounded, input.topology));
  const bool image = input.topology.kind == io::Topology::Kind::grid && y.dim() == 3;
  if (image) {
    io::write_ppm(opts.out / "restored.ppm", res.rounded, input.topology.height,
                  input.topology.width);
  }

  DenoiseOutcome outcome;
  append_report(kv, res.report);
  kv.emplace_back("objective", format_double(objective_binary(res.relaxed, y, cfg.lambda, g)));
  kv.emplace_back("dist_to_Bd", format_double(res.dist_to_binary));
  kv.emplace_back("eta", join(res.eta_used));
  if (ref) {
    outcome.mse = metric_mse(res.relaxed, *ref);
    kv.emplace_back("mse", format_double(*outcome.mse));
    kv.emplace_back("mse_rounded", format_double(metric_mse(res.rounded, *ref)));
    kv.emplace_back("mse_noisy", format_double(metric_mse(y, *ref)));
    kv.emplace_back("pixel_accuracy", format_double(pixel_accuracy(res.rounded, *ref)));
    if (image) {
      io::write_error_map(opts.out / "error.ppm", res.rounded, *ref, input.topology.height,
                          input.topology.width);
      if (opts.upsample) {
        const Index up = *opts.upsample;
        if (up < 1 || input.topology.height % up || input.topology.width % up) {
          throw ParameterError("upsample: must divide the image size");
        }
        kv.emplace_back("module_accuracy",
                        format_double(module_accuracy(res.rounded, *ref, input.topology.height / up,
                                                      input.topology.width / up, up)));
      }
    }
  }
  outcome.code = res.report.converged ? kOk : kNonConvergence;
  return outcome;
}

DenoiseOutcome denoise_stiefel(const DenoiseOptions& opts, const AdmmConfig& cfg,
                               const io::SignalFile& input,
                               const std::optional<io::SignalFile>& truth, KeyValues& kv) {
  const MatrixSignal y = input.as_matrix();
  const Graph g = input.topology.build(y.size());
  std::optional<MatrixSignal> ref;
  if (truth) {
    ref = truth->as_matrix();
    ref->check_shape(g);
    y.check_same_shape(*ref);
  }

  DenoiseOutcome outcome;
  const MatrixSignal* restored = nullptr;
  SolverReport report;
  StiefelFeasibility feas;
  std::optional<StiefelTvResult> tv;
  std::optional<StiefelTikResult> tik;
  if (opts.model == Model::stiefel_tv) {
    tv = denoise_stiefel_tv(y, g, cfg);
    restored = &tv->relaxed;
    report = tv->report;
    feas = tv->feasibility;
    io::write_signal(opts.out / "rounded.sig",
                     io::SignalFile::from(round_to_stiefel(tv->relaxed), input.topology));
  } else {
    tik = denoise_stiefel_tikhonov(y, g, cfg);
    restored = &tik->x;
    report = tik->report;
    feas = tik->feasibility;
  }
  io::write_signal(opts.out / "restored.sig", io::SignalFile::from(*restored, input.topology));

  append_report(kv, report);
  if (tv) {
    kv.emplace_back("objective", format_double(objective_stiefel_tv(tv->relaxed, y, cfg.lambda, g)));
  } else {
    kv.emplace_back("objective",
                    format_double(objective_tikhonov(tik->x, tik->coupling, y, cfg.lambda, g)));
    const double defect = tik->coupling_defect.empty()
                              ? 0.0
                              : *std::max_element(tik->coupling_defect.begin(),
                                                  tik->coupling_defect.end());
    kv.emplace_back("coupling_defect_max", format_double(defect));
  }
  kv.emplace_back("feasibility_norm", format_double(feas.mean_norm_deviation));
  kv.emplace_back("feasibility_inner", format_double(feas.mean_inner_product));
  if (ref) {
    outcome.mse = metric_mse(*restored, *ref);
    kv.emplace_back("mse", format_double(*outcome.mse));
    kv.emplace_back("mse_noisy", format_double(metric_mse(y, *ref)));
  }
  outcome.code = report.converged ? kOk : kNonConvergence;
  return outcome;
}

DenoiseOutcome run_denoise(const DenoiseOptions& opts, std::ostream& log) {
  if (opts.out.empty()) throw ParameterError("out: an output directory is required");
  const AdmmConfig cfg = admm_config(opts);
  const auto input = load_signal(opts.in);
  std::optional<io::SignalFile> truth;
  if (opts.truth) truth = load_signal(*opts.truth);

  std::error_code ec;
  fs::create_directories(opts.out, ec);
  if (ec) throw IoError("cannot create " + opts.out.string() + ": " + ec.message());

  KeyValues kv{{"model", to_string(opts.model)},
               {"lambda", format_double(cfg.lambda)},
               {"rho", format_double(cfg.rho)},
               {"max_iter", std::to_string(cfg.max_iter)}};
  DenoiseOutcome outcome;
  try {
    outcome = opts.model == Model::binary_tv ? denoise_binary(opts, cfg, input, truth, kv)
                                             : denoise_stiefel(opts, cfg, input, truth, kv);
  } catch (const NonConvergenceError& e) {
    kv.emplace_back("status", "inner_nonconvergence");
    kv.emplace_back("inner_gap", format_double(e.achieved_gap()));
    kv.emplace_back("message", e.what());
    io::write_key_values(opts.out / "metrics.txt", kv);
    throw;
  }
  io::write_key_values(opts.out / "metrics.txt", kv);
  for (const auto& [key, value] : kv) log << key << '=' << value << '\n';
  return outcome;
}

}  // namespace

int cmd_generate(const GenerateOptions& raw, std::ostream& log) {
  const GenerateOptions opts = raw.manifest ? load_manifest(*raw.manifest, raw) : raw;
  if (opts.out.empty()) throw ParameterError("out: an output directory is required");
  std::error_code ec;
  fs::create_directories(opts.out, ec);
  if (ec) throw IoError("cannot create " + opts.out.string() + ": " + ec.message());

  KeyValues manifest{{"kind", opts.kind}, {"seed", std::to_string(opts.seed)}};
  if (opts.kind == "qr") {
    QrSpec spec;
    spec.modules_h = opts.modules_h;
    spec.modules_w = opts.modules_w;
    spec.upsample = opts.upsample;
    spec.noise_sigma = opts.sigma;
    spec.seed = opts.seed;
    const QrData data = gen_multicolor_qr(spec);
    const auto topo = io::Topology::grid(spec.height(), spec.width());
    io::write_ppm(opts.out / "truth.ppm", data.truth, spec.height(), spec.width());
    io::write_ppm(opts.out / "noisy.ppm", data.noisy, spec.height(), spec.width());
    io::write_signal(opts.out / "truth.sig", io::SignalFile::from(data.truth, topo));
    io::write_signal(opts.out / "noisy.sig", io::SignalFile::from(data.noisy, topo));
    manifest.emplace_back("modules_h", std::to_string(spec.modules_h));
    manifest.emplace_back("modules_w", std::to_string(spec.modules_w));
    manifest.emplace_back("upsample", std::to_string(spec.upsample));
    manifest.emplace_back("sigma", format_double(spec.noise_sigma));
  } else if (opts.kind == "stiefel") {
    StiefelSignalSpec spec;
    spec.length = opts.length;
    spec.d = opts.d;
    spec.k = opts.k;
    spec.profile = parse_profile(opts.profile);
    spec.segments = opts.segments;
    spec.smoothness = opts.smoothness;
    spec.kappa = opts.kappa;
    spec.seed = opts.seed;
    const std::uint64_t noise_seed = opts.noise_seed.value_or(opts.seed + 1);
    const MatrixSignal truth = gen_stiefel_signal(spec);
    const MatrixSignal noisy = perturb_stiefel(truth, spec.kappa, noise_seed);
    io::write_signal(opts.out / "truth.sig", io::SignalFile::from(truth, io::Topology::chain()));
    io::write_signal(opts.out / "noisy.sig", io::SignalFile::from(noisy, io::Topology::chain()));
    manifest.emplace_back("length", std::to_string(spec.length));
    manifest.emplace_back("d", std::to_string(spec.d));
    manifest.emplace_back("k", std::to_string(spec.k));
    manifest.emplace_back("profile", to_string(spec.profile));
    manifest.emplace_back("segments", std::to_string(spec.segments));
    manifest.emplace_back("smoothness", format_double(spec.smoothness));
    manifest.emplace_back("kappa", format_double(spec.kappa));
    manifest.emplace_back("noise_seed", std::to_string(noise_seed));
  } else {
    throw ParameterError("kind: expected qr or stiefel, got '" + opts.kind + "'");
  }
  io::write_key_values(opts.out / "manifest.txt", manifest);
  log << "wrote " << opts.kind << " data to " << opts.out.string() << '\n';
  return kOk;
}

int cmd_denoise(const DenoiseOptions& opts, std::ostream& log) {
  return run_denoise(opts, log).code;
}

int cmd_sweep(const SweepOptions& opts, std::ostream& log) {
  if (opts.grid.empty()) throw ParameterError("grid: at least one lambda is required");
  if (!opts.base.truth) throw ParameterError("truth: a sweep needs ground truth for the MSE");
  if (opts.parallel < 1) throw ParameterError("parallel: must be >= 1");
  for (double lambda : opts.grid) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw ParameterError("grid: lambda values must be positive, got " + format_double(lambda));
    }
  }
  // Validate shared settings once so a bad flag fails before any run starts.
  {
    DenoiseOptions probe = opts.base;
    probe.lambda = opts.grid.front();
    admm_config(probe);
    if (opts.base.out.empty()) throw ParameterError("out: an output directory is required");
  }

  struct RunResult {
    std::string status = "error";
    std::optional<double> mse;
    std::string message;
    int code = kOk;
  };
  std::vector<RunResult> results(opts.grid.size());
  std::vector<std::ostringstream> logs(opts.grid.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < opts.grid.size(); i = next++) {
      DenoiseOptions run = opts.base;
      run.lambda = opts.grid[i];
      run.out = opts.base.out / ("lambda_" + format_double(opts.grid[i]));
      auto& r = results[i];
      try {
        const auto outcome = run_denoise(run, logs[i]);
        r.mse = outcome.mse;
        r.code = outcome.code;
        r.status = outcome.code == kOk ? "converged" : "max_iter";
      } catch (const NonConvergenceError& e) {
        r.code = kNonConvergence;
        r.message = e.what();
      } catch (const IoError& e) {
        r.code = kIo;
        r.message = e.what();
      } catch (const std::exception& e) {
        r.code = kValidation;
        r.message = e.what();
      }
    }
  };
  const unsigned threads =
      std::min<unsigned>(opts.parallel, static_cast<unsigned>(opts.grid.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  KeyValues summary{{"model", to_string(opts.base.model)},
                    {"runs", std::to_string(opts.grid.size())}};
  std::optional<std::size_t> best;
  int worst_code = kOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const std::string tag = "run." + std::to_string(i) + ".";
    summary.emplace_back(tag + "lambda", format_double(opts.grid[i]));
    summary.emplace_back(tag + "status", r.status);
    if (r.mse) summary.emplace_back(tag + "mse", format_double(*r.mse));
    if (!r.message.empty()) summary.emplace_back(tag + "message", r.message);
    if (r.mse && (!best || *r.mse < *results[*best].mse)) best = i;
    worst_code = std::max(worst_code, r.code);
    log << "lambda=" << format_double(opts.grid[i]) << " status=" << r.status;
    if (r.mse) log << " mse=" << format_double(*r.mse);
    if (!r.message.empty()) log << " error=" << r.message;
    log << '\n';
  }
  if (best) {
    summary.emplace_back("best_lambda", format_double(opts.grid[*best]));
    summary.emplace_back("best_mse", format_double(*results[*best].mse));
    log << "best_lambda=" << format_double(opts.grid[*best])
        << " best_mse=" << format_double(*results[*best].mse) << '\n';
  }
  io::write_key_values(opts.base.out / "summary.txt", summary);
  return best ? kOk : worst_code;
}

int cmd_eval(const EvalOptions& opts, std::ostream& log) {
  const auto in = load_signal(opts.in);
  const auto truth = load_signal(opts.truth);
  KeyValues kv;
  if (in.kind == io::SignalFile::Kind::vector) {
    const VectorSignal x = in.as_vector();
    const VectorSignal t = truth.as_vector();
    kv.emplace_back("mse", format_double(metric_mse(x, t)));
    kv.emplace_back("dist_to_Bd", format_double(metric_dist_to_Bd(x)));
    if (metric_dist_to_Bd(t) == 0.0) {
      const VectorSignal rounded = threshold_round(x, Eigen::VectorXd::Zero(x.dim()));
      kv.emplace_back("pixel_accuracy", format_double(pixel_accuracy(rounded, t)));
    }
  } else {
    const MatrixSignal x = in.as_matrix();
    const MatrixSignal t = truth.as_matrix();
    const auto feas = stiefel_feasibility(x);
    kv.emplace_back("mse", format_double(metric_mse(x, t)));
    kv.emplace_back("feasibility_norm", format_double(feas.mean_norm_deviation));
    kv.emplace_back("feasibility_inner", format_double(feas.mean_inner_product));
  }
  if (opts.out) io::write_key_values(*opts.out, kv);
  for (const auto& [key, value] : kv) log << key << '=' << value << '\n';
  return kOk;
}

namespace {

void add_denoise_flags(CLI::App& app, DenoiseOptions& o, std::string& model, bool with_lambda) {
  app.add_option("--model", model, "binary-tv | stiefel-tv | stiefel-tik")->required();
  app.add_option("--in", o.in, "noisy input (.sig or .ppm)")->required();
  app.add_option("--truth", o.truth, "ground truth for metrics");
  app.add_option("--out", o.out, "output directory")->required();
  if (with_lambda) app.add_option("--lambda", o.lambda, "regularization weight");
}

void add_solver_flags(CLI::App& app, DenoiseOptions& o) {
  app.add_option("--rho", o.rho, "ADMM step size");
  app.add_option("--max-iter", o.max_iter, "outer iteration cap");
  app.add_option("--tol", o.tol, "primal and dual residual tolerance");
  app.add_option("--eta", o.eta, "rounding threshold: zero, random or a comma-separated vector");
  app.add_option("--seed", o.seed, "seed for --eta random");
  app.add_option("--upsample", o.upsample, "module size in pixels, for module accuracy");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"relaxden: convex relaxations for binary and Stiefel-valued denoising"};
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "write synthetic ground truth and noisy data");
  generate->add_option("--kind", gen.kind, "qr | stiefel");
  generate->add_option("--out", gen.out, "output directory")->required();
  generate->add_option("--manifest", gen.manifest, "rerun from a manifest.txt");
  generate->add_option("--seed", gen.seed, "generator seed");
  generate->add_option("--modules-h", gen.modules_h, "QR modules per column");
  generate->add_option("--modules-w", gen.modules_w, "QR modules per row");
  generate->add_option("--upsample", gen.upsample, "pixels per module side");
  generate->add_option("--sigma", gen.sigma, "Gaussian noise level per channel");
  generate->add_option("--length", gen.length, "Stiefel chain length");
  generate->add_option("--d", gen.d, "Stiefel ambient dimension");
  generate->add_option("--k", gen.k, "Stiefel frame size");
  generate->add_option("--profile", gen.profile, "piecewise | smooth");
  generate->add_option("--segments", gen.segments, "piecewise-constant blocks");
  generate->add_option("--smoothness", gen.smoothness, "total rotation angle of the smooth path");
  generate->add_option("--kappa", gen.kappa, "vMF concentration of the noise");
  generate->add_option("--noise-seed", gen.noise_seed, "seed of the vMF noise (default seed+1)");

  DenoiseOptions den;
  std::string den_model;
  auto* denoise = app.add_subcommand("denoise", "run a solver on a noisy signal");
  add_denoise_flags(*denoise, den, den_model, true);
  add_solver_flags(*denoise, den);

  SweepOptions sw;
  std::string sw_model;
  auto* sweep = app.add_subcommand("sweep", "run a lambda grid and report the best MSE");
  add_denoise_flags(*sweep, sw.base, sw_model, false);
  add_solver_flags(*sweep, sw.base);
  sweep->add_option("--grid", sw.grid, "comma-separated lambda values")
      ->required()
      ->delimiter(',');
  sweep->add_option("--parallel", sw.parallel, "concurrent runs");

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "compare a restoration with ground truth");
  eval->add_option("--in", ev.in, "restored signal")->required();
  eval->add_option("--truth", ev.truth, "ground truth")->required();
  eval->add_option("--out", ev.out, "metrics file to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    log << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*generate) return cmd_generate(gen, log);
    if (*denoise) {
      den.model = parse_model(den_model);
      const int code = cmd_denoise(den, log);
      if (code == kNonConvergence) err << "warning: solver stopped at max_iter without converging\n";
      return code;
    }
    if (*sweep) {
      sw.base.model = parse_model(sw_model);
      return cmd_sweep(sw, log);
    }
    if (*eval) return cmd_eval(ev, log);
  } catch (const NonConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

int run(const std::vector<std::string>& args, std::ostream& log, std::ostream& err) {
  std::vector<const char*> argv{"relaxden"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), log, err);
}

}  // namespace relaxden::cli
