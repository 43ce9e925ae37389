#include <benchmark/benchmark.h>

#include <random>

#include "relaxden/binary_tv.hpp"
#include "relaxden/matrix_kernels.hpp"
#include "relaxden/stiefel_tik.hpp"
#include "relaxden/stiefel_tv.hpp"
#include "relaxden/synthdata.hpp"
#include "relaxden/tv_prox.hpp"

using namespace relaxden;

namespace {

Eigen::VectorXd noisy_steps(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.5);
  Eigen::VectorXd z(n);
  for (Index i = 0; i < n; ++i) z(i) = (i / 50 % 2 ? 1.0 : -1.0) + noise(rng);
  return z;
}

void BM_TvProxChain(benchmark::State& state) {
  const Index n = state.range(0);
  const Eigen::VectorXd z = noisy_steps(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(tv_prox_chain(z, 0.5));
  state.SetComplexityN(n);
}
BENCHMARK(BM_TvProxChain)->RangeMultiplier(4)->Range(64, 65536)->Complexity();

void BM_TvProxGrid(benchmark::State& state) {
  const Index side = state.range(0);
  const Graph g = build_grid(side, side);
  const Eigen::VectorXd z = noisy_steps(side * side, 2);
  TvProxConfig cfg;
  cfg.gamma = 0.5;
  cfg.scale_gap = true;
  cfg.inner_tol = 1e-8;
  for (auto _ : state) benchmark::DoNotOptimize(tv_prox_graph(z, g, cfg));
}
BENCHMARK(BM_TvProxGrid)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ProjectShiftedPsd(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  const Index p = state.range(0);
  Eigen::MatrixXd a(p, p);
  for (Index i = 0; i < a.size(); ++i) a.data()[i] = n01(rng);
  a = 0.5 * (a + a.transpose()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(project_shifted_psd(a));
}
BENCHMARK(BM_ProjectShiftedPsd)->Arg(7)->Arg(11);

void BM_BinaryTvQr(benchmark::State& state) {
  QrSpec spec;
  spec.upsample = state.range(0);
  const QrData data = gen_multicolor_qr(spec);
  const Graph g = build_grid(spec.height(), spec.width());
  for (auto _ : state) {
    const auto res = denoise_binary_tv(data.noisy, g, AdmmConfig::binary_tv_defaults());
    state.counters["iterations"] = static_cast<double>(res.report.iterations);
  }
}
BENCHMARK(BM_BinaryTvQr)->Arg(4)->Arg(10)->Unit(benchmark::kSecond)->Iterations(1);

MatrixSignal noisy_stiefel(StiefelSignalSpec::Profile profile, Index length) {
  StiefelSignalSpec spec;
  spec.profile = profile;
  spec.length = length;
  return perturb_stiefel(gen_stiefel_signal(spec), spec.kappa, spec.seed + 100);
}

void BM_StiefelTv(benchmark::State& state) {
  const Index n = state.range(0);
  const MatrixSignal y = noisy_stiefel(StiefelSignalSpec::Profile::piecewise_constant, n);
  AdmmConfig cfg = AdmmConfig::stiefel_tv_defaults();
  cfg.max_iter = 100'000;
  for (auto _ : state) {
    const auto res = denoise_stiefel_tv(y, build_chain(n), cfg);
    state.counters["iterations"] = static_cast<double>(res.report.iterations);
  }
}
BENCHMARK(BM_StiefelTv)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_StiefelTikhonov(benchmark::State& state) {
  const Index n = state.range(0);
  const MatrixSignal y = noisy_stiefel(StiefelSignalSpec::Profile::smooth, n);
  for (auto _ : state) {
    const auto res =
        denoise_stiefel_tikhonov(y, build_chain(n), AdmmConfig::stiefel_tikhonov_defaults());
    state.counters["iterations"] = static_cast<double>(res.report.iterations);
  }
}
BENCHMARK(BM_StiefelTikhonov)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
