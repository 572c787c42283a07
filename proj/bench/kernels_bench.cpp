// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "mimohi/kernels.hpp"

namespace {

using namespace mimohi;

struct Workload {
  ComplexMatrix ys;
  ComplexMatrix centers;
  RealVector nu;
  RealMatrix theta;
  kernels::Labels labels;
  RealMatrix loglik;
  RealMatrix alpha;

  Workload(std::size_t t, std::size_t nr, std::size_t k) {
    RngStream rng(7, 0);
    ys = sample_complex_gaussian(rng, nr, t, 1.0);
    centers = sample_complex_gaussian(rng, nr, k, 1.0);
    nu = RealVector::Constant(static_cast<Eigen::Index>(k), 0.5);
    theta = RealMatrix::Constant(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k),
                                 0.1 / static_cast<double>(k));
    theta.diagonal().array() += 0.9;
    labels = kernels::serial::nearest_center(ys, centers);
    loglik = kernels::serial::gaussian_loglik(ys, centers, nu);
    alpha = kernels::serial::responsibilities(loglik, theta, labels, 1e-8);
  }
};

constexpr std::size_t kNr = 8;
constexpr std::size_t kClasses = 16;

template <class Fn>
void run(benchmark::State& state, Fn fn) {
  const Workload w(static_cast<std::size_t>(state.range(0)), kNr, kClasses);
  for (auto _ : state) benchmark::DoNotOptimize(fn(w));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_NearestSerial(benchmark::State& s) {
  run(s, [](const Workload& w) { return kernels::serial::nearest_center(w.ys, w.centers); });
}
void BM_NearestOmp(benchmark::State& s) {
  run(s, [](const Workload& w) { return kernels::omp::nearest_center(w.ys, w.centers); });
}
void BM_LoglikSerial(benchmark::State& s) {
  run(s, [](const Workload& w) { return kernels::serial::gaussian_loglik(w.ys, w.centers, w.nu); });
}
void BM_LoglikOmp(benchmark::State& s) {
  run(s, [](const Workload& w) { return kernels::omp::gaussian_loglik(w.ys, w.centers, w.nu); });
}
void BM_RespSerial(benchmark::State& s) {
  run(s, [](const Workload& w) {
    return kernels::serial::responsibilities(w.loglik, w.theta, w.labels, 1e-8);
  });
}
void BM_RespOmp(benchmark::State& s) {
  run(s, [](const Workload& w) {
    return kernels::omp::responsibilities(w.loglik, w.theta, w.labels, 1e-8);
  });
}
void BM_MomentsSerial(benchmark::State& s) {
  run(s, [](const Workload& w) { return kernels::serial::weighted_moments(w.alpha, w.ys); });
}
void BM_MomentsOmp(benchmark::State& s) {
  run(s, [](const Workload& w) { return kernels::omp::weighted_moments(w.alpha, w.ys); });
}

}  // namespace

BENCHMARK(BM_NearestSerial)->Arg(500)->Arg(8000)->Arg(64000);
BENCHMARK(BM_NearestOmp)->Arg(500)->Arg(8000)->Arg(64000);
BENCHMARK(BM_LoglikSerial)->Arg(500)->Arg(8000)->Arg(64000);
BENCHMARK(BM_LoglikOmp)->Arg(500)->Arg(8000)->Arg(64000);
BENCHMARK(BM_RespSerial)->Arg(500)->Arg(8000)->Arg(64000);
BENCHMARK(BM_RespOmp)->Arg(500)->Arg(8000)->Arg(64000);
BENCHMARK(BM_MomentsSerial)->Arg(500)->Arg(8000)->Arg(64000);
BENCHMARK(BM_MomentsOmp)->Arg(500)->Arg(8000)->Arg(64000);

BENCHMARK_MAIN();
