// Microbenchmarks for the per-iteration kernels: Hessian matvec, spectral
// split, preconditioner build/apply. The CLI's `bench` subcommand measures
// whole interior-point iterations; these isolate the pieces.

#include <benchmark/benchmark.h>

#include "specsdp/hessian.hpp"
#include "specsdp/matcomp.hpp"
#include "specsdp/preconditioner.hpp"
#include "specsdp/rng.hpp"
#include "specsdp/scaling.hpp"

namespace {

using namespace specsdp;

struct Setup {
  ConstraintSet cs;
  Matrix W;
  SpectralSplit sp;
  Vector y;

  static Setup make(Index p, Index ktilde) {
    MatrixCompletionInstance inst = generate(p, p, 1, 25 * 2 * p, /*seed=*/7);
    ConstraintSet cs = to_sdp(inst);
    const Index n = cs.n();

    Rng rng(11);
    Matrix G(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) G(i, j) = rng.normal();
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ();
    Vector eigs(n);
    for (Index i = 0; i < n; ++i)
      eigs[i] = 1.0 + 1.0 * static_cast<double>(i) / static_cast<double>(n);
    for (Index i = 0; i < ktilde; ++i) eigs[i] = 1e5 / (1.0 + i);
    Matrix W = Q * eigs.asDiagonal() * Q.transpose();
    W = 0.5 * (W + W.transpose()).eval();

    SpectralSplit sp = split(W, ktilde);
    Vector y(cs.m());
    for (Index i = 0; i < cs.m(); ++i) y[i] = rng.normal();
    return Setup{std::move(cs), std::move(W), std::move(sp), std::move(y)};
  }
};

void BM_HessMatvec(benchmark::State& state) {
  Setup s = Setup::make(state.range(0), 2);
  HessianOperator op(s.cs, s.W);
  for (auto _ : state) {
    Vector out = op(s.y);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_HessMatvec)->Arg(25)->Arg(50)->Arg(100);

void BM_SpectralSplit(benchmark::State& state) {
  Setup s = Setup::make(state.range(0), 2);
  for (auto _ : state) {
    SpectralSplit sp = split(s.W, 2);
    benchmark::DoNotOptimize(sp.Zf.data());
  }
}
BENCHMARK(BM_SpectralSplit)->Arg(25)->Arg(50)->Arg(100);

void BM_AugBuild(benchmark::State& state) {
  Setup s = Setup::make(state.range(0), 2);
  for (auto _ : state) {
    AugPreconditioner prec(s.cs, s.sp);
    benchmark::DoNotOptimize(&prec);
  }
}
BENCHMARK(BM_AugBuild)->Arg(25)->Arg(50)->Arg(100);

void BM_AugApply(benchmark::State& state) {
  Setup s = Setup::make(state.range(0), 2);
  AugPreconditioner prec(s.cs, s.sp);
  for (auto _ : state) {
    Vector out = prec.apply(s.y);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_AugApply)->Arg(25)->Arg(50)->Arg(100);

void BM_SmwBuild(benchmark::State& state) {
  Setup s = Setup::make(state.range(0), 2);
  for (auto _ : state) {
    SmwPreconditioner prec(s.cs, s.sp);
    benchmark::DoNotOptimize(&prec);
  }
}
BENCHMARK(BM_SmwBuild)->Arg(25)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
