#include <benchmark/benchmark.h>

#include "latred/clll.hpp"
#include "latred/linalg.hpp"
#include "latred/metrics.hpp"
#include "latred/mimo.hpp"
#include "latred/reducer.hpp"
#include "latred/rng.hpp"

using namespace latred;

static ComplexMatrix channel(int n, std::uint64_t idx) {
    Rng rng = Rng::substream(42, "bench", {idx});
    return gen_channel(n, rng);
}

static void BM_Svd(benchmark::State& state) {
    const ComplexMatrix H = channel(static_cast<int>(state.range(0)), 0);
    for (auto _ : state) benchmark::DoNotOptimize(svd(H));
}
BENCHMARK(BM_Svd)->Arg(4)->Arg(8);

static void BM_NumericRank(benchmark::State& state) {
    const ComplexMatrix H = channel(static_cast<int>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(numeric_rank(H));
}
BENCHMARK(BM_NumericRank)->Arg(4)->Arg(8);

static void BM_Clll(benchmark::State& state) {
    const ComplexMatrix H = channel(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(clll_reduce(H, 0.99));
}
BENCHMARK(BM_Clll)->Arg(4)->Arg(8);

static void BM_RoundProcedure(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ComplexMatrix H = channel(n, 3);
    const CLLLResult cl = clll_reduce(H, 0.99);
    const SvdFactors f = svd(cl.H0);
    const ComplexMatrix Q1 = f.U * f.V.adjoint();
    const UnitaryEigFactors eig = eig_unitary(Q1);
    const ComplexMatrix Q0 = build_start(eig.V1, eig.d, 0, 0.7, 1.3);
    for (auto _ : state) benchmark::DoNotOptimize(round_procedure(Q0, cl.H0));
}
BENCHMARK(BM_RoundProcedure)->Arg(4)->Arg(8);

static void BM_GaussianDet(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng = Rng::substream(42, "bench-det", {0});
    GaussianIntMatrix Z(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Z(i, j) = GaussianInt(static_cast<long long>(rng.next_u64() % 7) - 3,
                                  static_cast<long long>(rng.next_u64() % 7) - 3);
    for (auto _ : state) benchmark::DoNotOptimize(gaussian_det(Z));
}
BENCHMARK(BM_GaussianDet)->Arg(4)->Arg(8);

static void BM_Search(benchmark::State& state) {
    const ComplexMatrix H = channel(static_cast<int>(state.range(0)), 4);
    const SearchConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(search(H, cfg));
}
BENCHMARK(BM_Search)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Detect(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ComplexMatrix H = channel(n, 5);
    const ReductionResult r = search(H);
    const Constellation c = Constellation::qam(4);
    const LrZfDetector det(r.Q, r.Z, c);
    Rng rng = Rng::substream(42, "bench-detect", {0});
    const auto bits = rng.bits(static_cast<std::size_t>(n) * 2);
    const auto xs = modulate(bits, c);
    ComplexVector x(n);
    for (int i = 0; i < n; ++i) x(i) = xs[static_cast<std::size_t>(i)];
    const ComplexVector y = transmit(H, x, 20.0, rng);
    for (auto _ : state) benchmark::DoNotOptimize(det.detect(y));
}
BENCHMARK(BM_Detect)->Arg(4)->Arg(8);

BENCHMARK_MAIN();
