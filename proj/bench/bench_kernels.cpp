#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hq/kernels.hpp"

namespace {

struct Fixture {
    std::vector<hq::cplx> weights, alphas, alphas_b;

    explicit Fixture(int k) {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (int i = 0; i < k; ++i) {
            weights.emplace_back(u(rng), u(rng));
            alphas.emplace_back(u(rng), u(rng));
            alphas_b.emplace_back(u(rng), u(rng));
        }
    }
};

const hq::Grid1D kGrid{-12.0, 12.0, 201};

template <bool Parallel>
void BM_Wigner(benchmark::State& st) {
    Fixture f(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        auto m = Parallel ? hq::parallel::wigner({f.weights, f.alphas}, kGrid, kGrid)
                          : hq::serial::wigner({f.weights, f.alphas}, kGrid, kGrid);
        benchmark::DoNotOptimize(m.data.data());
    }
}

template <bool Parallel>
void BM_Wavefunction2d(benchmark::State& st) {
    Fixture f(static_cast<int>(st.range(0)));
    for (auto _ : st) {
        auto m = Parallel ? hq::parallel::wavefunction_2d(f.weights, f.alphas, f.alphas_b, kGrid, kGrid)
                          : hq::serial::wavefunction_2d(f.weights, f.alphas, f.alphas_b, kGrid, kGrid);
        benchmark::DoNotOptimize(m.data.data());
    }
}

template <bool Parallel>
void BM_Overlap(benchmark::State& st) {
    const int k = static_cast<int>(st.range(0));
    Fixture f(2 * k);
    const std::vector<int> selected{0, 1};
    for (auto _ : st) {
        auto m = Parallel ? hq::parallel::overlap_matrix(f.alphas, 2, selected)
                          : hq::serial::overlap_matrix(f.alphas, 2, selected);
        benchmark::DoNotOptimize(m.data.data());
    }
}

}  // namespace

BENCHMARK(BM_Wigner<false>)->Name("wigner/serial")->Arg(2)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Wigner<true>)->Name("wigner/parallel")->Arg(2)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Wavefunction2d<false>)->Name("wavefunction_2d/serial")->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Wavefunction2d<true>)->Name("wavefunction_2d/parallel")->Arg(50)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Overlap<false>)->Name("overlap_matrix/serial")->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Overlap<true>)->Name("overlap_matrix/parallel")->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
