// Serial reference against the OpenMP path for the three heaviest kernels. Thread count
// follows BGX_THREADS. Each parallel run is checked against the serial result first.

#include <benchmark/benchmark.h>

#include <cstdio>
#include <random>
#include <stdexcept>

#include "bgx/formops.hpp"
#include "bgx/grid.hpp"
#include "bgx/sobolev.hpp"

using namespace bgx;

namespace {

PolyGaussField field(int d, int p) {
    std::mt19937_64 rng(11);
    RandomFieldOptions opt;
    opt.shift = 0.3;
    return random_polygauss(d, p, rng, opt);
}

std::vector<double> points(int d, int count) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> xs(static_cast<std::size_t>(d) * count);
    for (auto& v : xs) v = U(rng);
    return xs;
}

Exec mode(const benchmark::State& s) { return s.range(0) ? Exec::parallel : Exec::serial; }

void same(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) throw std::runtime_error("serial and parallel results differ");
}

void BM_GridSample(benchmark::State& st) {
    const auto u = field(3, 1);
    const int N = static_cast<int>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(GridField::sample(u, 6.0, N, mode(st)).data().data());
    st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_ApplySymbol(benchmark::State& st) {
    const auto u = field(3, 1);
    const InvariantSymbol m(NormSpec{3, 1, -0.3});
    const auto xs = points(3, static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(apply_symbol_at(u, m, 1, xs, mode(st)).data());
    st.SetLabel(st.range(0) ? "parallel" : "serial");
}

void BM_KnappSteinPV(benchmark::State& st) {
    const auto u = field(2, 1);
    const auto xs = points(2, static_cast<int>(st.range(1)));
    for (auto _ : st) benchmark::DoNotOptimize(knapp_stein_pv(u, -0.4, xs, mode(st)).data());
    st.SetLabel(st.range(0) ? "parallel" : "serial");
}

}  // namespace

BENCHMARK(BM_GridSample)->ArgsProduct({{0, 1}, {32, 64}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplySymbol)->ArgsProduct({{0, 1}, {4, 16}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnappSteinPV)->ArgsProduct({{0, 1}, {4, 16}})->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    // the parallel path must reproduce the serial reference exactly
    {
        const auto u = field(3, 1);
        same(GridField::sample(u, 6.0, 32, Exec::serial).data(), GridField::sample(u, 6.0, 32, Exec::parallel).data());
        const InvariantSymbol m(NormSpec{3, 1, -0.3});
        const auto xs = points(3, 4);
        same(apply_symbol_at(u, m, 1, xs, Exec::serial), apply_symbol_at(u, m, 1, xs, Exec::parallel));
        const auto v = field(2, 1);
        const auto ys = points(2, 4);
        same(knapp_stein_pv(v, -0.4, ys, Exec::serial), knapp_stein_pv(v, -0.4, ys, Exec::parallel));
        std::printf("threads: %d; serial and parallel results identical\n", thread_cap());
    }
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
