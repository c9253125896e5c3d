#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "sublinear/axioms.hpp"
#include "sublinear/envelope.hpp"
#include "sublinear/joint.hpp"
#include "sublinear/lln.hpp"
#include "sublinear/maximal.hpp"
#include "sublinear/mle.hpp"

using namespace sublinear;

namespace {

const BoundedLipschitzFn kWiggle{[](double x) { return std::sin(7.0 * x) - 0.1 * x * x; }, 7.4};

void BM_EvalMaximal(benchmark::State& state) {
    const MaximalDist d(-2.0, 2.0);
    const GridSpec g{4.0 / static_cast<double>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_maximal(d, kWiggle, g));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvalMaximal)->RangeMultiplier(10)->Range(100, 1000000);

void BM_ConvolveScaled(benchmark::State& state) {
    const MaximalDist d(0.0, 1.0);
    const GridSpec g{1.0 / static_cast<double>(state.range(0))};
    for (auto _ : state) {
        benchmark::DoNotOptimize(convolve_scaled(d, 1.0, 2.0, kWiggle, g));
    }
}
BENCHMARK(BM_ConvolveScaled)->Arg(100)->Arg(1000);

void BM_ComposeIndependent(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const JointSpec j(std::vector<Marginal>(n, MaximalDist(0.0, 1.0)));
    const NaryLipschitzFn f{[](std::span<const double> x) {
                                double s = 0.0;
                                for (double v : x) s += v * v;
                                return -s;
                            },
                            std::vector<double>(n, 2.0)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose_independent(j, f, GridSpec{0.1}));
    }
}
BENCHMARK(BM_ComposeIndependent)->DenseRange(1, 5);

void BM_VerifyAxioms(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_axioms({static_cast<std::size_t>(state.range(0)), 1, std::nullopt}));
    }
}
BENCHMARK(BM_VerifyAxioms)->Arg(1000);

void BM_SimulatePath(benchmark::State& state) {
    const MaximalDist d(-1.0, 1.0);
    const auto pol = MeanPolicy::random({-1.0, 0.0, 1.0});
    const SimConfig cfg{static_cast<std::size_t>(state.range(0)), 10, 7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_path(d, pol, NoiseSpec::uniform(0.3), cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}
BENCHMARK(BM_SimulatePath)->Arg(10000);

void BM_RateCheck(benchmark::State& state) {
    const MaximalDist d(-1.0, 1.0);
    const std::vector<MeanPolicy> pols{MeanPolicy::constant(-1.0), MeanPolicy::constant(0.0),
                                       MeanPolicy::constant(1.0), MeanPolicy::periodic({-1.0, 1.0})};
    const std::size_t sched[] = {100, 1000, 10000};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            rate_check(d, pols, NoiseSpec::uniform(0.3), {10000, static_cast<std::size_t>(state.range(0)), 1}, sched));
    }
}
BENCHMARK(BM_RateCheck)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_MinimaxOracle(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
    for (auto& x : xs) x = u(rng);
    const SampleSet s(xs);
    std::vector<double> grid = xs;
    for (int i = 0; i < 20; ++i) grid.push_back(2.0 * u(rng));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_minimax_oracle(s, grid));
    }
}
BENCHMARK(BM_MinimaxOracle)->Arg(10)->Arg(50);

void BM_RollingVariance(benchmark::State& state) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd(0.0, 0.01);
    std::vector<double> z(20000);
    for (auto& v : z) v = nd(rng);
    const TimeSeries ts(z);
    const EnvelopeConfig cfg{static_cast<std::size_t>(state.range(0)), 50, true};
    for (auto _ : state) {
        benchmark::DoNotOptimize(variance_envelope(rolling_local_variance(ts, cfg)));
    }
}
BENCHMARK(BM_RollingVariance)->Arg(60)->Arg(500);

}  // namespace

BENCHMARK_MAIN();
