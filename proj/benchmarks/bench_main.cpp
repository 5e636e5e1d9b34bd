#include "hhgsq/analysis.hpp"
#include "hhgsq/dipole.hpp"
#include "hhgsq/fockspace.hpp"
#include "hhgsq/matrix_exp.hpp"
#include "hhgsq/quadgen.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace hhgsq;

namespace {

QuadraticGenerator random_pair(double scale) {
    std::mt19937 rng(1);
    std::normal_distribution<double> nd(0.0, scale);
    ModeGrid grid;
    grid.q_max = 2;
    grid.fundamental = 0.057;
    grid.coupling_scale = 1e-8;
    QuadraticGenerator g = QuadraticGenerator::zero(grid);
    for (auto* m : {&g.F, &g.G, &g.H, &g.J}) {
        for (Eigen::Index i = 0; i < m->size(); ++i) m->data()[i] = cplx(nd(rng), nd(rng));
    }
    return g;
}

void BM_DenseExpm(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    std::mt19937 rng(2);
    std::normal_distribution<double> nd(0.0, 0.3);
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = cplx(nd(rng), nd(rng)) / std::sqrt(double(n));
    for (auto _ : state) benchmark::DoNotOptimize(expm(m));
}
BENCHMARK(BM_DenseExpm)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_EvolveTwoMode(benchmark::State& state) {
    const QuadraticGenerator g = random_pair(0.1);
    const int nc = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(evolve_vacuum(g, nc, GeneratorMode::as_is));
}
BENCHMARK(BM_EvolveTwoMode)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_WignerGrid(benchmark::State& state) {
    const FockState s = evolve_vacuum(random_pair(0.1), 50, GeneratorMode::as_is);
    const DensityOperator rho = reduced_density(s, 0);
    for (auto _ : state) benchmark::DoNotOptimize(wigner_function(rho, WignerGridSpec{}, 1));
}
BENCHMARK(BM_WignerGrid)->Unit(benchmark::kMillisecond);

void BM_SfaSample(benchmark::State& state) {
    const RunConfig cfg;
    const SfaModel model(cfg.laser(), cfg.atom);
    const SfaOptions opts;
    const double t = 0.5 * cfg.laser().t_end();
    for (auto _ : state) benchmark::DoNotOptimize(model.matrix_elements(t, opts));
}
BENCHMARK(BM_SfaSample)->Unit(benchmark::kMicrosecond);

void BM_Generator(benchmark::State& state) {
    RunConfig cfg;
    cfg.numerics.n_samples = 2048;
    cfg.numerics.threads = 1;
    Pipeline p(cfg);
    const DipoleSeries& series = p.dipoles();
    const std::vector<double>& env = p.envelope();
    GeneratorOptions opts;
    opts.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(generator_coefficients(series, p.grid(), 1.0, env, opts, nullptr));
    }
}
BENCHMARK(BM_Generator)->Unit(benchmark::kMillisecond)->Iterations(2);

} // namespace

BENCHMARK_MAIN();
