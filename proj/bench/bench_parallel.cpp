// Serial reference kernels against their OpenMP versions.
#include "circfac/eval.hpp"
#include "circfac/pipeline.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace circfac;

namespace {

Circuit sample_circuit(int nvars, int gates)
{
    std::mt19937_64 rng(5);
    CircuitBuilder b(nullptr, nvars);
    std::vector<NodeId> pool;
    for (int i = 0; i < nvars; ++i) pool.push_back(b.var(i));
    pool.push_back(b.constant(Rational(3)));
    for (int g = 0; g < gates; ++g) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        NodeId x = pool[pick(rng)], y = pool[pick(rng)];
        pool.push_back(g % 3 == 0 ? b.mul(x, y) : b.add(x, y));
    }
    return b.finish(pool.back());
}

std::vector<std::vector<Rational>> sample_points(int nvars, int count)
{
    std::vector<std::vector<Rational>> pts;
    for (int i = 0; i < count; ++i) {
        std::vector<Rational> p;
        for (int j = 0; j < nvars; ++j) p.push_back(Rational(i + 2 * j + 1, 7));
        for (auto& q : p) q.canonicalize();
        pts.push_back(p);
    }
    return pts;
}

void BM_batch_serial(benchmark::State& st)
{
    Circuit c = sample_circuit(3, static_cast<int>(st.range(0)));
    auto pts = sample_points(3, 64);
    for (auto _ : st) benchmark::DoNotOptimize(evaluate_batch_serial(c, pts));
}

void BM_batch_parallel(benchmark::State& st)
{
    Circuit c = sample_circuit(3, static_cast<int>(st.range(0)));
    auto pts = sample_points(3, 64);
    for (auto _ : st) benchmark::DoNotOptimize(evaluate_batch(c, pts));
}

Circuit two_linear()
{
    CircuitBuilder b(nullptr, 2);
    NodeId l1 = b.add(b.var(0), b.mul(b.constant(Rational(2)), b.var(1)));
    NodeId l2 = b.sub(b.var(0), b.constant(Rational(3)));
    NodeId q = b.add(b.mul(b.var(0), b.var(1)), b.one());
    return b.finish(b.mul(b.mul(l1, l2), q));
}

void BM_candidates(benchmark::State& st)
{
    Circuit f = two_linear();
    PipelineConfig cfg;
    cfg.jobs = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(candidates_all(f, cfg));
}

}  // namespace

BENCHMARK(BM_batch_serial)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_batch_parallel)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_candidates)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
