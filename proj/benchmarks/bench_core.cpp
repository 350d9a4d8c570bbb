#include "steenrod/classical.hpp"
#include "steenrod/diagonal.hpp"
#include "steenrod/spaces.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace steenrod;

namespace {

MatrixFp random_sparse(const PrimeField& F, std::size_t n, double density, unsigned seed)
{
    std::mt19937 rng(seed);
    std::bernoulli_distribution hit(density);
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (hit(rng))
                t.push_back({static_cast<Index>(r), static_cast<Index>(c), static_cast<long long>(1 + rng() % (F.p() - 1))});
    return MatrixFp::from_triplets(F, n, n, std::move(t));
}

std::shared_ptr<const FiniteSimplicialSet> bar(int q, int dim)
{
    return std::make_shared<const FiniteSimplicialSet>(bar_skeleton(q, dim));
}

} // namespace

static void BM_Rref(benchmark::State& state)
{
    const PrimeField F(3);
    const auto M = random_sparse(F, static_cast<std::size_t>(state.range(0)), 0.02, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(rank(F, M));
}
BENCHMARK(BM_Rref)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_PowerSpace(benchmark::State& state)
{
    const auto X = bar(3, 4);
    const int top = static_cast<int>(state.range(0));
    for (auto _ : state) {
        PowerSpace P(X, 3, top);
        benchmark::DoNotOptimize(P.size(top));
    }
}
BENCHMARK(BM_PowerSpace)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_EquivariantCohomology(benchmark::State& state)
{
    const PrimeField F(2);
    const int m = static_cast<int>(state.range(0));
    const PowerSpace P(bar(2, 3), 2, m + 1);
    const CpComplex cp = P.cp_complex(F);
    for (auto _ : state) {
        EquivariantCohomology h(cp, m);
        benchmark::DoNotOptimize(h.dim());
    }
}
BENCHMARK(BM_EquivariantCohomology)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_DiagonalSigma(benchmark::State& state)
{
    const PrimeField F(static_cast<int>(state.range(0)));
    const auto X = bar(F.p(), F.p() == 2 ? 3 : 2);
    const DenseVector u{1};
    for (auto _ : state) {
        DiagonalEngine E(F, X, {.degree_cap = F.p() + 1});
        benchmark::DoNotOptimize(E.sigma(1, u, 1));
    }
}
BENCHMARK(BM_DiagonalSigma)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_ClassicalSigma(benchmark::State& state)
{
    const PrimeField F(static_cast<int>(state.range(0)));
    const auto X = bar(F.p(), F.p() == 2 ? 3 : 2);
    const DenseVector u{1};
    for (auto _ : state)
        benchmark::DoNotOptimize(classical_sigma(F, X, 1, u, 1, F.p() + 1));
}
BENCHMARK(BM_ClassicalSigma)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
