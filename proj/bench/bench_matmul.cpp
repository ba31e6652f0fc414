// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference vs OpenMP naive vs Strassen over GF(16).

#include "agkey/gf.hpp"
#include "agkey/linalg.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using agkey::linalg::Matrix;

const agkey::gf::Field& f16()
{
    static const auto f = agkey::gf::Field::make({2, 4, {1, 1, 0, 0, 1}});
    return *f;
}

Matrix random_square(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    Matrix m(f16(), n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = agkey::gf::Element{static_cast<std::uint32_t>(rng() % 16)};
    return m;
}

void BM_Reference(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_square(n, 1), b = random_square(n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(agkey::linalg::matmul_reference(a, b));
}

void BM_Naive(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_square(n, 1), b = random_square(n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(agkey::linalg::matmul_naive(a, b));
}

void BM_Strassen(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_square(n, 1), b = random_square(n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(agkey::linalg::matmul_strassen(a, b, agkey::linalg::kDefaultStrassenCrossover));
}

} // namespace

BENCHMARK(BM_Reference)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Naive)->Arg(128)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Strassen)->Arg(128)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
