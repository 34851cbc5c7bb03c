#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "eigenproj/applications.hpp"
#include "eigenproj/components.hpp"
#include "eigenproj/eigenstructure.hpp"
#include "eigenproj/oracle.hpp"

using namespace eigenproj;

namespace {

// A zero eigenvalue, a 2x2 Jordan block at 1 and simple eigenvalues off the
// real axis, so every routine sees a singular and a defective eigenvalue.
oracle::Case make_case(std::size_t n) {
  oracle::JordanSpec spec;
  spec.seed = n;
  spec.max_similarity_condition = 1e6;
  spec.blocks.push_back({0.0, {1}});
  spec.blocks.push_back({1.0, {2}});
  for (std::size_t i = 3; i < n; ++i) {
    const double re = -2.0 + 0.5 * static_cast<double>(i % 9);
    const double im = 1.0 + static_cast<double>(i / 9);
    spec.blocks.push_back({Complex(re, im), {1}});
  }
  return oracle::build_case(spec);
}

Matrix random_dense(std::size_t n) {
  std::mt19937_64 rng(n);
  std::normal_distribution<double> d;
  std::vector<Complex> v(n * n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return Matrix(n, std::move(v));
}

void BM_eigenvalues_raw(benchmark::State& state) {
  const Matrix a = random_dense(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues_raw(a));
}

void BM_analyze(benchmark::State& state) {
  const auto c = make_case(static_cast<std::size_t>(state.range(0)));
  const ToleranceConfig cfg{1e-6, 1e-10, 1e-8};
  for (auto _ : state) benchmark::DoNotOptimize(analyze(c.a, cfg));
}

void BM_all_components(benchmark::State& state) {
  const auto c = make_case(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(all_components(c.a, c.spectrum));
}

void BM_eigenprojection_zero(benchmark::State& state) {
  const auto c = make_case(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigenprojection_zero(c.a, c.spectrum));
}

void BM_components_by_nullspace(benchmark::State& state) {
  const auto c = make_case(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::components_by_nullspace(c.a, c.spectrum));
}

void BM_drazin_inverse(benchmark::State& state) {
  const auto c = make_case(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(drazin_inverse(c.a, c.spectrum));
}

}  // namespace

BENCHMARK(BM_eigenvalues_raw)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_analyze)->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(BM_all_components)->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(BM_eigenprojection_zero)->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(BM_components_by_nullspace)->RangeMultiplier(2)->Range(8, 32);
BENCHMARK(BM_drazin_inverse)->RangeMultiplier(2)->Range(8, 32);
BENCHMARK_MAIN();
