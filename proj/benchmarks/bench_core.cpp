#include <benchmark/benchmark.h>

#include <random>

#include "tanaka/matrix.hpp"
#include "tanaka/ode_symbols.hpp"
#include "tanaka/prolongation.hpp"
#include "tanaka/pseudo_product.hpp"
#include "tanaka/spencer.hpp"
#include "tanaka/subspace.hpp"

using namespace tanaka;

static Matrix random_matrix(std::size_t rows, std::size_t cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-5, 5);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = entry(rng);
  return m;
}

static void BM_rref(benchmark::State& state) {
  std::size_t n = state.range(0);
  Matrix m = random_matrix(n, n, 42);
  for (auto _ : state) {
    Matrix copy = m;
    benchmark::DoNotOptimize(copy.rref());
  }
}
BENCHMARK(BM_rref)->Arg(8)->Arg(16)->Arg(32);

static void BM_kernel(benchmark::State& state) {
  std::size_t n = state.range(0);
  Matrix m = random_matrix(n / 2, n, 43);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(m));
}
BENCHMARK(BM_kernel)->Arg(16)->Arg(32);

static GradedLieAlgebra heisenberg3() {
  GradedLieAlgebra g(3, {-1, -1, -2});
  g.set_bracket(0, 1, {Rational(0), Rational(0), Rational(1)});
  return g;
}

static void BM_prolong_line_pair(benchmark::State& state) {
  GradedLieAlgebra m = heisenberg3();
  std::vector<Subspace> subs = {
      Subspace::span(3, {{Rational(1), Rational(0), Rational(0)}}),
      Subspace::span(3, {{Rational(0), Rational(1), Rational(0)}})};
  ProlongConstraints c = ProlongConstraints::subalgebra_list(subs);
  for (auto _ : state) benchmark::DoNotOptimize(prolong(m, c, 24));
}
BENCHMARK(BM_prolong_line_pair);

static void BM_prolong_universal(benchmark::State& state) {
  GradedLieAlgebra m = heisenberg3();
  ProlongConstraints c = ProlongConstraints::universal();
  const int cap = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(prolong(m, c, cap));
}
BENCHMARK(BM_prolong_universal)->Arg(6)->Arg(12);

static void BM_spencer_full_gl(benchmark::State& state) {
  const std::size_t n = state.range(0);
  HomSubspace a{n, n, Subspace::full(n * n)};
  for (auto _ : state) benchmark::DoNotOptimize(spencer_prolong(a, 4));
}
BENCHMARK(BM_spencer_full_gl)->Arg(2)->Arg(3);

static void BM_ode_symbol(benchmark::State& state) {
  MultiIndex kappa{{4, 3, 2}}, lambda{{4, 2, 2}};
  for (auto _ : state) benchmark::DoNotOptimize(symbol_from_tableau(tableau(kappa, lambda)));
}
BENCHMARK(BM_ode_symbol);

static void BM_ode_certificate(benchmark::State& state) {
  OdeSymbol s = symbol_from_tableau(tableau(MultiIndex{{4, 3, 2}}, MultiIndex{{4, 2, 2}}));
  for (auto _ : state) benchmark::DoNotOptimize(finiteness_certificate(s.triple, 24));
}
BENCHMARK(BM_ode_certificate);

static void BM_ode_table(benchmark::State& state) {
  MultiIndex kappa{{4, 3, 2}};
  const unsigned jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dimension_table(kappa, 24, jobs));
}
BENCHMARK(BM_ode_table)->Arg(1)->Arg(4);

BENCHMARK_MAIN();
