#include <benchmark/benchmark.h>

#include <random>

#include "abeloid/higgs.hpp"
#include "abeloid/koszul.hpp"
#include "abeloid/linalg.hpp"
#include "abeloid/poly.hpp"
#include "abeloid/random.hpp"

using namespace abeloid;

namespace {

FieldPtr qp(int prec = 16) {
  FieldConfig cfg;
  cfg.p = 5;
  cfg.precision = prec;
  return Field::make(cfg);
}

}  // namespace

static void BM_ScalarMul(benchmark::State& state) {
  FieldPtr f = qp();
  Scalar a = Scalar::from_rational(f, 123456789, 1024);
  Scalar b = Scalar::from_rational(f, 987654321, 7);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ScalarMul);

static void BM_PadicLog(benchmark::State& state) {
  FieldPtr f = qp();
  Scalar a = Scalar::from_integer(f, 1 + 5 * 17);
  for (auto _ : state) benchmark::DoNotOptimize(padic_log(a));
}
BENCHMARK(BM_PadicLog);

static void BM_Charpoly(benchmark::State& state) {
  FieldPtr f = qp();
  std::mt19937_64 rng(1);
  MatrixK m = random_integral_matrix(f, static_cast<int>(state.range(0)),
                                     static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(charpoly(m));
}
BENCHMARK(BM_Charpoly)->Arg(4)->Arg(6);

static void BM_KernelBasis(benchmark::State& state) {
  FieldPtr f = qp();
  std::mt19937_64 rng(2);
  MatrixK m = random_integral_matrix(f, 8, 12, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_basis(m));
}
BENCHMARK(BM_KernelBasis);

static void BM_KoszulDims(benchmark::State& state) {
  FieldPtr f = qp();
  std::mt19937_64 rng(3);
  std::vector<Scalar> gammas;
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i)
    gammas.push_back(random_principal_unit(f, rng));
  for (auto _ : state) benchmark::DoNotOptimize(koszul_cohomology_dims(gammas));
}
BENCHMARK(BM_KoszulDims)->Arg(3)->Arg(5);

static void BM_DecomposeRep(benchmark::State& state) {
  FieldPtr f = qp();
  std::mt19937_64 rng(4);
  ConstructedRep made = random_block_rep(f, 1, {2, 1}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_rep(made.rep));
}
BENCHMARK(BM_DecomposeRep);

static void BM_RoundTrip(benchmark::State& state) {
  FieldPtr f = qp();
  std::mt19937_64 rng(5);
  AbeloidModel model = random_model(f, 1, rng);
  ConstructedRep made = random_block_rep(f, 1, {2, 1}, rng);
  for (auto _ : state) {
    HiggsModel h = rep_to_higgs(made.rep, model);
    benchmark::DoNotOptimize(higgs_to_rep(h, model));
  }
}
BENCHMARK(BM_RoundTrip);

BENCHMARK_MAIN();
