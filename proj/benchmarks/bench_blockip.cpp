// Micro benchmarks for the hot paths: banded restructuring and validation,
// Graver completion, feasibility enumeration and JSON round trips.

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "blockip/graver.hpp"
#include "blockip/io.hpp"
#include "blockip/matrix.hpp"
#include "blockip/oracle.hpp"
#include "blockip/reduce.hpp"
#include "blockip/restructure.hpp"
#include "blockip/structure.hpp"

namespace {

using namespace blockip;

long long rand_range(std::mt19937_64& rng, long long lo, long long hi) {
  return lo + static_cast<long long>(
                  rng() % static_cast<unsigned long long>(hi - lo + 1));
}

IntMatrix random_banded(std::mt19937_64& rng, Index rows, Index cols,
                        Index band) {
  IntMatrix m(rows, cols);
  for (Index j = 1; j <= cols; ++j)
    for (Index r = j; r < j + band && r <= rows; ++r)
      m.set(r, j, Int(static_cast<long>(rand_range(rng, -9, 9))));
  return m;
}

IntMatrix random_dense(std::mt19937_64& rng, Index rows, Index cols) {
  IntMatrix m(rows, cols);
  for (Index r = 1; r <= rows; ++r)
    for (Index c = 1; c <= cols; ++c) m.set(r, c, Int(static_cast<long>(rand_range(rng, -2, 2))));
  return m;
}

SubsetSumInstance bench_subsetsum() {
  SubsetSumInstance ss;
  for (long v : {7L, 11L, 19L, 23L}) ss.a.emplace_back(v);
  ss.b = 29;
  return ss;
}

void BM_restructure_multistage(benchmark::State& state) {
  const auto tau = static_cast<Index>(state.range(0));
  const std::vector<Index> sigma(static_cast<std::size_t>(tau), 2);
  Index s_prod = 1;
  for (Index i = 0; i < tau; ++i) s_prod *= 3;
  std::mt19937_64 rng(7);
  const IntMatrix a = random_banded(rng, s_prod, s_prod - 1, 2);
  for (auto _ : state) {
    RestructureResult r = to_multistage(a, sigma, Band::Bi);
    benchmark::DoNotOptimize(r.matrix);
  }
  state.SetComplexityN(static_cast<int64_t>(s_prod));
}
BENCHMARK(BM_restructure_multistage)->DenseRange(1, 5)->Complexity();

void BM_validate_multistage(benchmark::State& state) {
  const auto tau = static_cast<Index>(state.range(0));
  const std::vector<Index> sigma(static_cast<std::size_t>(tau), 2);
  Index s_prod = 1;
  for (Index i = 0; i < tau; ++i) s_prod *= 3;
  std::mt19937_64 rng(7);
  const IntMatrix a = random_banded(rng, s_prod, s_prod - 1, 2);
  const RestructureResult r = to_multistage(a, sigma, Band::Bi);
  for (auto _ : state) {
    bool ok = validate_multistage(r.matrix, r.profile);
    benchmark::DoNotOptimize(ok);
  }
  state.SetComplexityN(static_cast<int64_t>(s_prod));
}
BENCHMARK(BM_validate_multistage)->DenseRange(1, 5)->Complexity();

void BM_graver_completion(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  std::mt19937_64 rng(11);
  const IntMatrix a = random_dense(rng, 2, n);
  for (auto _ : state) {
    GraverSet gs = graver_basis(a, Int(20));
    benchmark::DoNotOptimize(gs.elements);
  }
}
BENCHMARK(BM_graver_completion)->DenseRange(2, 5);

void BM_feasibility_enum(benchmark::State& state) {
  const auto sigma1 = static_cast<Index>(state.range(0));
  const NfoldResult nf = build_nfold(bench_subsetsum(), sigma1);
  for (auto _ : state) {
    FeasibilityResult r = feasible_enum(nf.instance);
    benchmark::DoNotOptimize(r.feasible);
  }
}
BENCHMARK(BM_feasibility_enum)->DenseRange(1, 5);

void BM_json_round_trip(benchmark::State& state) {
  const NfoldResult nf = build_nfold(bench_subsetsum(), 2);
  const std::string text = emit_json(nf.instance);
  for (auto _ : state) {
    InstanceDocument doc = parse_json(text);
    std::string out = emit_json(doc.instance);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_json_round_trip);

}  // namespace

BENCHMARK_MAIN();
