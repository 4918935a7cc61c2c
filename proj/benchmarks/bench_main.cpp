#include <benchmark/benchmark.h>

#include "chevmod/chevalley.hpp"
#include "chevmod/gf.hpp"
#include "chevmod/linrep.hpp"
#include "chevmod/permmod.hpp"

using namespace chevmod;
using rootsys::CartanType;

namespace {

void BM_CosetEnumeration(benchmark::State& state, CartanType type, unsigned p, unsigned k) {
  chevalley::ChevalleyGroup G(type, gf::FieldSpec::make(p, k));
  for (auto _ : state) {
    chevalley::CosetSpace X(G, 0);
    benchmark::DoNotOptimize(X.size());
  }
}
BENCHMARK_CAPTURE(BM_CosetEnumeration, sl3_f2, CartanType::A2, 2, 1);
BENCHMARK_CAPTURE(BM_CosetEnumeration, sl3_f4, CartanType::A2, 2, 2);
BENCHMARK_CAPTURE(BM_CosetEnumeration, sp4_f3, CartanType::B2, 3, 1);

void BM_Spin(benchmark::State& state, CartanType type, unsigned q, unsigned level) {
  const permmod::Context ctx(type, q, level, gf::prime_power(q).first);
  const auto& M = ctx.borel().module();
  const auto seed = ctx.one_tr();
  for (auto _ : state) benchmark::DoNotOptimize(linrep::spin(M, {seed}).rank());
}
BENCHMARK_CAPTURE(BM_Spin, sl3_f2, CartanType::A2, 2, 1);
BENCHMARK_CAPTURE(BM_Spin, sl3_f4, CartanType::A2, 2, 2);

void BM_MeatAxe(benchmark::State& state, CartanType type, unsigned q) {
  const permmod::Context ctx(type, q, 1, gf::prime_power(q).first);
  const auto& M = ctx.borel().module();
  for (auto _ : state) benchmark::DoNotOptimize(linrep::composition_factors(M, 7).size());
}
BENCHMARK_CAPTURE(BM_MeatAxe, sl3_f2, CartanType::A2, 2);
BENCHMARK_CAPTURE(BM_MeatAxe, sp4_f2, CartanType::B2, 2);

void BM_Filtration(benchmark::State& state, CartanType type, unsigned q, unsigned level) {
  for (auto _ : state) {
    const permmod::Context ctx(type, q, level, gf::prime_power(q).first);
    benchmark::DoNotOptimize(ctx.filtration().pieces.size());
  }
}
BENCHMARK_CAPTURE(BM_Filtration, sl3_f2, CartanType::A2, 2, 1);
BENCHMARK_CAPTURE(BM_Filtration, sp4_f2, CartanType::B2, 2, 1);
BENCHMARK_CAPTURE(BM_Filtration, sl3_f4, CartanType::A2, 2, 2);

}  // namespace
BENCHMARK_MAIN();
