// Copyright 2026 The pimodulo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "pimodulo/algebra.hpp"
#include "pimodulo/candidates.hpp"
#include "pimodulo/generate.hpp"
#include "pimodulo/model_stt.hpp"
#include "pimodulo/reduction.hpp"
#include "pimodulo/scan.hpp"
#include "pimodulo/syntax.hpp"
#include "pimodulo/typing.hpp"

namespace pimodulo {
namespace {

const Theory& stt() {
  static const Theory th = load_theory("stt");
  return th;
}

Term church(unsigned n) {
  const Term a = Term::constant("A");
  Term body = Term::bvar(0);
  for (unsigned i = 0; i < n; ++i) body = Term::app(Term::bvar(1), body);
  return Term::lam("f", Term::arrow(a, a), Term::lam("x", a, body));
}

void BM_NormalizeChurchPower(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const Term t = Term::app(church(n), church(2));
  for (auto _ : state) {
    Fuel fuel;
    benchmark::DoNotOptimize(normalize(t, {}, ReductionMode::Beta, fuel));
  }
}
BENCHMARK(BM_NormalizeChurchPower)->Arg(2)->Arg(4)->Arg(6);

void BM_InferSttFormula(benchmark::State& state) {
  const Context ctx = parse_context("a : o, b : o", stt());
  const Term t = parse_term("eps (forall{o} (\\p : o. imp (imp p a) (imp (imp a b) p)))", stt(), ctx);
  for (auto _ : state) {
    Fuel fuel;
    benchmark::DoNotOptimize(infer(stt(), ctx, t, fuel));
  }
}
BENCHMARK(BM_InferSttFormula);

void BM_EnumerateStt(benchmark::State& state) {
  const Context ctx = parse_context("a : o, b : o", stt());
  for (auto _ : state) {
    TermEnumerator gen(stt(), ctx);
    benchmark::DoNotOptimize(gen.up_to(static_cast<std::uint32_t>(state.range(0))).size());
  }
}
BENCHMARK(BM_EnumerateStt)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_SnCheck(benchmark::State& state) {
  const Term t = parse_term("eps (imp (imp a a) (forall{o} (\\p : o. imp p p)))",
                            stt(), parse_context("a : o", stt()));
  for (auto _ : state) {
    Fuel fuel;
    benchmark::DoNotOptimize(sn_check(t, fuel, stt(), ReductionMode::BetaR));
  }
}
BENCHMARK(BM_SnCheck);

void BM_SttInterpretation(benchmark::State& state) {
  const Context ctx = parse_context("a : o, b : o", stt());
  const Term t = parse_term("eps (forall{o} (\\p : o. imp (imp p a) b))", stt(), ctx);
  const SttModel model(stt(), AlgebraEnumerator(2).at(static_cast<std::uint64_t>(state.range(0))));
  const auto phis = model.valuations(ctx, 16, 1);
  for (auto _ : state) {
    for (const auto& phi : phis) benchmark::DoNotOptimize(model.interp(t, phi));
  }
}
BENCHMARK(BM_SttInterpretation)->Arg(0)->Arg(311);

void BM_ConsistencyScanStt(benchmark::State& state) {
  const Context ctx = parse_context("x : o", stt());
  const Term target = parse_term("eps x", stt(), ctx);
  ConsistencyOptions o;
  o.max_size = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(consistency_scan(stt(), ctx, target, o));
}
BENCHMARK(BM_ConsistencyScanStt)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pimodulo

BENCHMARK_MAIN();
