// Copyright (c) 2026, the tagcalc authors
// Licensed under the Apache License, Version 2.0.

#include <benchmark/benchmark.h>

#include "tagcalc/dynamics.hpp"
#include "tagcalc/parser.hpp"
#include "tagcalc/pretty.hpp"
#include "tagcalc/soundness.hpp"
#include "tagcalc/subtype.hpp"
#include "tagcalc/typing.hpp"

namespace {

using namespace tagcalc;

TagCtx bench_sigma() {
  TagCtx sigma;
  sigma = sigma.updated(TagId{0}, TagBinding{ty_top(), nullptr});
  sigma = sigma.updated(TagId{1}, TagBinding{ty_top(), name_tag(TagId{0})});
  return sigma;
}

void BM_SubtypeCheck(benchmark::State& state) {
  std::vector<TyRef> universe = enumerate_types(2, {"f", "g"}, 2);
  TagCtx sigma = bench_sigma();
  TypingCtx gamma;
  AmberEnv delta;
  for (auto _ : state) {
    std::size_t accepted = 0;
    for (const TyRef& lhs : universe) {
      for (const TyRef& rhs : universe) {
        accepted += subtype_check(delta, gamma, sigma, *lhs, *rhs) ? 1 : 0;
      }
    }
    benchmark::DoNotOptimize(accepted);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(universe.size() * universe.size()));
}
BENCHMARK(BM_SubtypeCheck);

void BM_OracleBuild(benchmark::State& state) {
  std::vector<TyRef> universe = enumerate_types(2, {"f", "g"}, 2);
  TagCtx sigma = bench_sigma();
  for (auto _ : state) {
    DeclarativeOracle oracle(sigma, universe);
    benchmark::DoNotOptimize(oracle.stable_height());
  }
}
BENCHMARK(BM_OracleBuild);

void BM_Synthesize(benchmark::State& state) {
  std::vector<TestCase> cases;
  for (std::uint64_t seed = 0; seed < 64; ++seed) cases.push_back(gen_typed_term(seed, 4));
  for (auto _ : state) {
    for (const TestCase& c : cases) {
      TypeResult r = synthesize(c.gamma, c.sigma, c.term);
      benchmark::DoNotOptimize(r.ok());
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 64);
}
BENCHMARK(BM_Synthesize);

void BM_Evaluate(benchmark::State& state) {
  std::vector<TestCase> cases;
  for (std::uint64_t seed = 0; seed < 64; ++seed) cases.push_back(gen_typed_term(seed, 4));
  for (auto _ : state) {
    std::size_t steps = 0;
    for (const TestCase& c : cases) {
      EvalResult r = evaluate(c.store, c.term, 200);
      steps += r.trace.size();
    }
    benchmark::DoNotOptimize(steps);
  }
}
BENCHMARK(BM_Evaluate);

void BM_ParseRoundtrip(benchmark::State& state) {
  std::vector<std::string> texts;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    texts.push_back(pretty(gen_typed_term(seed, 4).term));
  }
  for (auto _ : state) {
    for (const std::string& text : texts) {
      auto r = parse_term(text);
      benchmark::DoNotOptimize(std::holds_alternative<TmRef>(r));
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 64);
}
BENCHMARK(BM_ParseRoundtrip);

}  // namespace

BENCHMARK_MAIN();
