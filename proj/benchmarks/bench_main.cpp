#include <benchmark/benchmark.h>

#include "scopedeq/builtin_models.hpp"
#include "scopedeq/builtin_theories.hpp"
#include "scopedeq/counting.hpp"
#include "scopedeq/equational_logic.hpp"
#include "scopedeq/syntax.hpp"

using namespace scopedeq;

static void BM_EnumerateTerms(benchmark::State& state) {
  Theory thy = builtin_theory("nondet_once");
  CompContext ctx{0, 0};
  for (auto _ : state) {
    auto terms = enumerate_terms(thy.sig(), ctx, 0, static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(terms.data());
  }
}
BENCHMARK(BM_EnumerateTerms)->Arg(2)->Arg(3)->Arg(4);

static void BM_SearchOnceClose(benchmark::State& state) {
  Theory full = builtin_theory("nondet_once");
  Theory thy = without_equation(full, 5);
  NamedContext ctx = parse_context("x:0 | -");
  Judgement lhs = parse_term("once(a. close(a; x))", thy.sig(), ctx);
  Judgement rhs = parse_term("x", thy.sig(), ctx);
  for (auto _ : state) {
    auto r = derivably_equal(thy, lhs, rhs, 4);
    benchmark::DoNotOptimize(r.kind);
  }
}
BENCHMARK(BM_SearchOnceClose);

static void BM_SearchGetGet(benchmark::State& state) {
  Theory thy = builtin_theory("global_state");
  NamedContext ctx = parse_context("x00:0, x01:0, x10:0, x11:0 | -");
  Judgement lhs = parse_term("get(get(x00, x01), get(x10, x11))", thy.sig(), ctx);
  Judgement rhs = parse_term("get(x00, x11)", thy.sig(), ctx);
  for (auto _ : state) {
    auto r = derivably_equal(thy, lhs, rhs, 8);
    benchmark::DoNotOptimize(r.kind);
  }
}
BENCHMARK(BM_SearchGetGet)->Unit(benchmark::kMillisecond);

static void BM_ModelCheckOnce(benchmark::State& state) {
  Theory thy = builtin_theory("nondet_once");
  auto m = model_once(2, 3);
  ModelCheckBudget b;
  b.max_offset = 1;
  for (auto _ : state) {
    auto r = check_model(m, thy, b);
    benchmark::DoNotOptimize(r.environments);
  }
}
BENCHMARK(BM_ModelCheckOnce)->Unit(benchmark::kMillisecond);

static void BM_NormalizeMotivating(benchmark::State& state) {
  Theory thy = builtin_theory("nondet_once");
  NamedContext ctx = parse_context("1:0, 2:0, 3:0, 4:0 | -");
  Judgement j = parse_term("once(a. or(fail, or(close(a; or(1, 2)), close(a; or(3, 4)))))", thy.sig(), ctx);
  for (auto _ : state) {
    Judgement nf = reify(ModelKind::Once, thy.sig(), 4, eval_rho(ModelKind::Once, thy.sig(), j));
    benchmark::DoNotOptimize(nf.body().hash());
  }
}
BENCHMARK(BM_NormalizeMotivating);

static void BM_CountFixedpoint(benchmark::State& state) {
  ScopedSignature s = builtin_scoped_signature("cut");
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_fixedpoint(s, 2, 2, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_CountFixedpoint)->Arg(4)->Arg(8);
BENCHMARK_MAIN();
