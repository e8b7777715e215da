#include <benchmark/benchmark.h>

#include "iproof/parser.hpp"
#include "iproof/prover.hpp"
#include "iproof/transform.hpp"
#include "iproof/translate.hpp"

using namespace iproof;

namespace {

void BM_ParseFormula(benchmark::State& state) {
  const std::string text = "all x. ((p(x, #a) & ~q) -> ex y. (r(y) | p(x, #b))) -> bot -> s";
  for (auto _ : state) benchmark::DoNotOptimize(parse_formula(text));
}
BENCHMARK(BM_ParseFormula);

void BM_ParseNested(benchmark::State& state) {
  const std::string text = "p(#a) -> q0, [r, p0 -> s, [t -> u]], [bot -> all x. q(x, #b)]";
  for (auto _ : state) benchmark::DoNotOptimize(parse_nested(text));
}
BENCHMARK(BM_ParseNested);

void BM_SequentRoundTrip(benchmark::State& state) {
  auto sigma = parse_nested("p(#a) -> q0, [r, p0 -> s, [t -> u]], [v -> y]");
  for (auto _ : state) benchmark::DoNotOptimize(iso_equal(to_nested(to_labelled(sigma)), sigma));
}
BENCHMARK(BM_SequentRoundTrip);

void BM_ProvePropositional(benchmark::State& state) {
  Calculus nint{CalculusName::NInt};
  auto goal = parse_formula("(p -> (q -> r)) -> ((p -> q) -> (p -> r))");
  for (auto _ : state) benchmark::DoNotOptimize(prove_formula(nint, goal));
}
BENCHMARK(BM_ProvePropositional);

void BM_ProveConstantDomain(benchmark::State& state) {
  Calculus cal{CalculusName::NIntQC};
  auto goal = parse_formula("(all x. (p(x) | q)) -> (all x. p(x)) | q");
  for (auto _ : state) benchmark::DoNotOptimize(prove_formula(cal, goal));
}
BENCHMARK(BM_ProveConstantDomain);

void BM_RefusePeirce(benchmark::State& state) {
  Calculus nint{CalculusName::NInt};
  auto goal = parse_formula("((p -> q) -> p) -> p");
  for (auto _ : state) benchmark::DoNotOptimize(prove_formula(nint, goal));
}
BENCHMARK(BM_RefusePeirce);

void BM_ProofRoundTrip(benchmark::State& state) {
  Calculus nint{CalculusName::NInt};
  auto proof = *prove_formula(nint, parse_formula("~~(p | ~p)")).derivation;
  for (auto _ : state) {
    auto lab = proof_to_labelled(nint, proof);
    benchmark::DoNotOptimize(proof_to_nested(lab.calculus, lab.derivation));
  }
}
BENCHMARK(BM_ProofRoundTrip);

void BM_ExpandToG3(benchmark::State& state) {
  Calculus nintq{CalculusName::NIntQ};
  auto proof = *prove_formula(nintq, parse_formula("all x. p(x) -> p(#a)")).derivation;
  auto lab = proof_to_labelled(nintq, proof);
  for (auto _ : state) benchmark::DoNotOptimize(expand_to_g3(lab.calculus, lab.derivation));
}
BENCHMARK(BM_ExpandToG3);

}  // namespace

BENCHMARK_MAIN();
