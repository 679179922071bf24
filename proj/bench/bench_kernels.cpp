// Serial reference vs OpenMP kernels on the toy domain. The corpus is
// repeated to give the parser and harvester enough work to split.

#include "sortacq/evalmap.hpp"
#include "sortacq/harvest.hpp"
#include "sortacq/semparser.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace sortacq;
using namespace sortacq::testing;

namespace {

Toy& toy() {
  static Toy t;
  return t;
}

std::vector<Sentence> repeated_corpus(int copies) {
  std::vector<Sentence> out;
  for (int c = 0; c < copies; ++c) {
    for (auto s : toy().corpus) {
      s.id += c * 1000;
      out.push_back(std::move(s));
    }
  }
  return out;
}

const std::vector<ParseResult>& parsed(int copies) {
  static std::map<int, std::vector<ParseResult>> cache;
  auto it = cache.find(copies);
  if (it == cache.end()) {
    SemParser p(toy().grammar, toy().lexicon, toy().signatures.rules, toy().h);
    it = cache.emplace(copies, p.parse_corpus_serial(repeated_corpus(copies))).first;
  }
  return it->second;
}

// Random binary rules over the toy sorts, reusing the reference predicates.
std::vector<SortRule> random_rules(std::size_t n) {
  std::mt19937 rng(3);
  std::vector<std::string> sorts;
  for (SortId id = 0; id < toy().h.size(); ++id) sorts.push_back(toy().h.name(id));
  std::vector<std::string> preds;
  for (const auto& r : toy().reference) {
    if (r.arity() == 2) preds.push_back(r.predicate);
  }
  std::uniform_int_distribution<std::size_t> pick(0, preds.size() - 1);
  std::vector<SortRule> out;
  int vars = 0;
  while (out.size() < n) {
    SortRule r;
    r.predicate = preds[pick(rng)];
    r.args = {random_term(rng, sorts, 0, vars), random_term(rng, sorts, 0, vars)};
    out.push_back(std::move(r));
  }
  return out;
}

void BM_Parse(benchmark::State& state, bool parallel) {
  auto corpus = repeated_corpus(static_cast<int>(state.range(0)));
  SemParser p(toy().grammar, toy().lexicon, toy().signatures.rules, toy().h);
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? p.parse_corpus(corpus) : p.parse_corpus_serial(corpus));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus.size()));
}

void BM_Harvest(benchmark::State& state, bool parallel) {
  const auto& results = parsed(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? harvest_corpus(results, HarvestMode::LFs)
                                      : harvest_corpus_serial(results, HarvestMode::LFs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(results.size()));
}

void BM_Map(benchmark::State& state, bool parallel) {
  auto rules = random_rules(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parallel ? map_rules(rules, toy().reference, toy().h)
                                      : map_rules_serial(rules, toy().reference, toy().h));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(rules.size()));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Parse, serial, false)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Parse, openmp, true)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Harvest, serial, false)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Harvest, openmp, true)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Map, serial, false)->Arg(500)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Map, openmp, true)->Arg(500)->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
