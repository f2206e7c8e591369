#include <benchmark/benchmark.h>

#include "senlex/extraction.hpp"
#include "senlex/synthgen.hpp"

namespace {

using namespace senlex;

std::vector<ReviewDoc> tagged_corpus(int n_reviews) {
  SyntheticSpec spec;
  spec.n_pairs = 60;
  spec.n_reviews = n_reviews;
  spec.seed = 99;
  SyntheticBundle bundle = generate(spec);
  RuleTagger tagger(default_lexicon());
  std::vector<ReviewDoc> docs;
  docs.reserve(bundle.reviews.size());
  for (const Review& r : bundle.reviews) docs.push_back(segment_and_tag(r, tagger));
  return docs;
}

void BM_SegmentAndTag(benchmark::State& state) {
  SyntheticSpec spec;
  spec.n_pairs = 60;
  spec.n_reviews = static_cast<int>(state.range(0));
  spec.seed = 99;
  SyntheticBundle bundle = generate(spec);
  RuleTagger tagger(default_lexicon());
  for (auto _ : state) {
    long tokens = 0;
    for (const Review& r : bundle.reviews)
      tokens += static_cast<long>(segment_and_tag(r, tagger).tokens.size());
    benchmark::DoNotOptimize(tokens);
  }
}
BENCHMARK(BM_SegmentAndTag)->Arg(200)->Arg(1000);

void BM_ExtractCandidates(benchmark::State& state) {
  auto docs = tagged_corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto cands = extract_feature_candidates(docs, 2);
    benchmark::DoNotOptimize(cands.size());
  }
}
BENCHMARK(BM_ExtractCandidates)->Arg(200)->Arg(1000);

void BM_BuildPairs(benchmark::State& state) {
  auto docs = tagged_corpus(static_cast<int>(state.range(0)));
  auto cands = extract_feature_candidates(docs, 2);
  for (auto _ : state) {
    auto pairs = build_pairs(docs, cands, 0.3, OpinionProfile::AdjOnly);
    benchmark::DoNotOptimize(pairs.size());
  }
}
BENCHMARK(BM_BuildPairs)->Arg(200)->Arg(1000);

void BM_MatchOccurrences(benchmark::State& state) {
  auto docs = tagged_corpus(static_cast<int>(state.range(0)));
  auto cands = extract_feature_candidates(docs, 2);
  auto pairs = build_pairs(docs, cands, 0.3, OpinionProfile::AdjOnly);
  for (auto _ : state) {
    auto occs = match_occurrences(docs, pairs);
    benchmark::DoNotOptimize(occs.size());
  }
}
BENCHMARK(BM_MatchOccurrences)->Arg(200)->Arg(1000);

}  // namespace
