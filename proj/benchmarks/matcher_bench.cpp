// Compiled phrase matcher vs the brute-force reference mapper on identical
// synthetic tweets. The gap is the price the reference pays for scanning
// every phrase at every position.

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "roadpulse/lexicon.hpp"
#include "roadpulse/mapper.hpp"
#include "roadpulse/oracle.hpp"

namespace {

using namespace roadpulse;

std::vector<CleanedTweet> make_corpus(std::size_t count, std::size_t tokens_per_tweet) {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    std::vector<std::string> vocab = {"flood", "water", "rain",  "street", "bayou",
                                      "close", "lane",  "wreck", "45",     "610",
                                      "i45",   "fwy",   "loop",  "sam",    "houston"};
    vocab.insert(vocab.end(), lexicon.highway_terms.begin(), lexicon.highway_terms.end());

    std::mt19937 rng(1045);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::vector<CleanedTweet> corpus(count);
    for (std::size_t i = 0; i < count; ++i) {
        corpus[i].record_id = "b" + std::to_string(i);
        corpus[i].tokens.reserve(tokens_per_tweet);
        for (std::size_t k = 0; k < tokens_per_tweet; ++k) {
            corpus[i].tokens.push_back(vocab[pick(rng)]);
        }
    }
    return corpus;
}

void BM_CompiledMapper(benchmark::State& state) {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    const Mapper mapper(lexicon, MappingConfig{1});
    const std::vector<CleanedTweet> corpus =
        make_corpus(1024, static_cast<std::size_t>(state.range(0)));
    std::size_t next = 0;
    for (auto _ : state) {
        MappingResult result = mapper.map(corpus[next]);
        benchmark::DoNotOptimize(result);
        next = (next + 1) % corpus.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CompiledMapper)->Arg(10)->Arg(25)->Arg(50);

void BM_ReferenceMapper(benchmark::State& state) {
    const Lexicon& lexicon = builtin_harvey_lexicon();
    const std::vector<CleanedTweet> corpus =
        make_corpus(1024, static_cast<std::size_t>(state.range(0)));
    std::size_t next = 0;
    for (auto _ : state) {
        MappingResult result = oracle_map(corpus[next], lexicon, MappingConfig{1});
        benchmark::DoNotOptimize(result);
        next = (next + 1) % corpus.size();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ReferenceMapper)->Arg(10)->Arg(25)->Arg(50);

} // namespace

BENCHMARK_MAIN();
