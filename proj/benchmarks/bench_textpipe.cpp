#include <benchmark/benchmark.h>

#include "expertquest/crc32.hpp"
#include "expertquest/porter.hpp"
#include "expertquest/textpipe.hpp"
#include "support/synthetic_text.hpp"

namespace tp = expertquest::textpipe;

static void BM_Crc32Word(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(tp::crc32("programming"));
}
BENCHMARK(BM_Crc32Word);

static void BM_PorterStem(benchmark::State& state) {
  const char* words[] = {"generalizations", "running", "relational", "clock", "hopping"};
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tp::porter_stem(words[i++ % 5]));
}
BENCHMARK(BM_PorterStem);

static void BM_CleanString(benchmark::State& state) {
  const std::string text = expertquest::testing::synthetic_novel(1000);
  for (auto _ : state) benchmark::DoNotOptimize(tp::clean_string(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_CleanString);

static void BM_Vectorize(benchmark::State& state) {
  const std::string text =
      expertquest::testing::synthetic_novel(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tp::vectorize(text));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Vectorize)->Arg(1000)->Arg(25'000)->Arg(105'000)->Unit(benchmark::kMillisecond);

static void BM_Cosine(benchmark::State& state) {
  const auto a = tp::vectorize(expertquest::testing::synthetic_novel(500, 1), state.range(0));
  const auto b = tp::vectorize(expertquest::testing::synthetic_novel(500, 2), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tp::cosine_similarity(a, b));
}
BENCHMARK(BM_Cosine)->Arg(256)->Arg(4096);

BENCHMARK_MAIN();
