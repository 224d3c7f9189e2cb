#include <benchmark/benchmark.h>

#include <random>

#include "expertquest/fixture_corpus.hpp"
#include "expertquest/log.hpp"
#include "expertquest/search.hpp"

namespace se = expertquest::search;
namespace src = expertquest::sources;

static void BM_DemoSearch(benchmark::State& state) {
  expertquest::set_log_level(expertquest::LogLevel::Error);
  auto corpus = src::FixtureCorpus::load(EXPERTQUEST_DATA_DIR "/demo");
  se::ExpertFinder finder(src::FixtureCorpus::as_sources(corpus), se::LanguageList::builtin(),
                          {static_cast<std::size_t>(state.range(0))});
  const auto params = finder.params_for("Clojure");
  for (auto _ : state) benchmark::DoNotOptimize(finder.find_experts(params));
}
BENCHMARK(BM_DemoSearch)->Arg(1)->Arg(4);

static void BM_Rank(benchmark::State& state) {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> d(0, 5);
  std::vector<se::CandidateProfile> cs(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < cs.size(); ++i) {
    cs[i].handle = "h" + std::to_string(i);
    cs[i].bytes_of_code = static_cast<std::uint64_t>(d(rng));
    cs[i].github_followers = static_cast<std::uint64_t>(d(rng));
    cs[i].cosine = d(rng) / 5.0;
  }
  for (auto _ : state) benchmark::DoNotOptimize(se::rank(cs));
}
BENCHMARK(BM_Rank)->Arg(50)->Arg(1000);
