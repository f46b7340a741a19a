#include <benchmark/benchmark.h>

#include <random>

#include "crimenews/cluster.hpp"
#include "crimenews/corpus.hpp"
#include "crimenews/topics.hpp"
#include "crimenews/vectorize.hpp"
#include "generators.hpp"

using namespace crimenews;

namespace {

std::vector<vectorize::Document> bench_corpus(std::size_t docs) {
    std::mt19937_64 rng(1);
    std::vector<vectorize::Document> out;
    while (out.size() < docs) {
        for (auto& d : gen::corpus(rng, 200, 500)) {
            d.id = std::to_string(out.size());
            out.push_back(std::move(d));
        }
    }
    out.resize(docs);
    return out;
}

void BM_Tfidf(benchmark::State& state) {
    const auto docs = bench_corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        const auto voc = vectorize::fit_vocabulary(docs, {2, 0.95, 60});
        benchmark::DoNotOptimize(vectorize::transform(voc, docs));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Tfidf)->Arg(1000)->Arg(10000);

void BM_KMeans(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const auto m = gen::clustered_points(rng, static_cast<std::size_t>(state.range(0)), 60, 8, 1.0, 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(cluster::kmeans_fit(m, {8, 1, 100, 1e-6}));
}
BENCHMARK(BM_KMeans)->Arg(1000)->Arg(5000);

void BM_Dbscan(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const auto m = gen::clustered_points(rng, static_cast<std::size_t>(state.range(0)), 2, 6, 10.0, 0.5);
    for (auto _ : state) benchmark::DoNotOptimize(cluster::dbscan_fit(m, 0.3, 10));
}
BENCHMARK(BM_Dbscan)->Arg(1000)->Arg(5000);

void BM_Lda(benchmark::State& state) {
    const auto docs = bench_corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(topics::lda_fit(docs, {10, std::nullopt, 0.01, 20, 1}));
}
BENCHMARK(BM_Lda)->Arg(500)->Arg(2000);

void BM_DictionaryFilter(benchmark::State& state) {
    const auto dict = corpus::default_dictionary();
    corpus::Article a;
    a.id = "1";
    a.content = "Police said the robber stole a vehicle and fled before officers arrived at the scene of the "
                "shooting; the suspect faces assault and weapon charges.";
    for (auto _ : state) benchmark::DoNotOptimize(corpus::is_crime_article(a, dict));
}
BENCHMARK(BM_DictionaryFilter);

}  // namespace
BENCHMARK_MAIN();
