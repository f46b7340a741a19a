#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crimenews/matrix.hpp"
#include "crimenews/vectorize.hpp"

namespace crimenews::topics {

struct LdaParams {
    std::size_t n_topics = 50;
    std::optional<double> alpha;  // defaults to 50 / n_topics
    double beta = 0.01;
    std::size_t iterations = 1000;
    std::uint64_t seed = 0;
};

struct TopicModel {
    std::size_t n_topics = 0;
    std::vector<std::string> vocabulary;  // sorted; columns of phi
    std::vector<std::string> doc_ids;     // rows of theta
    Matrix phi;                           // K x V, rows sum to 1
    Matrix theta;                         // D x K, rows sum to 1
    double alpha = 0.0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    std::size_t iterations = 0;
    std::vector<std::uint32_t> assignments;  // final topic of every token, corpus order
};

/// Sampler counts exposed to the per-sweep observer.
struct GibbsState {
    std::size_t sweep = 0;
    std::size_t total_tokens = 0;
    std::span<const std::uint32_t> topic_word;  // K x V counts, row-major
    std::span<const std::uint32_t> doc_topic;   // D x K counts
    std::span<const std::uint32_t> topic_total; // K
    std::span<const std::uint32_t> assignments; // per token
};

using SweepObserver = std::function<void(const GibbsState&)>;

/// Collapsed Gibbs sampling over the documents' terms. phi and theta are
/// read from the final state with Dirichlet smoothing:
///   phi[k][w]   = (n_kw + beta) / (n_k + V beta)
///   theta[d][k] = (n_dk + alpha) / (n_d + K alpha)
/// Throws Error(EmptyCorpus) when the documents hold no terms.
TopicModel lda_fit(std::span<const vectorize::Document> docs, const LdaParams& params,
                   const SweepObserver& observer = {});

/// Highest-probability words per topic, descending, ties lexicographic.
std::vector<std::vector<std::string>> top_words(const TopicModel& model, std::size_t n = 10);

/// JSON metadata at `dir`/model.json with phi.f64 and theta.f64 beside it.
void save_model(const std::filesystem::path& dir, const TopicModel& model);

}  // namespace crimenews::topics
