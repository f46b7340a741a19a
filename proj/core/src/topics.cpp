#include "crimenews/topics.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"
#include "crimenews/random.hpp"

namespace crimenews::topics {

TopicModel lda_fit(std::span<const vectorize::Document> docs, const LdaParams& params, const SweepObserver& observer) {
    if (params.n_topics < 1) raise(ErrorCode::InvalidArgument, "LDA needs at least one topic");
    if (!(params.beta > 0.0)) raise(ErrorCode::InvalidArgument, "beta must be positive");
    const std::size_t K = params.n_topics;
    const double alpha = params.alpha.value_or(50.0 / static_cast<double>(K));
    if (!(alpha > 0.0)) raise(ErrorCode::InvalidArgument, "alpha must be positive");
    const double beta = params.beta;

    TopicModel model;
    model.n_topics = K;
    model.alpha = alpha;
    model.beta = beta;
    model.seed = params.seed;
    model.iterations = params.iterations;

    std::map<std::string, std::uint32_t> index;
    for (const auto& d : docs) {
        for (const auto& t : d.terms) index.emplace(t, 0);
    }
    if (index.empty()) raise(ErrorCode::EmptyCorpus, "no terms to model");
    for (auto& [term, id] : index) {
        id = static_cast<std::uint32_t>(model.vocabulary.size());
        model.vocabulary.push_back(term);
    }
    const std::size_t V = model.vocabulary.size();
    const std::size_t D = docs.size();

    std::vector<std::uint32_t> words;
    std::vector<std::size_t> doc_start(D + 1, 0);
    for (std::size_t d = 0; d < D; ++d) {
        model.doc_ids.push_back(docs[d].id);
        doc_start[d] = words.size();
        for (const auto& t : docs[d].terms) words.push_back(index.at(t));
    }
    doc_start[D] = words.size();
    const std::size_t N = words.size();

    std::vector<std::uint32_t> nkw(K * V, 0), ndk(D * K, 0), nk(K, 0), z(N, 0);
    Rng rng(params.seed);
    for (std::size_t d = 0; d < D; ++d) {
        for (std::size_t i = doc_start[d]; i < doc_start[d + 1]; ++i) {
            const auto k = static_cast<std::uint32_t>(rng.below(K));
            z[i] = k;
            ++nkw[k * V + words[i]];
            ++ndk[d * K + k];
            ++nk[k];
        }
    }

    const double vbeta = static_cast<double>(V) * beta;
    std::vector<double> cumulative(K);
    for (std::size_t sweep = 0; sweep < params.iterations; ++sweep) {
        for (std::size_t d = 0; d < D; ++d) {
            for (std::size_t i = doc_start[d]; i < doc_start[d + 1]; ++i) {
                const std::uint32_t w = words[i];
                std::uint32_t k = z[i];
                --nkw[k * V + w];
                --ndk[d * K + k];
                --nk[k];
                double total = 0.0;
                for (std::size_t t = 0; t < K; ++t) {
                    total += (ndk[d * K + t] + alpha) * (nkw[t * V + w] + beta) / (nk[t] + vbeta);
                    cumulative[t] = total;
                }
                const double u = rng.uniform() * total;
                k = static_cast<std::uint32_t>(std::upper_bound(cumulative.begin(), cumulative.end(), u) -
                                               cumulative.begin());
                if (k >= K) k = static_cast<std::uint32_t>(K - 1);
                z[i] = k;
                ++nkw[k * V + w];
                ++ndk[d * K + k];
                ++nk[k];
            }
        }
        if (observer) observer(GibbsState{sweep, N, nkw, ndk, nk, z});
    }

    model.phi = Matrix(K, V);
    for (std::size_t k = 0; k < K; ++k) {
        const double denom = nk[k] + vbeta;
        for (std::size_t w = 0; w < V; ++w) model.phi(k, w) = (nkw[k * V + w] + beta) / denom;
    }
    model.theta = Matrix(D, K);
    const double kalpha = static_cast<double>(K) * alpha;
    for (std::size_t d = 0; d < D; ++d) {
        const double denom = static_cast<double>(doc_start[d + 1] - doc_start[d]) + kalpha;
        for (std::size_t k = 0; k < K; ++k) model.theta(d, k) = (ndk[d * K + k] + alpha) / denom;
    }
    model.assignments = std::move(z);
    return model;
}

std::vector<std::vector<std::string>> top_words(const TopicModel& model, std::size_t n) {
    const std::size_t V = model.vocabulary.size();
    if (n > V) raise(ErrorCode::InvalidArgument, "asked for more top words than the vocabulary holds");
    std::vector<std::vector<std::string>> out;
    for (std::size_t k = 0; k < model.n_topics; ++k) {
        std::vector<std::size_t> idx(V);
        for (std::size_t w = 0; w < V; ++w) idx[w] = w;
        std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n), idx.end(),
                          [&](std::size_t a, std::size_t b) {
                              if (model.phi(k, a) != model.phi(k, b)) return model.phi(k, a) > model.phi(k, b);
                              return model.vocabulary[a] < model.vocabulary[b];
                          });
        std::vector<std::string> words;
        for (std::size_t i = 0; i < n; ++i) words.push_back(model.vocabulary[idx[i]]);
        out.push_back(std::move(words));
    }
    return out;
}

void save_model(const std::filesystem::path& dir, const TopicModel& model) {
    io::write_f64_block(dir / "phi.f64", model.phi.values());
    io::write_f64_block(dir / "theta.f64", model.theta.values());
    nlohmann::ordered_json meta;
    meta["n_topics"] = model.n_topics;
    meta["alpha"] = io::format_double(model.alpha);
    meta["beta"] = io::format_double(model.beta);
    meta["seed"] = model.seed;
    meta["iterations"] = model.iterations;
    meta["phi"] = {{"file", "phi.f64"}, {"rows", model.phi.rows()}, {"cols", model.phi.cols()}};
    meta["theta"] = {{"file", "theta.f64"}, {"rows", model.theta.rows()}, {"cols", model.theta.cols()}};
    meta["dtype"] = "float64";
    meta["byte_order"] = "little";
    meta["vocabulary"] = model.vocabulary;
    meta["doc_ids"] = model.doc_ids;
    io::write_text(dir / "model.json", meta.dump(2) + "\n");
}

}  // namespace crimenews::topics
