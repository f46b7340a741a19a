#include <doctest.h>

#include <filesystem>
#include <map>
#include <numeric>
#include <set>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"
#include "crimenews/topics.hpp"

using namespace crimenews;
using namespace crimenews::topics;
using vectorize::Document;

namespace {

// Crime docs use only the first word list, sports docs only the second.
std::vector<Document> disjoint_corpus() {
    const std::vector<std::string> crime = {"gun", "police", "shooting", "suspect", "arrest"};
    const std::vector<std::string> sport = {"game", "team", "score", "coach", "season"};
    std::vector<Document> docs;
    for (int d = 0; d < 20; ++d) {
        const auto& words = d % 2 ? sport : crime;
        Document doc{"d" + std::to_string(d), {}};
        for (int i = 0; i < 30; ++i) doc.terms.push_back(words[(i * 7 + d) % words.size()]);
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace

TEST_CASE("phi and theta rows are distributions") {
    const auto docs = disjoint_corpus();
    const auto model = lda_fit(docs, {4, std::nullopt, 0.01, 50, 3});
    CHECK(model.alpha == doctest::Approx(50.0 / 4));
    CHECK(model.vocabulary.size() == 10);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto row = model.phi.row(k);
        CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0));
    }
    for (std::size_t d = 0; d < docs.size(); ++d) {
        const auto row = model.theta.row(d);
        CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0));
    }
}

TEST_CASE("counts are conserved after every sweep") {
    const auto docs = disjoint_corpus();
    std::size_t sweeps = 0;
    bool ok = true;
    lda_fit(docs, {3, 0.1, 0.01, 20, 9}, [&](const GibbsState& s) {
        ++sweeps;
        const std::size_t k = s.topic_total.size();
        const std::size_t v = s.topic_word.size() / k;
        std::size_t total = 0;
        for (std::size_t t = 0; t < k; ++t) {
            std::size_t row = 0;
            for (std::size_t w = 0; w < v; ++w) row += s.topic_word[t * v + w];
            ok &= row == s.topic_total[t];
            total += row;
        }
        ok &= total == s.total_tokens;
        for (std::size_t d = 0; d < docs.size(); ++d) {
            std::size_t n = 0;
            for (std::size_t t = 0; t < k; ++t) n += s.doc_topic[d * k + t];
            ok &= n == docs[d].terms.size();
        }
        ok &= s.assignments.size() == s.total_tokens;
    });
    CHECK(sweeps == 20);
    CHECK(ok);
}

TEST_CASE("single topic phi is the smoothed unigram distribution") {
    const std::vector<Document> docs = {{"a", {"x", "y", "x"}}, {"b", {"z", "x"}}};
    const double beta = 0.5;
    const auto model = lda_fit(docs, {1, 1.0, beta, 5, 1});
    const std::map<std::string, double> counts = {{"x", 3}, {"y", 1}, {"z", 1}};
    for (std::size_t w = 0; w < model.vocabulary.size(); ++w) {
        const double expected = (counts.at(model.vocabulary[w]) + beta) / (5 + 3 * beta);
        CHECK(std::abs(model.phi(0, w) - expected) < 1e-12);
    }
}

TEST_CASE("disjoint vocabularies separate into topics") {
    const auto model = lda_fit(disjoint_corpus(), {2, 0.1, 0.01, 200, 42});
    const auto top = top_words(model, 5);
    REQUIRE(top.size() == 2);
    const std::set<std::string> crime = {"gun", "police", "shooting", "suspect", "arrest"};
    const std::set<std::string> a(top[0].begin(), top[0].end());
    const std::set<std::string> b(top[1].begin(), top[1].end());
    CHECK(a.size() == 5);
    CHECK(((a == crime) || (b == crime)));
    CHECK(a != b);
}

TEST_CASE("same seed, same model") {
    const auto docs = disjoint_corpus();
    const auto m1 = lda_fit(docs, {3, 0.1, 0.01, 30, 5});
    const auto m2 = lda_fit(docs, {3, 0.1, 0.01, 30, 5});
    CHECK(m1.assignments == m2.assignments);
    CHECK(m1.phi == m2.phi);
}

TEST_CASE("empty corpus is rejected") {
    const std::vector<Document> docs = {{"a", {}}, {"b", {}}};
    try {
        lda_fit(docs, {2, std::nullopt, 0.01, 10, 0});
        FAIL("expected EmptyCorpus");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyCorpus);
    }
}

TEST_CASE("model files are written") {
    const auto model = lda_fit(disjoint_corpus(), {2, 0.1, 0.01, 10, 1});
    const std::filesystem::path dir = std::filesystem::path(CRIMENEWS_TEST_TMP) / "lda";
    save_model(dir, model);
    CHECK(std::filesystem::exists(dir / "model.json"));
    CHECK(io::read_f64_block(dir / "phi.f64").size() == 2 * model.vocabulary.size());
    CHECK(io::read_f64_block(dir / "theta.f64").size() == 20 * 2);
}
