// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every expected value comes from an independent oracle or a
// hand-built fixture, never from the library itself.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "crimenews/analytics.hpp"
#include "crimenews/cluster.hpp"
#include "crimenews/corpus.hpp"
#include "crimenews/crimemap.hpp"
#include "crimenews/error.hpp"
#include "crimenews/io.hpp"
#include "crimenews/pipeline.hpp"
#include "crimenews/topics.hpp"
#include "crimenews/vectorize.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "pca_oracle.hpp"

using namespace crimenews;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void fail(const std::string& why) {
        if (pass) note = why;
        pass = false;
    }
};

int failures = 0;

void criterion(const std::string& name, const std::function<void(Outcome&)>& body, double budget_s = 0) {
    Outcome out;
    const auto t0 = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (budget_s > 0 && secs >= budget_s) {
        std::ostringstream why;
        why << "took " << secs << " s, budget " << budget_s << " s";
        out.fail(why.str());
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (out.pass ? "PASS " : "FAIL ") << name << " (" << timing << ")";
    if (!out.pass) std::cout << ": " << out.note;
    std::cout << "\n";
    if (!out.pass) ++failures;
}

std::string describe(std::size_t trial, const std::string& what) {
    return "trial " + std::to_string(trial) + ": " + what;
}

void tfidf_oracle(Outcome& out) {
    std::mt19937_64 rng(101);
    for (std::size_t t = 0; t < 25; ++t) {
        const auto docs = gen::corpus(rng, 50, 200);
        const vectorize::VocabularyParams params{1, 1.0, 200};
        const auto ref = oracle::tfidf(gen::term_lists(docs), params.min_df, params.max_df_ratio, params.max_features);
        if (ref.terms.empty()) {
            bool threw = false;
            try {
                vectorize::fit_vocabulary(docs, params);
            } catch (const Error&) {
                threw = true;
            }
            if (!threw) out.fail(describe(t, "expected an empty-vocabulary error"));
            continue;
        }
        const auto voc = vectorize::fit_vocabulary(docs, params);
        if (voc.terms != ref.terms) {
            out.fail(describe(t, "vocabulary differs"));
            continue;
        }
        const auto m = vectorize::transform(voc, docs);
        for (std::size_t r = 0; r < docs.size(); ++r) {
            for (std::size_t c = 0; c < voc.terms.size(); ++c) {
                if (std::abs(m.weights(r, c) - ref.rows[r][c]) > 1e-9) out.fail(describe(t, "weight differs"));
            }
        }
    }
}

void df_pruning(Outcome& out) {
    std::vector<vectorize::Document> docs(100);
    for (std::size_t i = 0; i < docs.size(); ++i) {
        docs[i].id = std::to_string(i);
        if (i < 4) docs[i].terms.push_back("alpha");
        if (i >= 10 && i < 15) docs[i].terms.push_back("bravo");
        if (i < 96) docs[i].terms.push_back("charlie");
    }
    const auto voc = vectorize::fit_vocabulary(docs, {5, 0.95, 60});
    if (voc.terms != std::vector<std::string>{"bravo"}) {
        std::string got;
        for (const auto& t : voc.terms) got += t + " ";
        out.fail("vocabulary is {" + got + "}");
    }
}

void kmeans_checks(Outcome& out) {
    std::mt19937_64 rng(202);
    for (std::size_t t = 0; t < 30; ++t) {
        std::uniform_int_distribution<std::size_t> n(2, 40), d(1, 6);
        const auto m = gen::uniform_points(rng, n(rng), d(rng), -5, 5);
        const auto model = cluster::kmeans_fit(m, {m.rows(), t, 300, 1e-6});
        if (model.sse != 0.0) out.fail(describe(t, "sse at k = n is " + std::to_string(model.sse)));
        const auto g = gen::clustered_points(rng, 150, 3, 5, 10.0, 1.5);
        const auto fit = cluster::kmeans_fit(g, {5, t, 300, 1e-6});
        for (std::size_t i = 1; i < fit.sse_history.size(); ++i) {
            if (fit.sse_history[i] > fit.sse_history[i - 1]) out.fail(describe(t, "sse rose during Lloyd iterations"));
        }
    }
    // Three blobs, 20 points each, far apart.
    std::normal_distribution<double> noise(0.0, 0.3);
    const double centers[3][2] = {{0, 0}, {12, 0}, {6, 10}};
    Matrix blobs(60, 2);
    std::vector<long long> truth;
    for (std::size_t i = 0; i < 60; ++i) {
        blobs(i, 0) = centers[i % 3][0] + noise(rng);
        blobs(i, 1) = centers[i % 3][1] + noise(rng);
        truth.push_back(static_cast<long long>(i % 3));
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto model = cluster::kmeans_fit(blobs, {3, seed, 300, 1e-6});
        const std::vector<long long> got(model.assignments.begin(), model.assignments.end());
        if (!oracle::same_partition(got, truth)) out.fail("blob fixture not recovered for seed " + std::to_string(seed));
    }
}

void sweep_monotone(Outcome& out) {
    std::mt19937_64 rng(303);
    const std::vector<std::size_t> ks = {2, 4, 8, 16};
    for (std::size_t t = 0; t < 10; ++t) {
        const auto m = gen::clustered_points(rng, 120, 4, 6, 10.0, 2.0);
        const auto sweep = cluster::sse_sweep(m, ks, t);
        for (std::size_t i = 1; i < sweep.size(); ++i) {
            if (sweep[i].sse > sweep[i - 1].sse) out.fail(describe(t, "sse increased along the sweep"));
        }
    }
}

void dbscan_oracle(Outcome& out) {
    std::mt19937_64 rng(404);
    const double eps_values[] = {0.3, 1.0};
    const std::size_t min_values[] = {2, 10};
    for (std::size_t t = 0; t < 50; ++t) {
        std::uniform_int_distribution<std::size_t> n(10, 300), dims(1, 3);
        const auto m = gen::clustered_points(rng, n(rng), dims(rng), 5, 10.0, 0.8);
        const double eps = eps_values[t % 2];
        const std::size_t min_samples = min_values[(t / 2) % 2];
        const auto got = cluster::dbscan_fit(m, eps, min_samples);
        const auto ref = oracle::dbscan(gen::rows(m), eps, min_samples);
        if (!oracle::same_partition(got.labels, ref)) out.fail(describe(t, "partition differs from the oracle"));
        std::set<std::size_t> noise_got, noise_ref;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            if (got.labels[i] < 0) noise_got.insert(i);
            if (ref[i] < 0) noise_ref.insert(i);
        }
        if (noise_got != noise_ref) out.fail(describe(t, "noise sets differ"));
    }
}

void dictionary_filter(Outcome& out) {
    const auto dict = corpus::default_dictionary();
    const auto& groups = dict.exclusion_groups();
    std::size_t i = 0;
    for (const auto& c : fixtures::filter_cases()) {
        const auto a = fixtures::article(std::to_string(i), c);
        const auto hits = corpus::match_stems(corpus::searchable_text(a), dict);
        if (hits.size() != c.stems) out.fail("article " + std::to_string(i) + " hit " + std::to_string(hits.size()) + " stems");
        if (c.stems >= 3 && !c.accepted) {
            std::size_t full = 0;
            for (const auto& g : groups) full += hits == g;
            if (full != 1) out.fail("article " + std::to_string(i) + " is not exactly one exclusion group");
        }
        if (corpus::is_crime_article(a, dict) != c.accepted) out.fail("article " + std::to_string(i) + " misfiled");
        ++i;
    }
}

void crime_map(Outcome& out) {
    const auto mapper = crimemap::compile_rules(crimemap::default_rules());
    std::size_t right = 0;
    for (const auto& [raw, expected] : fixtures::crime_strings()) {
        const auto got = crimemap::canonicalize(mapper, raw);
        if (got == expected) ++right;
        else out.fail("'" + raw + "' -> " + std::string(crimemap::to_string(got)));
    }
    if (right != 20 || fixtures::crime_strings().size() != 20) out.fail(std::to_string(right) + "/20");
}

void pca_oracle(Outcome& out) {
    std::mt19937_64 rng(505);
    for (std::size_t t = 0; t < 20; ++t) {
        std::uniform_int_distribution<std::size_t> rows(3, 50), cols(2, 60);
        const auto m = gen::uniform_points(rng, rows(rng), cols(rng), -3, 3);
        const auto p = analytics::pca_project(m, 2);
        const auto ref = oracle::covariance_eigen(m);
        for (std::size_t c = 0; c < 2; ++c) {
            const auto ci = static_cast<Eigen::Index>(c);
            if (std::abs(p.explained_variance[c] - ref.values(ci)) > 1e-6) out.fail(describe(t, "eigenvalue differs"));
            // Compare up to sign.
            double plus = 0, minus = 0;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                const double e = ref.vectors(static_cast<Eigen::Index>(j), ci);
                plus = std::max(plus, std::abs(p.components(c, j) - e));
                minus = std::max(minus, std::abs(p.components(c, j) + e));
            }
            if (std::min(plus, minus) > 1e-6) out.fail(describe(t, "component differs"));
        }
    }
    // Exactly rank-2 data reconstructs from two components.
    for (std::size_t t = 0; t < 20; ++t) {
        const auto basis = gen::uniform_points(rng, 2, 12, -1, 1);
        const auto weights = gen::uniform_points(rng, 30, 2, -4, 4);
        Matrix m(30, 12);
        for (std::size_t r = 0; r < 30; ++r) {
            for (std::size_t c = 0; c < 12; ++c) m(r, c) = 1.5 + weights(r, 0) * basis(0, c) + weights(r, 1) * basis(1, c);
        }
        const auto back = analytics::pca_reconstruct(analytics::pca_project(m, 2));
        for (std::size_t r = 0; r < 30; ++r) {
            for (std::size_t c = 0; c < 12; ++c) {
                if (std::abs(back(r, c) - m(r, c)) > 1e-6) out.fail(describe(t, "rank-2 reconstruction off"));
            }
        }
    }
}

void lda_checks(Outcome& out) {
    std::mt19937_64 rng(606);
    const auto docs = gen::corpus(rng, 30, 40);
    std::size_t tokens = 0;
    for (const auto& d : docs) tokens += d.terms.size();
    topics::lda_fit(docs, {5, std::nullopt, 0.01, 50, 7}, [&](const topics::GibbsState& s) {
        std::size_t sum = 0;
        for (auto c : s.topic_word) sum += c;
        std::size_t dsum = 0;
        for (auto c : s.doc_topic) dsum += c;
        if (sum != tokens || dsum != tokens) out.fail("counts drift at sweep " + std::to_string(s.sweep));
    });

    // K = 1: phi is the smoothed unigram distribution.
    std::map<std::string, double> counts;
    for (const auto& d : docs) {
        for (const auto& w : d.terms) counts[w] += 1;
    }
    const double beta = 0.01;
    const auto one = topics::lda_fit(docs, {1, 1.0, beta, 5, 3});
    const double v = static_cast<double>(counts.size());
    for (std::size_t w = 0; w < one.vocabulary.size(); ++w) {
        const double expected = (counts[one.vocabulary[w]] + beta) / (static_cast<double>(tokens) + v * beta);
        if (std::abs(one.phi(0, w) - expected) > 1e-12) out.fail("K = 1 phi differs for " + one.vocabulary[w]);
    }

    // Disjoint vocabularies: two topics split the word lists.
    const std::vector<std::string> a = {"gun", "police", "shooting", "suspect", "arrest"};
    const std::vector<std::string> b = {"game", "team", "score", "coach", "season"};
    std::vector<vectorize::Document> split;
    for (int d = 0; d < 20; ++d) {
        const auto& words = d % 2 ? b : a;
        vectorize::Document doc{"d" + std::to_string(d), {}};
        for (int i = 0; i < 30; ++i) doc.terms.push_back(words[(i * 7 + d) % words.size()]);
        split.push_back(std::move(doc));
    }
    const auto model = topics::lda_fit(split, {2, 0.1, 0.01, 200, 42});
    const auto top = topics::top_words(model, 5);
    const std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    const std::set<std::string> t0(top[0].begin(), top[0].end()), t1(top[1].begin(), top[1].end());
    if (!((t0 == sa && t1 == sb) || (t0 == sb && t1 == sa))) out.fail("disjoint vocabularies not separated");
}

void percentiles(Outcome& out) {
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(-1000, 1000);
    std::uniform_int_distribution<std::size_t> len(1, 200);
    for (std::size_t t = 0; t < 100; ++t) {
        std::vector<double> v(len(rng));
        for (auto& x : v) x = u(rng);
        const auto s = analytics::summary_stats(v);
        const double want[] = {oracle::percentile(v, 0.25), oracle::percentile(v, 0.5), oracle::percentile(v, 0.75),
                               oracle::percentile(v, 1.0)};
        const double got[] = {s.p25, s.p50, s.p75, s.p100};
        for (int i = 0; i < 4; ++i) {
            if (std::abs(got[i] - want[i]) > 1e-12) out.fail(describe(t, "percentile differs"));
        }
    }
    const std::vector<double> single = {-7.125};
    const auto s = analytics::summary_stats(single);
    if (s.p25 != -7.125 || s.p50 != -7.125 || s.p75 != -7.125 || s.p100 != -7.125) {
        out.fail("single-element percentiles are not exact");
    }
}

#ifdef CRIMENEWS_CLI
int run_cli(const fs::path& out_dir) {
    const std::string cmd = std::string("\"") + CRIMENEWS_CLI + "\" run --config \"" + CRIMENEWS_FIXTURES +
                            "/pipeline.json\" --output-dir \"" + out_dir.string() + "\" >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

void end_to_end(Outcome& out) {
#ifdef CRIMENEWS_CLI
    const fs::path tmp = CRIMENEWS_TEST_TMP;
    const auto a = tmp / "e2e_a";
    const auto b = tmp / "e2e_b";
    fs::remove_all(a);
    fs::remove_all(b);
    const auto t0 = Clock::now();
    const int code = run_cli(a);
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (code != 0) {
        out.fail("run exited with " + std::to_string(code));
        return;
    }
    if (secs >= 10.0) out.fail("run took " + std::to_string(secs) + " s");
    if (run_cli(b) != 0) {
        out.fail("second run failed");
        return;
    }
    const auto report = io::read_text(a / "report.txt");
    for (const char* section : {"1. Source distribution", "2. Crime category distribution", "3. News filter acceptance",
                                "4. SSE by k", "5. K-means cluster keywords", "6. DBSCAN clusters", "7. LDA topics",
                                "8. Named entities by label"}) {
        if (report.find(section) == std::string::npos) out.fail(std::string("report lacks '") + section + "'");
    }
    const auto ma = pipeline::read_manifest(a / "manifest.json");
    const auto mb = pipeline::read_manifest(b / "manifest.json");
    if (ma.stages.size() != 8 || mb.stages.size() != 8) {
        out.fail("manifest does not list 8 stages");
        return;
    }
    for (std::size_t i = 0; i < 8; ++i) {
        if (ma.stages[i].status != "ok") out.fail("stage " + ma.stages[i].name + " not ok");
        if (ma.stages[i].digests != mb.stages[i].digests) out.fail("digests differ in " + ma.stages[i].name);
        if (ma.stages[i].digests != pipeline::stage_digests(b, ma.stages[i].name)) {
            out.fail("recorded digests do not match files in " + ma.stages[i].name);
        }
    }
    if (report != io::read_text(b / "report.txt")) out.fail("reports differ");
#else
    out.fail("command line tool not built");
#endif
}

}  // namespace

int main() {
    criterion("TF-IDF matches the naive oracle on 25 random corpora", tfidf_oracle, 5.0);
    criterion("df pruning keeps only terms within [min_df, max_df_ratio]", df_pruning);
    criterion("K-means: zero SSE at k = n, monotone Lloyd SSE, blob recovery", kmeans_checks, 10.0);
    criterion("SSE sweep over k = 2, 4, 8, 16 is non-increasing", sweep_monotone);
    criterion("DBSCAN matches the brute-force oracle on 50 instances", dbscan_oracle, 20.0);
    criterion("Dictionary filter on 12 hand-built articles", dictionary_filter);
    criterion("Crime map on 20 raw strings", crime_map);
    criterion("PCA agrees with the dense eigensolver; rank-2 reconstruction", pca_oracle);
    criterion("LDA count conservation, K = 1 closed form, disjoint vocabularies", lda_checks);
    criterion("Percentiles match the oracle on 100 arrays", percentiles);
    criterion("End-to-end run: 8-section report and reproducible digests", end_to_end);
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << "(" << failures << " failing)\n";
    return failures ? 1 : 0;
}
