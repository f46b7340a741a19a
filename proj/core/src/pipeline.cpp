#include "crimenews/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include <json.hpp>

#include "crimenews/analytics.hpp"
#include "crimenews/cluster.hpp"
#include "crimenews/corpus.hpp"
#include "crimenews/crimemap.hpp"
#include "crimenews/csv.hpp"
#include "crimenews/digest.hpp"
#include "crimenews/entities.hpp"
#include "crimenews/ingest.hpp"
#include "crimenews/io.hpp"
#include "crimenews/report.hpp"
#include "crimenews/svg.hpp"
#include "crimenews/textproc.hpp"
#include "crimenews/topics.hpp"
#include "crimenews/vectorize.hpp"

namespace crimenews::pipeline {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

const std::set<std::string>& path_keys() {
    static const std::set<std::string> keys = {"crime_inputs", "article_inputs", "rules",     "dictionary",
                                               "stoplist",     "gazetteers",     "output_dir"};
    return keys;
}

const std::set<std::string>& list_keys() {
    static const std::set<std::string> keys = {"crime_inputs", "article_inputs"};
    return keys;
}

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "crime_inputs", "article_inputs", "rules",          "dictionary",  "exclusion_groups", "stoplist",
        "gazetteers",   "threshold",      "min_df",         "max_df_ratio", "max_features",    "k",
        "sweep",        "max_iter",       "tol",            "top_terms",   "eps",              "min_samples",
        "lda_topics",   "lda_alpha",      "lda_beta",       "lda_iterations", "top_words",     "word_frequencies",
        "seed",         "output_dir"};
    return keys;
}

[[noreturn]] void invalid(const std::string& message) { raise(ErrorCode::Validation, message); }

std::vector<std::string> split_commas(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = io::trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
        if (!piece.empty()) out.emplace_back(piece);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string resolve(const std::string& path, const fs::path& base) {
    const fs::path p(path);
    return (p.is_absolute() ? p : (base / p)).lexically_normal().string();
}

void resolve_paths(json& j, const fs::path& base) {
    for (auto& [key, value] : j.items()) {
        if (!path_keys().contains(key)) continue;
        if (list_keys().contains(key)) {
            if (value.is_string()) {
                json list = json::array();
                for (const auto& piece : split_commas(value.get<std::string>())) list.push_back(piece);
                value = list;
            }
            if (!value.is_array()) invalid(key + " must be a list of paths");
            for (auto& item : value) {
                if (!item.is_string()) invalid(key + " must be a list of paths");
                item = resolve(item.get<std::string>(), base);
            }
        } else if (value.is_string()) {
            value = resolve(value.get<std::string>(), base);
        } else if (!value.is_null()) {
            invalid(key + " must be a path");
        }
    }
}

std::size_t get_count(const json& v, const std::string& key) {
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::size_t>(v.get<long long>());
    invalid(key + " must be a non-negative integer");
}

double get_real(const json& v, const std::string& key) {
    if (v.is_number()) return v.get<double>();
    invalid(key + " must be a number");
}

void apply(PipelineConfig& cfg, const std::string& key, const json& v) {
    auto path_list = [&] {
        std::vector<fs::path> out;
        for (const auto& item : v) out.emplace_back(item.get<std::string>());
        return out;
    };
    auto opt_path = [&]() -> std::optional<fs::path> {
        if (v.is_null()) return std::nullopt;
        return fs::path(v.get<std::string>());
    };
    if (key == "crime_inputs") cfg.crime_inputs = path_list();
    else if (key == "article_inputs") cfg.article_inputs = path_list();
    else if (key == "rules") cfg.rules = opt_path();
    else if (key == "dictionary") cfg.dictionary = opt_path();
    else if (key == "stoplist") cfg.stoplist = opt_path();
    else if (key == "gazetteers") cfg.gazetteers = opt_path();
    else if (key == "output_dir") cfg.output_dir = v.is_null() ? fs::path() : fs::path(v.get<std::string>());
    else if (key == "exclusion_groups") {
        if (v.is_null()) {
            cfg.exclusion_groups.reset();
            return;
        }
        if (!v.is_array()) invalid("exclusion_groups must be a list of stem lists");
        std::vector<std::vector<std::string>> groups;
        for (const auto& g : v) {
            if (!g.is_array()) invalid("exclusion_groups must be a list of stem lists");
            std::vector<std::string> group;
            for (const auto& s : g) {
                if (!s.is_string()) invalid("exclusion_groups must be a list of stem lists");
                group.push_back(s.get<std::string>());
            }
            groups.push_back(std::move(group));
        }
        cfg.exclusion_groups = std::move(groups);
    } else if (key == "threshold") cfg.threshold = get_count(v, key);
    else if (key == "min_df") cfg.min_df = get_count(v, key);
    else if (key == "max_df_ratio") cfg.max_df_ratio = get_real(v, key);
    else if (key == "max_features") cfg.max_features = get_count(v, key);
    else if (key == "k") cfg.k = v.is_null() ? std::nullopt : std::optional<std::size_t>(get_count(v, key));
    else if (key == "sweep") {
        if (v.is_null()) cfg.sweep.clear();
        else if (v.is_string()) cfg.sweep = parse_k_range(v.get<std::string>());
        else if (v.is_number()) cfg.sweep = {get_count(v, key)};
        else if (v.is_array()) {
            std::string joined;
            for (const auto& item : v) joined += (joined.empty() ? "" : ",") + std::to_string(get_count(item, key));
            cfg.sweep = parse_k_range(joined);
        } else invalid("sweep must be a range string or a list of integers");
    } else if (key == "max_iter") cfg.max_iter = get_count(v, key);
    else if (key == "tol") cfg.tol = get_real(v, key);
    else if (key == "top_terms") cfg.top_terms = get_count(v, key);
    else if (key == "eps") cfg.eps = get_real(v, key);
    else if (key == "min_samples") cfg.min_samples = get_count(v, key);
    else if (key == "lda_topics") cfg.lda_topics = get_count(v, key);
    else if (key == "lda_alpha") cfg.lda_alpha = v.is_null() ? std::nullopt : std::optional<double>(get_real(v, key));
    else if (key == "lda_beta") cfg.lda_beta = get_real(v, key);
    else if (key == "lda_iterations") cfg.lda_iterations = get_count(v, key);
    else if (key == "top_words") cfg.top_words = get_count(v, key);
    else if (key == "word_frequencies") cfg.word_frequencies = get_count(v, key);
    else if (key == "seed") {
        if (v.is_null()) cfg.seed.reset();
        else if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
            cfg.seed = v.get<std::uint64_t>();
        } else invalid("seed must be a non-negative integer");
    } else invalid("unknown config key: " + key);
}

// Value text from the command line: JSON when it parses, a string otherwise.
json override_value(const std::string& text) {
    auto parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) return json(text);
    return parsed;
}

// ---- stage plumbing -------------------------------------------------------

fs::path stage_dir(const PipelineConfig& cfg, std::string_view stage) { return cfg.output_dir / std::string(stage); }

fs::path require(const fs::path& path) {
    if (!fs::exists(path)) raise(ErrorCode::MissingStageOutput, "missing " + path.string());
    return path;
}

void fresh_dir(const fs::path& dir) {
    fs::remove_all(dir);
    fs::create_directories(dir);
}

std::string csv_text(const std::vector<std::string>& header, const std::vector<csv::Row>& rows) {
    csv::Writer w;
    w.row(header);
    for (const auto& r : rows) w.row(r);
    return w.str();
}

crimemap::CrimeTypeMapper load_mapper(const PipelineConfig& cfg) {
    if (cfg.rules) return crimemap::compile_rules(crimemap::parse_rules(io::read_text(*cfg.rules)));
    return crimemap::compile_rules(crimemap::default_rules());
}

corpus::CrimeDictionary load_dictionary(const PipelineConfig& cfg) {
    auto stems = cfg.dictionary ? io::read_word_list(*cfg.dictionary) : corpus::default_dictionary_stems();
    auto groups = cfg.exclusion_groups ? *cfg.exclusion_groups : corpus::default_exclusion_groups();
    return corpus::CrimeDictionary(std::move(stems), std::move(groups));
}

textproc::Stoplist load_stoplist(const PipelineConfig& cfg) {
    if (cfg.stoplist) {
        const auto words = io::read_word_list(*cfg.stoplist);
        return textproc::load_stoplist(words);
    }
    return textproc::default_stoplist();
}

std::vector<vectorize::Document> documents(std::span<const corpus::Article> articles,
                                           const textproc::Stoplist& stoplist) {
    std::vector<vectorize::Document> docs;
    docs.reserve(articles.size());
    for (const auto& a : articles) {
        docs.push_back({a.id, textproc::remove_stopwords(textproc::terms(corpus::searchable_text(a)), stoplist)});
    }
    return docs;
}

StageRecord finish(std::string_view name, std::size_t rows, const PipelineConfig& cfg) {
    StageRecord rec;
    rec.name = std::string(name);
    rec.status = "ok";
    rec.rows = rows;
    rec.digests = stage_digests(cfg.output_dir, name);
    return rec;
}

// ---- stages ----------------------------------------------------------------

StageRecord ingest_stage(const PipelineConfig& cfg) {
    const auto dir = stage_dir(cfg, "ingest");
    fresh_dir(dir);
    std::vector<ingest::SourceStream> streams;
    for (const auto& path : cfg.crime_inputs) streams.push_back(ingest::load_source(path));
    const auto merged = ingest::merge_sources(streams);
    io::write_text(dir / "crimes.csv", ingest::write_canonical_csv(merged.dataset.records));
    io::write_text(dir / "quarantine.csv", ingest::write_quarantine_csv(merged.quarantine));

    std::vector<csv::Row> tallies;
    for (const auto& [label, t] : merged.tallies) {
        tallies.push_back({label, std::to_string(t.total), std::to_string(t.retained), std::to_string(t.dropped),
                           std::to_string(t.quarantined)});
    }
    io::write_text(dir / "tallies.csv", csv_text({"input", "total", "retained", "dropped", "quarantined"}, tallies));

    std::vector<csv::Row> dist;
    if (!merged.dataset.records.empty()) {
        for (const auto& [kind, share] : ingest::source_distribution(merged.dataset)) {
            dist.push_back({std::string(ingest::to_string(kind)), std::to_string(merged.dataset.provenance.at(kind)),
                            io::format_double(share)});
        }
    }
    io::write_text(dir / "source_distribution.csv", csv_text({"source", "rows", "share"}, dist));
    return finish("ingest", merged.dataset.records.size(), cfg);
}

StageRecord crimemap_stage(const PipelineConfig& cfg) {
    const auto dataset = ingest::read_canonical_csv(require(stage_dir(cfg, "ingest") / "crimes.csv"));
    const auto dir = stage_dir(cfg, "crimemap");
    fresh_dir(dir);
    const auto mapper = load_mapper(cfg);
    std::vector<csv::Row> mapped;
    for (std::size_t i = 0; i < dataset.records.size(); ++i) {
        const auto& r = dataset.records[i];
        mapped.push_back({std::to_string(i), r.crime_type.value_or(""),
                          std::string(crimemap::to_string(mapper.canonicalize(r.crime_type)))});
    }
    io::write_text(dir / "mapped.csv", csv_text({"record", "crime_type", "category"}, mapped));
    std::vector<csv::Row> dist;
    for (const auto& [type, count] : crimemap::category_distribution(dataset, mapper)) {
        dist.push_back({std::string(crimemap::to_string(type)), std::to_string(count)});
    }
    io::write_text(dir / "categories.csv", csv_text({"category", "count"}, dist));
    return finish("crimemap", dataset.records.size(), cfg);
}

StageRecord corpus_stage(const PipelineConfig& cfg) {
    const auto dir = stage_dir(cfg, "corpus");
    fresh_dir(dir);
    std::vector<corpus::ArticleStream> streams;
    for (const auto& path : cfg.article_inputs) streams.push_back(corpus::load_articles(path));
    const auto merged = corpus::merge_articles(streams);
    io::write_text(dir / "articles.csv", corpus::write_articles_csv(merged.articles));
    io::write_text(dir / "quarantine.csv", corpus::write_quarantine_csv(merged.quarantine));

    const auto dict = load_dictionary(cfg);
    std::vector<corpus::Article> accepted;
    std::vector<csv::Row> decisions;
    for (const auto& a : merged.articles) {
        const auto hits = dict.match(corpus::searchable_text(a));
        const bool keep = corpus::is_crime_article(a, dict, cfg.threshold);
        std::string stems;
        for (const auto& s : hits) stems += (stems.empty() ? "" : " ") + s;
        decisions.push_back({a.id, std::to_string(hits.size()), stems, keep ? "1" : "0"});
        if (keep) accepted.push_back(a);
    }
    io::write_text(dir / "filter.csv", csv_text({"id", "hits", "stems", "accepted"}, decisions));
    io::write_text(dir / "crime_articles.csv", corpus::write_articles_csv(accepted));
    return finish("corpus", accepted.size(), cfg);
}

StageRecord vectorize_stage(const PipelineConfig& cfg) {
    const auto articles = corpus::read_articles_csv(require(stage_dir(cfg, "corpus") / "crime_articles.csv"));
    const auto dir = stage_dir(cfg, "vectorize");
    fresh_dir(dir);
    const auto docs = documents(articles, load_stoplist(cfg));
    const auto voc = vectorize::fit_vocabulary(docs, {cfg.min_df, cfg.max_df_ratio, cfg.max_features});
    const auto m = vectorize::transform(voc, docs);
    io::write_text(dir / "vocabulary.csv", vectorize::write_vocabulary_csv(voc));
    io::write_text(dir / "matrix.csv", vectorize::write_matrix_csv(m, voc.terms));
    vectorize::write_matrix_binary(dir / "matrix", m);
    return finish("vectorize", m.weights.rows(), cfg);
}

struct VectorInputs {
    vectorize::DocTermMatrix matrix;
    vectorize::Vocabulary vocabulary;
};

VectorInputs read_vectors(const PipelineConfig& cfg) {
    const auto dir = stage_dir(cfg, "vectorize");
    require(dir / "matrix.f64");
    require(dir / "matrix.json");
    return {vectorize::read_matrix_binary(dir / "matrix"), vectorize::read_vocabulary_csv(require(dir / "vocabulary.csv"))};
}

std::size_t kmeans_part(const PipelineConfig& cfg) {
    const auto in = read_vectors(cfg);
    const auto dir = stage_dir(cfg, "cluster");
    fs::create_directories(dir);
    for (const char* name : {"sweep.csv", "sse.svg", "kmeans.json", "kmeans.f64", "assignments.csv", "top_terms.csv",
                             "kmeans_sizes.csv"}) {
        fs::remove(dir / name);
    }
    const auto& points = in.matrix.weights;
    const std::uint64_t seed = *cfg.seed + kKMeansSeedOffset;

    std::optional<std::size_t> k = cfg.k;
    std::vector<std::size_t> ks;
    for (auto v : cfg.sweep) {
        if (v <= points.rows()) ks.push_back(v);
    }
    if (!ks.empty()) {
        const auto sweep = cluster::sse_sweep(points, ks, seed, cfg.max_iter, cfg.tol);
        const auto elbow = cluster::elbow_index(sweep);
        std::vector<csv::Row> rows;
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            rows.push_back({std::to_string(sweep[i].k), io::format_double(sweep[i].sse),
                            std::to_string(sweep[i].iterations), elbow && *elbow == i ? "1" : "0"});
            xs.push_back(static_cast<double>(sweep[i].k));
            ys.push_back(sweep[i].sse);
        }
        io::write_text(dir / "sweep.csv", csv_text({"k", "sse", "iterations", "elbow"}, rows));
        io::write_text(dir / "sse.svg", svg::line(xs, ys, "SSE by k", "k", "SSE", elbow));
        if (!k) k = sweep[elbow.value_or(sweep.size() - 1)].k;
    }
    if (!k) raise(ErrorCode::Validation, "no k: set k or a sweep range that fits the document count");

    const auto model = cluster::kmeans_fit(points, {*k, seed, cfg.max_iter, cfg.tol});
    cluster::save_kmeans(dir / "kmeans", model);
    std::vector<csv::Row> assign;
    for (std::size_t i = 0; i < model.assignments.size(); ++i) {
        assign.push_back({in.matrix.doc_ids[i], std::to_string(model.assignments[i])});
    }
    io::write_text(dir / "assignments.csv", csv_text({"doc_id", "cluster"}, assign));

    std::vector<csv::Row> terms;
    const auto top = cluster::top_terms(model, in.vocabulary.terms, cfg.top_terms);
    for (std::size_t c = 0; c < top.size(); ++c) {
        for (std::size_t r = 0; r < top[c].size(); ++r) terms.push_back({std::to_string(c), std::to_string(r + 1), top[c][r]});
    }
    io::write_text(dir / "top_terms.csv", csv_text({"cluster", "rank", "term"}, terms));

    std::vector<std::size_t> per_cluster(model.k, 0);
    for (auto a : model.assignments) ++per_cluster[a];
    std::vector<csv::Row> sizes;
    for (std::size_t c = 0; c < model.k; ++c) sizes.push_back({std::to_string(c), std::to_string(per_cluster[c])});
    io::write_text(dir / "kmeans_sizes.csv", csv_text({"cluster", "size"}, sizes));
    return points.rows();
}

std::size_t dbscan_part(const PipelineConfig& cfg) {
    const auto in = read_vectors(cfg);
    const auto dir = stage_dir(cfg, "cluster");
    fs::create_directories(dir);
    const auto result = cluster::dbscan_fit(in.matrix.weights, cfg.eps, cfg.min_samples);
    std::vector<csv::Row> labels;
    for (std::size_t i = 0; i < result.labels.size(); ++i) {
        labels.push_back({in.matrix.doc_ids[i], std::to_string(result.labels[i]), result.core[i] ? "1" : "0"});
    }
    io::write_text(dir / "dbscan_labels.csv", csv_text({"doc_id", "label", "core"}, labels));
    std::vector<std::size_t> per_cluster(result.n_clusters, 0);
    std::size_t noise = 0;
    for (auto l : result.labels) {
        if (l < 0) ++noise;
        else ++per_cluster[static_cast<std::size_t>(l)];
    }
    std::vector<csv::Row> sizes;
    for (std::size_t c = 0; c < per_cluster.size(); ++c) sizes.push_back({std::to_string(c), std::to_string(per_cluster[c])});
    sizes.push_back({"-1", std::to_string(noise)});
    io::write_text(dir / "dbscan_sizes.csv", csv_text({"cluster", "size"}, sizes));
    return result.labels.size();
}

StageRecord cluster_stage(const PipelineConfig& cfg) {
    fresh_dir(stage_dir(cfg, "cluster"));
    const auto rows = kmeans_part(cfg);
    dbscan_part(cfg);
    return finish("cluster", rows, cfg);
}

StageRecord topics_stage(const PipelineConfig& cfg) {
    const auto articles = corpus::read_articles_csv(require(stage_dir(cfg, "corpus") / "crime_articles.csv"));
    const auto dir = stage_dir(cfg, "topics");
    fresh_dir(dir);
    const auto docs = documents(articles, load_stoplist(cfg));
    topics::LdaParams params;
    params.n_topics = cfg.lda_topics;
    params.alpha = cfg.lda_alpha;
    params.beta = cfg.lda_beta;
    params.iterations = cfg.lda_iterations;
    params.seed = *cfg.seed + kLdaSeedOffset;
    const auto model = topics::lda_fit(docs, params);
    topics::save_model(dir, model);
    const auto words = topics::top_words(model, std::min(cfg.top_words, model.vocabulary.size()));
    std::vector<csv::Row> rows;
    for (std::size_t k = 0; k < words.size(); ++k) {
        for (std::size_t r = 0; r < words[k].size(); ++r) {
            const auto w = model.vocabulary.begin();
            const auto col = static_cast<std::size_t>(
                std::lower_bound(w, model.vocabulary.end(), words[k][r]) - w);
            rows.push_back({std::to_string(k), std::to_string(r + 1), words[k][r], io::format_double(model.phi(k, col))});
        }
    }
    io::write_text(dir / "top_words.csv", csv_text({"topic", "rank", "word", "probability"}, rows));
    return finish("topics", model.doc_ids.size(), cfg);
}

StageRecord entities_stage(const PipelineConfig& cfg) {
    const auto articles = corpus::read_articles_csv(require(stage_dir(cfg, "corpus") / "crime_articles.csv"));
    const auto dir = stage_dir(cfg, "entities");
    fresh_dir(dir);
    const auto g = cfg.gazetteers ? entities::load_gazetteers(*cfg.gazetteers) : entities::default_gazetteers();
    std::vector<csv::Row> rows;
    std::map<entities::Label, std::size_t> counts;
    for (auto label : {entities::Label::PERSON, entities::Label::ORG, entities::Label::GPE, entities::Label::DATE,
                       entities::Label::OTHER}) {
        counts[label] = 0;
    }
    for (const auto& a : articles) {
        const std::string text = a.title ? *a.title + ".\n" + a.content : a.content;
        for (const auto& e : entities::extract_entities(text, g)) {
            rows.push_back({a.id, std::to_string(e.start), std::to_string(e.end), std::string(entities::to_string(e.label)),
                            e.text});
            ++counts[e.label];
        }
    }
    io::write_text(dir / "entities.csv", csv_text({"doc_id", "start", "end", "label", "text"}, rows));
    std::vector<csv::Row> label_rows;
    for (const auto& [label, n] : counts) label_rows.push_back({std::string(entities::to_string(label)), std::to_string(n)});
    io::write_text(dir / "label_counts.csv", csv_text({"label", "count"}, label_rows));
    return finish("entities", rows.size(), cfg);
}

StageRecord analytics_stage(const PipelineConfig& cfg) {
    const auto dataset = ingest::read_canonical_csv(require(stage_dir(cfg, "ingest") / "crimes.csv"));
    const auto mapped = csv::read_file(require(stage_dir(cfg, "crimemap") / "mapped.csv"));
    const auto articles = corpus::read_articles_csv(require(stage_dir(cfg, "corpus") / "articles.csv"));
    const auto crime_articles = corpus::read_articles_csv(require(stage_dir(cfg, "corpus") / "crime_articles.csv"));
    const auto vectors = read_vectors(cfg);
    const auto assignments = csv::read_file(require(stage_dir(cfg, "cluster") / "assignments.csv"));
    const auto dir = stage_dir(cfg, "analytics");
    fresh_dir(dir);

    // Outlet hit times: publication for one source, outlet name for the other.
    std::map<std::string, std::size_t> outlets;
    for (const auto& a : articles) {
        ++outlets[a.publication.value_or(a.outlet_name.value_or(std::string(corpus::kNullGroup)))];
    }
    std::vector<std::pair<std::string, std::size_t>> ranked(outlets.begin(), outlets.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<csv::Row> outlet_rows;
    std::vector<double> counts;
    for (const auto& [name, n] : ranked) {
        outlet_rows.push_back({name, std::to_string(n)});
        counts.push_back(static_cast<double>(n));
    }
    io::write_text(dir / "outlets.csv", csv_text({"outlet", "articles"}, outlet_rows));
    std::vector<csv::Row> stats_rows;
    if (!counts.empty()) {
        const auto s = analytics::summary_stats(counts);
        stats_rows.push_back({std::to_string(counts.size()), io::format_double(s.mean), io::format_double(s.std),
                              io::format_double(s.p25), io::format_double(s.p50), io::format_double(s.p75),
                              io::format_double(s.p100)});
    }
    io::write_text(dir / "hit_times.csv", csv_text({"outlets", "mean", "std", "p25", "p50", "p75", "p100"}, stats_rows));

    std::vector<csv::Row> freq_rows;
    for (const auto& [term, n] : analytics::word_frequencies(crime_articles, load_stoplist(cfg), cfg.word_frequencies)) {
        freq_rows.push_back({term, std::to_string(n)});
    }
    io::write_text(dir / "word_frequencies.csv", csv_text({"term", "count"}, freq_rows));

    // Geo scatter.
    const auto category_col = mapped.column("category");
    if (category_col == csv::Table::npos || mapped.rows.size() != dataset.records.size()) {
        raise(ErrorCode::MissingStageOutput, "crimemap output does not match the ingest output");
    }
    std::vector<crimemap::CanonicalCrimeType> types;
    for (const auto& row : mapped.rows) {
        types.push_back(crimemap::parse_crime_type(row[category_col]).value_or(crimemap::CanonicalCrimeType::Other));
    }
    const auto geo = analytics::geo_points(dataset, types);
    auto geo_csv = [&](const std::vector<analytics::GeoPoint>& pts) {
        std::vector<csv::Row> rows;
        for (const auto& p : pts) {
            rows.push_back({std::to_string(p.record), io::format_double(p.lon), io::format_double(p.lat),
                            std::string(crimemap::to_string(p.type))});
        }
        return csv_text({"record", "long", "lat", "category"}, rows);
    };
    io::write_text(dir / "geo_points.csv", geo_csv(geo.main));
    io::write_text(dir / "geo_outliers.csv", geo_csv(geo.outliers));
    std::vector<svg::Point> geo_svg;
    for (const auto& p : geo.main) geo_svg.push_back({p.lon, p.lat, static_cast<long long>(p.type)});
    io::write_text(dir / "geo.svg", svg::scatter(geo_svg, "Crime locations", "longitude", "latitude"));

    // PCA of the document-term matrix, colored by k-means cluster.
    const auto& m = vectors.matrix.weights;
    std::vector<csv::Row> pca_rows;
    std::vector<csv::Row> variance_rows;
    std::vector<svg::Point> pca_svg;
    if (m.rows() >= 2 && m.cols() >= 1) {
        const auto proj = analytics::pca_project(m, std::min<std::size_t>(2, m.cols()));
        const auto cluster_col = assignments.column("cluster");
        for (std::size_t i = 0; i < m.rows(); ++i) {
            long long cluster = -1;
            if (cluster_col != csv::Table::npos && i < assignments.rows.size()) {
                long long v = 0;
                if (io::parse_int(assignments.rows[i][cluster_col], v)) cluster = v;
            }
            const double x = proj.coords(i, 0);
            const double y = proj.coords.cols() > 1 ? proj.coords(i, 1) : 0.0;
            pca_rows.push_back({vectors.matrix.doc_ids[i], io::format_double(x), io::format_double(y), std::to_string(cluster)});
            pca_svg.push_back({x, y, cluster});
        }
        for (std::size_t d = 0; d < proj.explained_variance.size(); ++d) {
            variance_rows.push_back({std::to_string(d + 1), io::format_double(proj.explained_variance[d])});
        }
    }
    io::write_text(dir / "pca.csv", csv_text({"doc_id", "pc1", "pc2", "cluster"}, pca_rows));
    io::write_text(dir / "explained_variance.csv", csv_text({"component", "variance"}, variance_rows));
    io::write_text(dir / "pca.svg", svg::scatter(pca_svg, "PCA of document vectors", "PC1", "PC2"));
    return finish("analytics", pca_rows.size(), cfg);
}

std::size_t quarantined_rows(const fs::path& file) {
    if (!fs::exists(file)) return 0;
    try {
        return csv::read_file(file).rows.size();
    } catch (const Error&) {
        return 0;
    }
}

}  // namespace

std::vector<std::size_t> parse_k_range(std::string_view text) {
    std::vector<std::size_t> out;
    auto number = [&](std::string_view s) {
        long long v = 0;
        if (!io::parse_int(io::trim(s), v) || v < 1) invalid("bad k value in range: " + std::string(text));
        return static_cast<std::size_t>(v);
    };
    for (const auto& piece : split_commas(text)) {
        const std::string_view p = piece;
        const auto dots = p.find("..");
        if (dots == std::string_view::npos) {
            out.push_back(number(p));
            continue;
        }
        std::size_t step = 1;
        auto rest = p.substr(dots + 2);
        if (const auto colon = rest.find(':'); colon != std::string_view::npos) {
            step = number(rest.substr(colon + 1));
            rest = rest.substr(0, colon);
        }
        const auto lo = number(p.substr(0, dots));
        const auto hi = number(rest);
        if (hi < lo) invalid("empty k range: " + std::string(text));
        for (std::size_t k = lo; k <= hi; k += step) out.push_back(k);
    }
    if (out.empty()) invalid("empty k range");
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i] <= out[i - 1]) invalid("k values must be strictly increasing: " + std::string(text));
    }
    return out;
}

PipelineConfig parse_config(std::string_view json_text, const fs::path& base_dir,
                            const std::vector<std::pair<std::string, std::string>>& overrides) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) invalid("config is not a JSON object");
    resolve_paths(j, base_dir);

    json extra = json::object();
    for (const auto& [raw_key, value] : overrides) {
        std::string key = raw_key;
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        std::replace(key.begin(), key.end(), '-', '_');
        extra[key] = override_value(value);
        if (path_keys().contains(key) && extra[key].is_number()) extra[key] = value;
    }
    resolve_paths(extra, fs::current_path());
    for (auto& [key, value] : extra.items()) j[key] = value;

    PipelineConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (!known_keys().contains(key)) invalid("unknown config key: " + key);
        try {
            apply(cfg, key, value);
        } catch (const nlohmann::json::exception&) {
            invalid("ill-typed value for " + key);
        }
    }
    return cfg;
}

PipelineConfig load_config(const fs::path& file, const std::vector<std::pair<std::string, std::string>>& overrides) {
    if (!fs::exists(file)) invalid("config file not found: " + file.string());
    const auto base = fs::absolute(file).parent_path();
    return parse_config(io::read_text(file), base, overrides);
}

void validate(const PipelineConfig& cfg) {
    if (!cfg.seed) invalid("seed is required");
    if (cfg.output_dir.empty()) invalid("output_dir is required");
    if (cfg.crime_inputs.empty()) invalid("crime_inputs is empty");
    if (cfg.article_inputs.empty()) invalid("article_inputs is empty");
    auto must_exist = [](const fs::path& p, const char* what) {
        if (!fs::exists(p)) invalid(std::string(what) + " not found: " + p.string());
    };
    for (const auto& p : cfg.crime_inputs) must_exist(p, "crime input");
    for (const auto& p : cfg.article_inputs) must_exist(p, "article input");
    if (cfg.rules) must_exist(*cfg.rules, "rules file");
    if (cfg.dictionary) must_exist(*cfg.dictionary, "dictionary");
    if (cfg.stoplist) must_exist(*cfg.stoplist, "stoplist");
    if (cfg.gazetteers && !fs::is_directory(*cfg.gazetteers)) invalid("gazetteer directory not found");
    if (cfg.threshold < 1) invalid("threshold must be at least 1");
    if (cfg.max_features < 1) invalid("max_features must be at least 1");
    if (!(cfg.max_df_ratio > 0.0 && cfg.max_df_ratio <= 1.0)) invalid("max_df_ratio must lie in (0, 1]");
    if (!cfg.k && cfg.sweep.empty()) invalid("set k or a sweep range");
    if (cfg.k && *cfg.k < 1) invalid("k must be at least 1");
    if (cfg.max_iter < 1) invalid("max_iter must be at least 1");
    if (!(cfg.tol >= 0.0)) invalid("tol must be non-negative");
    if (!(cfg.eps > 0.0)) invalid("eps must be positive");
    if (cfg.min_samples < 1) invalid("min_samples must be at least 1");
    if (cfg.lda_topics < 1) invalid("lda_topics must be at least 1");
    if (cfg.lda_alpha && !(*cfg.lda_alpha > 0.0)) invalid("lda_alpha must be positive");
    if (!(cfg.lda_beta > 0.0)) invalid("lda_beta must be positive");
    if (cfg.top_terms < 1 || cfg.top_words < 1 || cfg.word_frequencies < 1) invalid("top-n counts must be at least 1");
    if (cfg.rules) {
        try {
            crimemap::compile_rules(crimemap::parse_rules(io::read_text(*cfg.rules)));
        } catch (const Error& e) {
            invalid(std::string("rules file: ") + e.what());
        }
    }
    try {
        load_dictionary(cfg);
    } catch (const Error& e) {
        invalid(std::string("dictionary: ") + e.what());
    }
}

std::string config_json(const PipelineConfig& cfg) {
    json j;
    auto paths = [](const std::vector<fs::path>& v) {
        json a = json::array();
        for (const auto& p : v) a.push_back(p.string());
        return a;
    };
    auto opt_path = [](const std::optional<fs::path>& p) { return p ? json(p->string()) : json(nullptr); };
    j["crime_inputs"] = paths(cfg.crime_inputs);
    j["article_inputs"] = paths(cfg.article_inputs);
    j["rules"] = opt_path(cfg.rules);
    j["dictionary"] = opt_path(cfg.dictionary);
    j["exclusion_groups"] = cfg.exclusion_groups ? json(*cfg.exclusion_groups) : json(nullptr);
    j["stoplist"] = opt_path(cfg.stoplist);
    j["gazetteers"] = opt_path(cfg.gazetteers);
    j["threshold"] = cfg.threshold;
    j["min_df"] = cfg.min_df;
    j["max_df_ratio"] = cfg.max_df_ratio;
    j["max_features"] = cfg.max_features;
    j["k"] = cfg.k ? json(*cfg.k) : json(nullptr);
    j["sweep"] = cfg.sweep;
    j["max_iter"] = cfg.max_iter;
    j["tol"] = cfg.tol;
    j["top_terms"] = cfg.top_terms;
    j["eps"] = cfg.eps;
    j["min_samples"] = cfg.min_samples;
    j["lda_topics"] = cfg.lda_topics;
    j["lda_alpha"] = cfg.lda_alpha ? json(*cfg.lda_alpha) : json(nullptr);
    j["lda_beta"] = cfg.lda_beta;
    j["lda_iterations"] = cfg.lda_iterations;
    j["top_words"] = cfg.top_words;
    j["word_frequencies"] = cfg.word_frequencies;
    j["seed"] = cfg.seed ? json(*cfg.seed) : json(nullptr);
    j["output_dir"] = cfg.output_dir.string();
    return j.dump(2);
}

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::Ingest: return "ingest";
        case Stage::Crimemap: return "crimemap";
        case Stage::Corpus: return "corpus";
        case Stage::Vectorize: return "vectorize";
        case Stage::Cluster: return "cluster";
        case Stage::Topics: return "topics";
        case Stage::Entities: return "entities";
        case Stage::Analytics: return "analytics";
    }
    return "ingest";
}

std::optional<Stage> parse_stage(std::string_view name) {
    for (auto s : kStages) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

std::string manifest_json(const RunManifest& manifest) {
    json j;
    j["config"] = json::parse(manifest.config.empty() ? "{}" : manifest.config);
    json stages = json::array();
    for (const auto& s : manifest.stages) {
        json st;
        st["name"] = s.name;
        st["status"] = s.status;
        st["rows"] = s.rows;
        st["wall_ms"] = s.wall_ms;
        st["digests"] = s.digests;
        if (!s.error.empty()) st["error"] = s.error;
        stages.push_back(std::move(st));
    }
    j["stages"] = std::move(stages);
    return j.dump(2) + "\n";
}

RunManifest read_manifest(const fs::path& path) {
    if (!fs::exists(path)) raise(ErrorCode::MissingStageOutput, "missing " + path.string());
    const auto j = json::parse(io::read_text(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) raise(ErrorCode::MalformedValue, "manifest is not a JSON object");
    RunManifest m;
    try {
        m.config = j.at("config").dump(2);
        for (const auto& st : j.at("stages")) {
            StageRecord s;
            s.name = st.at("name").get<std::string>();
            s.status = st.at("status").get<std::string>();
            s.rows = st.at("rows").get<std::size_t>();
            s.wall_ms = st.at("wall_ms").get<double>();
            s.digests = st.at("digests").get<std::map<std::string, std::string>>();
            if (st.contains("error")) s.error = st.at("error").get<std::string>();
            m.stages.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::MalformedValue, std::string("manifest: ") + e.what());
    }
    return m;
}

StageFailure::StageFailure(std::string stage, const Error& cause)
    : Error(cause.code(), "stage " + stage + " failed: " + cause.what()), stage_(std::move(stage)), detail_(cause.what()) {}

StageRecord run_stage(Stage stage, const PipelineConfig& cfg) {
    if (!cfg.seed) raise(ErrorCode::Validation, "seed is required");
    const auto name = std::string(to_string(stage));
    const auto start = std::chrono::steady_clock::now();
    StageRecord rec;
    try {
        switch (stage) {
            case Stage::Ingest: rec = ingest_stage(cfg); break;
            case Stage::Crimemap: rec = crimemap_stage(cfg); break;
            case Stage::Corpus: rec = corpus_stage(cfg); break;
            case Stage::Vectorize: rec = vectorize_stage(cfg); break;
            case Stage::Cluster: rec = cluster_stage(cfg); break;
            case Stage::Topics: rec = topics_stage(cfg); break;
            case Stage::Entities: rec = entities_stage(cfg); break;
            case Stage::Analytics: rec = analytics_stage(cfg); break;
        }
    } catch (const Error& e) {
        throw StageFailure(name, e);
    } catch (const fs::filesystem_error& e) {
        throw StageFailure(name, Error(ErrorCode::Io, e.what()));
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

StageRecord run_kmeans(const PipelineConfig& cfg) {
    if (!cfg.seed) raise(ErrorCode::Validation, "seed is required");
    try {
        return finish("cluster", kmeans_part(cfg), cfg);
    } catch (const Error& e) {
        throw StageFailure("cluster", e);
    }
}

StageRecord run_dbscan(const PipelineConfig& cfg) {
    if (!cfg.seed) raise(ErrorCode::Validation, "seed is required");
    try {
        return finish("cluster", dbscan_part(cfg), cfg);
    } catch (const Error& e) {
        throw StageFailure("cluster", e);
    }
}

RunManifest run_pipeline(const PipelineConfig& cfg) {
    validate(cfg);
    fs::create_directories(cfg.output_dir);
    RunManifest manifest;
    manifest.config = config_json(cfg);
    const auto manifest_path = cfg.output_dir / "manifest.json";
    for (auto stage : kStages) {
        try {
            manifest.stages.push_back(run_stage(stage, cfg));
        } catch (const StageFailure& failure) {
            StageRecord rec;
            rec.name = failure.stage();
            rec.status = "failed";
            rec.error = failure.what();
            manifest.stages.push_back(std::move(rec));
            io::write_text(manifest_path, manifest_json(manifest));
            const auto q_ingest = quarantined_rows(stage_dir(cfg, "ingest") / "quarantine.csv");
            const auto q_corpus = quarantined_rows(stage_dir(cfg, "corpus") / "quarantine.csv");
            throw StageFailure(failure.stage(),
                               Error(failure.code(), failure.detail() + " (quarantined rows: ingest " +
                                                         std::to_string(q_ingest) + ", corpus " +
                                                         std::to_string(q_corpus) + ")"));
        }
    }
    io::write_text(manifest_path, manifest_json(manifest));
    io::write_text(cfg.output_dir / "report.txt", report::emit_report(manifest, cfg.output_dir));
    return manifest;
}

std::map<std::string, std::string> stage_digests(const fs::path& output_dir, std::string_view stage) {
    std::map<std::string, std::string> out;
    const auto dir = output_dir / std::string(stage);
    if (!fs::exists(dir)) return out;
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) out[fs::relative(f, output_dir).generic_string()] = digest::sha256_file(f);
    return out;
}

}  // namespace crimenews::pipeline
