#include "crimenews/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "crimenews/csv.hpp"
#include "crimenews/error.hpp"
#include "crimenews/io.hpp"

namespace crimenews::vectorize {

std::size_t Vocabulary::index_of(std::string_view term) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), term);
    if (it == terms.end() || *it != term) return npos;
    return static_cast<std::size_t>(it - terms.begin());
}

Vocabulary fit_vocabulary(std::span<const Document> docs, const VocabularyParams& params) {
    if (docs.empty()) raise(ErrorCode::InvalidArgument, "cannot fit a vocabulary on zero documents");
    std::map<std::string, std::size_t> df;
    std::map<std::string, std::size_t> total;
    for (const auto& doc : docs) {
        std::set<std::string_view> seen;
        for (const auto& t : doc.terms) {
            ++total[t];
            if (seen.insert(t).second) ++df[t];
        }
    }
    const double n = static_cast<double>(docs.size());
    struct Candidate {
        std::string term;
        std::size_t count;
    };
    std::vector<Candidate> kept;
    for (const auto& [term, d] : df) {
        if (d < params.min_df) continue;
        if (static_cast<double>(d) / n > params.max_df_ratio) continue;
        kept.push_back({term, total[term]});
    }
    if (kept.empty()) raise(ErrorCode::EmptyVocabulary, "document-frequency pruning removed every term");
    if (kept.size() > params.max_features) {
        std::stable_sort(kept.begin(), kept.end(), [](const Candidate& a, const Candidate& b) {
            if (a.count != b.count) return a.count > b.count;
            return a.term < b.term;
        });
        kept.resize(params.max_features);
    }
    Vocabulary voc;
    voc.n_docs = docs.size();
    for (auto& c : kept) {
        voc.df[c.term] = df[c.term];
        voc.terms.push_back(std::move(c.term));
    }
    std::sort(voc.terms.begin(), voc.terms.end());
    return voc;
}

double idf(const Vocabulary& voc, std::string_view term) {
    auto it = voc.df.find(std::string(term));
    if (it == voc.df.end()) raise(ErrorCode::UnknownTerm, "'" + std::string(term) + "' is not in the vocabulary");
    return std::log((1.0 + static_cast<double>(voc.n_docs)) / (1.0 + static_cast<double>(it->second))) + 1.0;
}

DocTermMatrix transform(const Vocabulary& voc, std::span<const Document> docs) {
    std::vector<double> weights(voc.terms.size());
    for (std::size_t j = 0; j < voc.terms.size(); ++j) weights[j] = idf(voc, voc.terms[j]);

    DocTermMatrix out;
    out.weights = Matrix(docs.size(), voc.terms.size());
    out.doc_ids.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        out.doc_ids.push_back(docs[i].id);
        auto row = out.weights.row(i);
        for (const auto& t : docs[i].terms) {
            const std::size_t j = voc.index_of(t);
            if (j != Vocabulary::npos) row[j] += 1.0;
        }
        for (std::size_t j = 0; j < row.size(); ++j) row[j] *= weights[j];
        const double norm = l2_norm(row);
        if (norm > 0.0) {
            for (auto& w : row) w /= norm;
        }
    }
    return out;
}

std::string write_vocabulary_csv(const Vocabulary& voc) {
    csv::Writer w;
    w.row({"term", "df", "idf", "n_docs"});
    for (const auto& t : voc.terms) {
        w.row({t, std::to_string(voc.df.at(t)), io::format_double(idf(voc, t)), std::to_string(voc.n_docs)});
    }
    return w.str();
}

Vocabulary read_vocabulary_csv(const std::filesystem::path& path) {
    const auto table = csv::read_file(path);
    const auto term_col = table.column("term");
    const auto df_col = table.column("df");
    const auto n_col = table.column("n_docs");
    if (term_col == csv::Table::npos || df_col == csv::Table::npos || n_col == csv::Table::npos) {
        raise(ErrorCode::MalformedValue, path.string() + " is not a vocabulary CSV");
    }
    Vocabulary voc;
    for (const auto& row : table.rows) {
        long long df = 0, n = 0;
        if (!io::parse_int(row.at(df_col), df) || !io::parse_int(row.at(n_col), n)) {
            raise(ErrorCode::MalformedValue, path.string() + ": bad df/n_docs value");
        }
        voc.terms.push_back(row.at(term_col));
        voc.df[row.at(term_col)] = static_cast<std::size_t>(df);
        voc.n_docs = static_cast<std::size_t>(n);
    }
    std::sort(voc.terms.begin(), voc.terms.end());
    return voc;
}

std::string write_matrix_csv(const DocTermMatrix& m, std::span<const std::string> terms) {
    csv::Writer w;
    csv::Row header{"doc_id"};
    header.insert(header.end(), terms.begin(), terms.end());
    w.row(header);
    for (std::size_t i = 0; i < m.weights.rows(); ++i) {
        csv::Row row{m.doc_ids.at(i)};
        for (double v : m.weights.row(i)) row.push_back(io::format_double(v));
        w.row(row);
    }
    return w.str();
}

void write_matrix_binary(const std::filesystem::path& stem, const DocTermMatrix& m) {
    io::write_f64_block(stem.string() + ".f64", m.weights.values());
    nlohmann::ordered_json meta;
    meta["rows"] = m.weights.rows();
    meta["cols"] = m.weights.cols();
    meta["dtype"] = "float64";
    meta["byte_order"] = "little";
    meta["layout"] = "row-major";
    meta["doc_ids"] = m.doc_ids;
    io::write_text(stem.string() + ".json", meta.dump(2) + "\n");
}

DocTermMatrix read_matrix_binary(const std::filesystem::path& stem) {
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(io::read_text(stem.string() + ".json"));
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::MalformedValue, stem.string() + ".json: " + e.what());
    }
    const auto rows = meta.at("rows").get<std::size_t>();
    const auto cols = meta.at("cols").get<std::size_t>();
    DocTermMatrix m;
    m.weights = Matrix(rows, cols, io::read_f64_block(stem.string() + ".f64"));
    m.doc_ids = meta.at("doc_ids").get<std::vector<std::string>>();
    if (m.doc_ids.size() != rows) raise(ErrorCode::MalformedValue, stem.string() + ": doc id count mismatch");
    return m;
}

}  // namespace crimenews::vectorize
