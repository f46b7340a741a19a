#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crimenews/matrix.hpp"

namespace crimenews::vectorize {

/// A tokenized (and usually stopword-filtered) document.
struct Document {
    std::string id;
    std::vector<std::string> terms;
};

struct VocabularyParams {
    std::size_t min_df = 5;
    double max_df_ratio = 0.95;  // df / n_docs above this is pruned
    std::size_t max_features = 60;
};

/// Fitted term list, sorted lexicographically, with document frequencies.
struct Vocabulary {
    std::vector<std::string> terms;
    std::map<std::string, std::size_t> df;
    std::size_t n_docs = 0;

    /// Column of `term`, or npos.
    std::size_t index_of(std::string_view term) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

/// Keeps terms with min_df <= df and df / n_docs <= max_df_ratio, then the
/// max_features of those with the largest total count (ties lexicographic).
/// Throws Error(InvalidArgument) for an empty corpus and
/// Error(EmptyVocabulary) when pruning leaves nothing.
Vocabulary fit_vocabulary(std::span<const Document> docs, const VocabularyParams& params = {});

/// Smoothed inverse document frequency ln((1 + N) / (1 + df)) + 1.
/// Throws Error(UnknownTerm).
double idf(const Vocabulary& voc, std::string_view term);

struct DocTermMatrix {
    Matrix weights;  // one L2-normalized row per document
    std::vector<std::string> doc_ids;
};

/// Raw weight is in-document count times idf; each nonzero row is then
/// scaled to unit L2 norm. Terms outside the vocabulary are ignored.
DocTermMatrix transform(const Vocabulary& voc, std::span<const Document> docs);

/// Vocabulary as CSV rows (term, df, idf) with an n_docs comment-free header.
std::string write_vocabulary_csv(const Vocabulary& voc);
Vocabulary read_vocabulary_csv(const std::filesystem::path& path);

std::string write_matrix_csv(const DocTermMatrix& m, std::span<const std::string> terms);

/// Binary block (little-endian f64, row-major) plus a JSON sidecar with the
/// shape and document ids. `stem` gets ".f64" and ".json" appended.
void write_matrix_binary(const std::filesystem::path& stem, const DocTermMatrix& m);
DocTermMatrix read_matrix_binary(const std::filesystem::path& stem);

}  // namespace crimenews::vectorize
