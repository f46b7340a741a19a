#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crimenews/csv.hpp"
#include "crimenews/stats.hpp"
#include "crimenews/textproc.hpp"

namespace crimenews::corpus {

enum class ArticleSource { KaggleNews, EagerNews };

std::string_view to_string(ArticleSource source);
std::optional<ArticleSource> parse_article_source(std::string_view name);

struct Article {
    ArticleSource source_dataset = ArticleSource::KaggleNews;
    std::string id;
    std::optional<std::string> title;
    std::optional<std::string> publication;
    std::optional<std::string> newline_id;
    std::optional<std::string> news_outlet_id;
    std::optional<std::string> author;
    std::optional<std::string> publish_time;  // "YYYY-MM-DD" or "YYYY-MM-DD HH:MM:SS"
    std::optional<std::string> outlet_name;
    std::string content;
    std::optional<std::string> article_url;

    friend bool operator==(const Article&, const Article&) = default;
};

/// The eleven merged article columns, in output order.
const std::vector<std::string>& article_header();
csv::Row to_row(const Article& article);

/// Input layouts an article file may arrive in.
enum class ArticleSchema { KaggleNews, EagerNews, Canonical };

ArticleSchema detect_article_schema(std::span<const std::string> header);

struct ArticleStream {
    ArticleSchema schema = ArticleSchema::Canonical;
    std::string label;
    csv::Table table;
};

ArticleStream load_articles(const std::filesystem::path& path);

struct QuarantinedArticle {
    std::string label;
    std::size_t record_number = 0;
    std::string reason;
    csv::Row header;
    csv::Row original;
};

struct ArticleMerge {
    std::vector<Article> articles;
    std::vector<QuarantinedArticle> quarantine;
};

/// Converts both streams to the merged schema; `a` rows precede `b` rows.
ArticleMerge merge_articles(const ArticleStream& a, const ArticleStream& b);
/// Same, for any number of streams in order.
ArticleMerge merge_articles(std::span<const ArticleStream> streams);

std::string write_articles_csv(std::span<const Article> articles);
std::string write_quarantine_csv(std::span<const QuarantinedArticle> rows);
std::vector<Article> read_articles_csv(const std::filesystem::path& path);

/// Crime stem dictionary plus groups of stems that cannot qualify an
/// article on their own.
class CrimeDictionary {
public:
    /// Throws Error(InvalidArgument) when `stems` is empty or an exclusion
    /// group names a stem outside the dictionary.
    CrimeDictionary(std::vector<std::string> stems, std::vector<std::vector<std::string>> exclusion_groups);

    const std::vector<std::string>& stems() const noexcept { return matcher_.stems(); }
    const std::vector<std::set<std::string>>& exclusion_groups() const noexcept { return exclusions_; }

    std::set<std::string> match(std::string_view text) const;

private:
    textproc::PrefixMatcher matcher_;
    std::vector<std::set<std::string>> exclusions_;
};

std::vector<std::vector<std::string>> default_exclusion_groups();
std::vector<std::string> default_dictionary_stems();
CrimeDictionary default_dictionary();

std::set<std::string> match_stems(std::string_view text, const CrimeDictionary& dict);

/// Title and content joined by a blank, the text the filter scans.
std::string searchable_text(const Article& article);

inline constexpr std::size_t kDefaultThreshold = 3;

/// True when the article hits at least `threshold` distinct stems and the hit
/// set is not contained in any exclusion group.
bool is_crime_article(const Article& article, const CrimeDictionary& dict, std::size_t threshold = kDefaultThreshold);

inline constexpr std::string_view kNullGroup = "(null)";

struct GroupCount {
    std::map<std::string, std::size_t> counts;  // null values under kNullGroup
    analytics::SummaryStats hit_times;          // over the per-group counts
};

/// Groups articles by one of the eleven attribute names (either the merged
/// column name, e.g. "OutletName", or the field name, e.g. "outlet_name").
/// Throws Error(UnknownAttribute).
GroupCount group_count(std::span<const Article> articles, std::string_view key);

}  // namespace crimenews::corpus
