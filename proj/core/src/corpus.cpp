#include "crimenews/corpus.hpp"

#include <algorithm>
#include <array>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"

namespace crimenews::corpus {
namespace {

enum class Attr {
    DataSource,
    Id,
    Title,
    Publication,
    NewlineId,
    NewsOutletId,
    Author,
    PublishTime,
    OutletName,
    Content,
    ArticleUrl,
};

struct AttrName {
    std::string_view column;
    std::string_view field;
    Attr attr;
};

constexpr std::array<AttrName, 11> kAttrs = {{
    {"DataSource", "source_dataset", Attr::DataSource},
    {"ID", "id", Attr::Id},
    {"Title", "title", Attr::Title},
    {"Publication", "publication", Attr::Publication},
    {"NewlineID", "newline_id", Attr::NewlineId},
    {"NewsOutletID", "news_outlet_id", Attr::NewsOutletId},
    {"Author", "author", Attr::Author},
    {"PublishTime", "publish_time", Attr::PublishTime},
    {"OutletName", "outlet_name", Attr::OutletName},
    {"Content", "content", Attr::Content},
    {"ArticleURL", "article_url", Attr::ArticleUrl},
}};

struct ColumnMap {
    std::string_view column;
    Attr attr;
};

const std::vector<ColumnMap>& mapping(ArticleSchema schema) {
    static const std::vector<ColumnMap> kaggle = {
        {"id", Attr::Id},          {"title", Attr::Title}, {"publication", Attr::Publication},
        {"author", Attr::Author},  {"date", Attr::PublishTime}, {"url", Attr::ArticleUrl},
        {"content", Attr::Content},
    };
    static const std::vector<ColumnMap> eager = {
        {"id", Attr::Id},
        {"newline_id", Attr::NewlineId},
        {"news_outlet_id", Attr::NewsOutletId},
        {"outlet_name", Attr::OutletName},
        {"title", Attr::Title},
        {"author", Attr::Author},
        {"publish_time", Attr::PublishTime},
        {"content", Attr::Content},
        {"article_url", Attr::ArticleUrl},
    };
    static const std::vector<ColumnMap> canonical = [] {
        std::vector<ColumnMap> m;
        for (const auto& a : kAttrs) m.push_back({a.column, a.attr});
        return m;
    }();
    switch (schema) {
        case ArticleSchema::KaggleNews: return kaggle;
        case ArticleSchema::EagerNews: return eager;
        case ArticleSchema::Canonical: return canonical;
    }
    return canonical;
}

std::vector<std::string_view> signature(ArticleSchema schema) {
    switch (schema) {
        case ArticleSchema::KaggleNews: return {"id", "title", "publication", "content"};
        case ArticleSchema::EagerNews: return {"newline_id", "news_outlet_id", "content"};
        case ArticleSchema::Canonical: return {"DataSource", "ID", "Content", "NewlineID"};
    }
    return {};
}

bool is_digits(std::string_view s, std::size_t n) {
    return s.size() == n && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Accepts "YYYY-MM-DD" with an optional "[ T]HH:MM[:SS]" suffix.
std::optional<std::string> normalize_timestamp(std::string_view text) {
    if (text.size() < 10) return std::nullopt;
    const auto date = text.substr(0, 10);
    if (!is_digits(date.substr(0, 4), 4) || date[4] != '-' || !is_digits(date.substr(5, 2), 2) || date[7] != '-' ||
        !is_digits(date.substr(8, 2), 2)) {
        return std::nullopt;
    }
    const int month = std::stoi(std::string(date.substr(5, 2)));
    const int day = std::stoi(std::string(date.substr(8, 2)));
    if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
    if (text.size() == 10) return std::string(date);
    auto rest = text.substr(10);
    if (rest.front() != ' ' && rest.front() != 'T') return std::nullopt;
    rest.remove_prefix(1);
    if (rest.size() != 5 && rest.size() != 8) return std::nullopt;
    if (!is_digits(rest.substr(0, 2), 2) || rest[2] != ':' || !is_digits(rest.substr(3, 2), 2)) return std::nullopt;
    std::string seconds = "00";
    if (rest.size() == 8) {
        if (rest[5] != ':' || !is_digits(rest.substr(6, 2), 2)) return std::nullopt;
        seconds = std::string(rest.substr(6, 2));
    }
    const int hh = std::stoi(std::string(rest.substr(0, 2)));
    const int mm = std::stoi(std::string(rest.substr(3, 2)));
    if (hh > 23 || mm > 59 || std::stoi(seconds) > 60) return std::nullopt;
    return std::string(date) + " " + std::string(rest.substr(0, 5)) + ":" + seconds;
}

void set_attr(Article& a, Attr attr, std::string_view value) {
    auto opt = [&]() -> std::optional<std::string> {
        if (value.empty()) return std::nullopt;
        return std::string(value);
    };
    switch (attr) {
        case Attr::DataSource: {
            auto src = parse_article_source(value);
            if (!src) raise(ErrorCode::MalformedValue, "DataSource='" + std::string(value) + "' is not a news source");
            a.source_dataset = *src;
            break;
        }
        case Attr::Id: a.id = std::string(value); break;
        case Attr::Title: a.title = opt(); break;
        case Attr::Publication: a.publication = opt(); break;
        case Attr::NewlineId: a.newline_id = opt(); break;
        case Attr::NewsOutletId: a.news_outlet_id = opt(); break;
        case Attr::Author: a.author = opt(); break;
        case Attr::PublishTime:
            if (value.empty()) {
                a.publish_time.reset();
            } else if (auto ts = normalize_timestamp(value)) {
                a.publish_time = *ts;
            } else {
                raise(ErrorCode::MalformedValue, "publish time '" + std::string(value) + "' is not a timestamp");
            }
            break;
        case Attr::OutletName: a.outlet_name = opt(); break;
        case Attr::Content: a.content = std::string(value); break;
        case Attr::ArticleUrl: a.article_url = opt(); break;
    }
}

std::optional<std::string> get_attr(const Article& a, Attr attr) {
    switch (attr) {
        case Attr::DataSource: return std::string(to_string(a.source_dataset));
        case Attr::Id: return a.id;
        case Attr::Title: return a.title;
        case Attr::Publication: return a.publication;
        case Attr::NewlineId: return a.newline_id;
        case Attr::NewsOutletId: return a.news_outlet_id;
        case Attr::Author: return a.author;
        case Attr::PublishTime: return a.publish_time;
        case Attr::OutletName: return a.outlet_name;
        case Attr::Content: return a.content;
        case Attr::ArticleUrl: return a.article_url;
    }
    return std::nullopt;
}

void append_stream(const ArticleStream& stream, ArticleMerge& out) {
    const auto& header = stream.table.header;
    const auto& cols = mapping(stream.schema);
    std::vector<std::pair<std::size_t, Attr>> present;
    for (const auto& c : cols) {
        if (auto idx = stream.table.column(c.column); idx != csv::Table::npos) present.emplace_back(idx, c.attr);
    }
    for (std::size_t i = 0; i < stream.table.rows.size(); ++i) {
        const auto& row = stream.table.rows[i];
        const std::size_t record = i < stream.table.record_numbers.size() ? stream.table.record_numbers[i] : i + 2;
        if (row.size() != header.size()) {
            out.quarantine.push_back({stream.label, record,
                                      "MalformedValue: row has " + std::to_string(row.size()) +
                                          " fields, header has " + std::to_string(header.size()),
                                      header, row});
            continue;
        }
        Article article;
        article.source_dataset =
            stream.schema == ArticleSchema::EagerNews ? ArticleSource::EagerNews : ArticleSource::KaggleNews;
        try {
            for (auto [idx, attr] : present) set_attr(article, attr, io::trim(row[idx]));
            if (article.id.empty()) raise(ErrorCode::MalformedValue, "article has no id");
        } catch (const Error& e) {
            out.quarantine.push_back({stream.label, record, e.what(), header, row});
            continue;
        }
        out.articles.push_back(std::move(article));
    }
}

}  // namespace

std::string_view to_string(ArticleSource source) {
    return source == ArticleSource::EagerNews ? "EagerNews" : "KaggleNews";
}

std::optional<ArticleSource> parse_article_source(std::string_view name) {
    if (name == "KaggleNews") return ArticleSource::KaggleNews;
    if (name == "EagerNews") return ArticleSource::EagerNews;
    return std::nullopt;
}

const std::vector<std::string>& article_header() {
    static const std::vector<std::string> header = [] {
        std::vector<std::string> h;
        for (const auto& a : kAttrs) h.emplace_back(a.column);
        return h;
    }();
    return header;
}

csv::Row to_row(const Article& article) {
    csv::Row row;
    for (const auto& a : kAttrs) row.push_back(get_attr(article, a.attr).value_or(""));
    return row;
}

ArticleSchema detect_article_schema(std::span<const std::string> header) {
    std::vector<ArticleSchema> matches;
    for (auto schema : {ArticleSchema::KaggleNews, ArticleSchema::EagerNews, ArticleSchema::Canonical}) {
        const auto sig = signature(schema);
        const bool all = std::all_of(sig.begin(), sig.end(), [&](std::string_view col) {
            return std::find(header.begin(), header.end(), col) != header.end();
        });
        if (all) matches.push_back(schema);
    }
    if (matches.empty()) raise(ErrorCode::UnrecognizedSchema, "header matches no article source");
    if (matches.size() > 1) raise(ErrorCode::AmbiguousSchema, "header matches several article sources");
    return matches.front();
}

ArticleStream load_articles(const std::filesystem::path& path) {
    ArticleStream s;
    s.table = csv::read_file(path);
    s.schema = detect_article_schema(s.table.header);
    s.label = path.filename().string();
    return s;
}

ArticleMerge merge_articles(const ArticleStream& a, const ArticleStream& b) {
    ArticleMerge out;
    append_stream(a, out);
    append_stream(b, out);
    return out;
}

ArticleMerge merge_articles(std::span<const ArticleStream> streams) {
    ArticleMerge out;
    for (const auto& s : streams) append_stream(s, out);
    return out;
}

std::string write_articles_csv(std::span<const Article> articles) {
    csv::Writer w;
    w.row(article_header());
    for (const auto& a : articles) w.row(to_row(a));
    return w.str();
}

std::string write_quarantine_csv(std::span<const QuarantinedArticle> rows) {
    csv::Writer w;
    w.row({"input", "record", "reason", "header", "original"});
    for (const auto& q : rows) {
        w.row({q.label, std::to_string(q.record_number), q.reason, csv::format_row(q.header),
               csv::format_row(q.original)});
    }
    return w.str();
}

std::vector<Article> read_articles_csv(const std::filesystem::path& path) {
    ArticleStream s;
    s.table = csv::read_file(path);
    s.schema = detect_article_schema(s.table.header);
    if (s.schema != ArticleSchema::Canonical) {
        raise(ErrorCode::UnrecognizedSchema, path.string() + " is not a merged article CSV");
    }
    s.label = path.filename().string();
    ArticleMerge out;
    append_stream(s, out);
    if (!out.quarantine.empty()) raise(ErrorCode::MalformedValue, path.string() + ": " + out.quarantine.front().reason);
    return std::move(out.articles);
}

CrimeDictionary::CrimeDictionary(std::vector<std::string> stems, std::vector<std::vector<std::string>> exclusion_groups)
    : matcher_(stems) {
    if (matcher_.size() == 0) raise(ErrorCode::InvalidArgument, "crime dictionary has no stems");
    const auto& known = matcher_.stems();
    for (const auto& group : exclusion_groups) {
        std::set<std::string> normalized;
        for (const auto& s : group) {
            std::string key;
            for (const auto& t : textproc::terms(s)) key += (key.empty() ? "" : " ") + t;
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                raise(ErrorCode::InvalidArgument, "exclusion stem '" + s + "' is not in the dictionary");
            }
            normalized.insert(key);
        }
        if (!normalized.empty()) exclusions_.push_back(std::move(normalized));
    }
}

std::set<std::string> CrimeDictionary::match(std::string_view text) const {
    const auto words = textproc::terms(text);
    std::set<std::string> hits;
    for (std::size_t id : matcher_.match(words)) hits.insert(matcher_.stems()[id]);
    return hits;
}

std::vector<std::vector<std::string>> default_exclusion_groups() {
    return {{"vehicle", "accident", "damage"}, {"fire", "damage", "incident"}, {"fraud", "dispute", "offense"}};
}

std::vector<std::string> default_dictionary_stems() { return io::parse_word_list(io::bundled("crime_dictionary.txt")); }

CrimeDictionary default_dictionary() { return CrimeDictionary(default_dictionary_stems(), default_exclusion_groups()); }

std::set<std::string> match_stems(std::string_view text, const CrimeDictionary& dict) { return dict.match(text); }

std::string searchable_text(const Article& article) {
    if (!article.title) return article.content;
    return *article.title + " " + article.content;
}

bool is_crime_article(const Article& article, const CrimeDictionary& dict, std::size_t threshold) {
    if (threshold < 1) raise(ErrorCode::InvalidArgument, "threshold must be at least 1");
    const auto hits = dict.match(searchable_text(article));
    if (hits.size() < threshold) return false;
    for (const auto& group : dict.exclusion_groups()) {
        if (std::includes(group.begin(), group.end(), hits.begin(), hits.end())) return false;
    }
    return true;
}

GroupCount group_count(std::span<const Article> articles, std::string_view key) {
    const AttrName* attr = nullptr;
    for (const auto& a : kAttrs) {
        if (a.column == key || a.field == key) attr = &a;
    }
    if (!attr) raise(ErrorCode::UnknownAttribute, "articles have no attribute '" + std::string(key) + "'");
    GroupCount out;
    for (const auto& article : articles) {
        auto value = get_attr(article, attr->attr);
        ++out.counts[value && !value->empty() ? *value : std::string(kNullGroup)];
    }
    if (!out.counts.empty()) {
        std::vector<double> values;
        for (const auto& [k, n] : out.counts) values.push_back(static_cast<double>(n));
        out.hit_times = analytics::summary_stats(values);
    }
    return out;
}

}  // namespace crimenews::corpus
