#include <doctest.h>

#include <filesystem>

#include "crimenews/corpus.hpp"
#include "crimenews/error.hpp"
#include "crimenews/io.hpp"
#include "fixtures.hpp"

using namespace crimenews;
using namespace crimenews::corpus;

namespace {

ArticleStream stream(ArticleSchema schema, std::string label, std::string text) {
    return {schema, std::move(label), csv::parse(text)};
}

using Set = std::set<std::string>;

}  // namespace

TEST_CASE("article schema detection") {
    CHECK(detect_article_schema(std::vector<std::string>{"id", "title", "publication", "author", "content"}) ==
          ArticleSchema::KaggleNews);
    CHECK(detect_article_schema(std::vector<std::string>{"id", "newline_id", "news_outlet_id", "content"}) ==
          ArticleSchema::EagerNews);
    CHECK(detect_article_schema(article_header()) == ArticleSchema::Canonical);
    CHECK_THROWS_AS(detect_article_schema(std::vector<std::string>{"x"}), Error);
}

TEST_CASE("merge keeps order and fills missing attributes with null") {
    const auto k = stream(ArticleSchema::KaggleNews, "k.csv",
                          "id,title,publication,author,date,content\n"
                          "1,T1,CNN,Ann,2017-01-02,c1\n2,T2,CNN,,2017-01-03,c2\n3,T3,NPR,Bo,,c3\n");
    const auto e = stream(ArticleSchema::EagerNews, "e.csv",
                          "id,newline_id,news_outlet_id,outlet_name,title,publish_time,content\n"
                          "10,n1,o1,Herald,E1,2018-05-01 10:11:12,x\n11,n2,o2,Herald,E2,2018-05-01T10:11,y\n");
    const auto m = merge_articles(k, e);
    REQUIRE(m.articles.size() == 5);
    CHECK(m.quarantine.empty());
    CHECK(m.articles[0].id == "1");
    CHECK(m.articles[3].id == "10");
    CHECK(m.articles[3].source_dataset == ArticleSource::EagerNews);
    CHECK_FALSE(m.articles[1].author.has_value());
    CHECK_FALSE(m.articles[3].author.has_value());
    CHECK_FALSE(m.articles[0].outlet_name.has_value());
    CHECK(m.articles[4].publish_time == "2018-05-01 10:11:00");
    CHECK(to_row(m.articles[0]).size() == 11);
}

TEST_CASE("bad rows are quarantined") {
    const auto k = stream(ArticleSchema::KaggleNews, "k.csv",
                          "id,title,publication,date,content\n"
                          "1,T,CNN,yesterday,c\n,T,CNN,,c\n2,T,CNN\n3,T,CNN,2017-02-30,c\n");
    const auto m = merge_articles(std::span(&k, 1));
    CHECK(m.articles.size() == 1);
    CHECK(m.quarantine.size() == 3);
    CHECK(m.quarantine[0].record_number == 2);
}

TEST_CASE("articles CSV round-trips") {
    const auto k = stream(ArticleSchema::KaggleNews, "k.csv",
                          "id,title,publication,content\n1,\"A, B\",CNN,\"line one\nline two\"\n");
    const auto m = merge_articles(std::span(&k, 1));
    const auto dir = std::filesystem::path(CRIMENEWS_TEST_TMP);
    io::write_text(dir / "articles.csv", write_articles_csv(m.articles));
    const auto back = read_articles_csv(dir / "articles.csv");
    CHECK(back == m.articles);
}

TEST_CASE("match_stems examples") {
    const auto dict = default_dictionary();
    CHECK(match_stems("The robber stole weapons; police arrived", dict) == Set{"robber", "stol", "weapon", "police"});
    CHECK(match_stems("", dict).empty());
    CHECK(match_stems("Stolen STOLE stolidly", dict) == Set{"stol"});
    CHECK(match_stems("a missing person report", dict) == Set{"missing person"});
}

TEST_CASE("bundled dictionary keeps printed spellings") {
    const auto stems = default_dictionary_stems();
    CHECK(stems.size() == 66);
    for (const char* s : {"steel", "obsen", "vargrancy", "loister"}) {
        CHECK(std::find(stems.begin(), stems.end(), s) != stems.end());
    }
}

TEST_CASE("crime filter on hand-built articles") {
    const auto dict = default_dictionary();
    int i = 0;
    for (const auto& c : fixtures::filter_cases()) {
        const auto a = fixtures::article(std::to_string(i++), c);
        CAPTURE(c.content);
        CHECK(match_stems(searchable_text(a), dict).size() == c.stems);
        CHECK(is_crime_article(a, dict) == c.accepted);
    }
}

TEST_CASE("threshold boundary") {
    const auto dict = default_dictionary();
    Article a;
    a.id = "x";
    a.content = "robber and police";
    CHECK_FALSE(is_crime_article(a, dict, 3));
    CHECK(is_crime_article(a, dict, 2));
    CHECK_THROWS_AS(is_crime_article(a, dict, 0), Error);
}

TEST_CASE("dictionary validation") {
    CHECK_THROWS_AS(CrimeDictionary({}, {}), Error);
    CHECK_THROWS_AS(CrimeDictionary({"robber"}, {{"robber", "ghost"}}), Error);
    const CrimeDictionary d({"Robber", "police"}, {{"robber", "police"}});
    Article a;
    a.id = "1";
    a.content = "robbery police";
    CHECK_FALSE(is_crime_article(a, d, 2));
    CHECK_FALSE(is_crime_article(a, d, 1));
}

TEST_CASE("group_count") {
    std::vector<Article> arts(4);
    for (std::size_t i = 0; i < arts.size(); ++i) {
        arts[i].id = std::to_string(i);
        arts[i].outlet_name = i < 3 ? "A" : "B";
    }
    const auto g = group_count(arts, "outlet_name");
    CHECK(g.counts == std::map<std::string, std::size_t>{{"A", 3}, {"B", 1}});
    CHECK(g.hit_times.mean == doctest::Approx(2.0));
    CHECK(g.hit_times.p100 == doctest::Approx(3.0));

    const auto by_pub = group_count(arts, "Publication");
    CHECK(by_pub.counts.at(std::string(kNullGroup)) == 4);
    try {
        group_count(arts, "color");
        FAIL("expected UnknownAttribute");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownAttribute);
    }
}

TEST_CASE("fixture article files load") {
    const std::filesystem::path dir = std::filesystem::path(CRIMENEWS_FIXTURES) / "news";
    const auto k = load_articles(dir / "kaggle_articles.csv");
    const auto e = load_articles(dir / "eager_articles.csv");
    CHECK(k.schema == ArticleSchema::KaggleNews);
    CHECK(e.schema == ArticleSchema::EagerNews);
    const auto m = merge_articles(k, e);
    CHECK(m.articles.size() + m.quarantine.size() == 60);
    CHECK(m.quarantine.size() == 2);
}
