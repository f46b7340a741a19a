#include <doctest.h>

#include <string>
#include <vector>

#include "crimenews/csv.hpp"
#include "crimenews/error.hpp"
#include "crimenews/io.hpp"
#include "crimenews/textproc.hpp"

using namespace crimenews;
using textproc::terms;

TEST_CASE("tokenize splits on non-alphanumerics and lowercases") {
    CHECK(terms("Motor-Vehicle THEFT, 2nd degree!") ==
          std::vector<std::string>{"motor", "vehicle", "theft", "2nd", "degree"});
    CHECK(terms("").empty());
    CHECK(terms("  ...  ").empty());
}

TEST_CASE("tokenize keeps inner apostrophes") {
    CHECK(terms("the officer's car") == std::vector<std::string>{"the", "officer's", "car"});
    CHECK(terms("officer’s") == std::vector<std::string>{"officer's"});
    CHECK(terms("'quoted'") == std::vector<std::string>{"quoted"});
}

TEST_CASE("tokenize applies NFKC and Unicode case folding") {
    // Full-width letters and the fi ligature normalize to ASCII.
    CHECK(terms("ＡＢＣ") == std::vector<std::string>{"abc"});
    CHECK(terms("ﬁre") == std::vector<std::string>{"fire"});
    CHECK(terms("CAFÉ") == std::vector<std::string>{"café"});
}

TEST_CASE("token positions and originals") {
    const auto toks = textproc::tokenize("Boston Police");
    REQUIRE(toks.size() == 2);
    CHECK(toks[0].original == "Boston");
    CHECK(toks[0].text == "boston");
    CHECK(toks[1].position == 1);
}

TEST_CASE("tokenize_with_punct emits punctuation tokens") {
    const auto toks = textproc::tokenize_with_punct("Hi. Mr. Smith!");
    std::vector<std::string> seen;
    for (const auto& t : toks) seen.push_back(t.original);
    CHECK(seen == std::vector<std::string>{"Hi", ".", "Mr", ".", "Smith", "!"});
    CHECK(textproc::is_punct_token(toks[1]));
    CHECK_FALSE(textproc::is_punct_token(toks[0]));
}

TEST_CASE("stopword removal") {
    const auto& stop = textproc::default_stoplist();
    CHECK(stop.contains("the"));
    CHECK_FALSE(stop.contains("police"));
    CHECK(textproc::remove_stopwords(terms("The police and the suspect"), stop) ==
          std::vector<std::string>{"police", "suspect"});
}

TEST_CASE("term counts") {
    const auto t = terms("a b a c a");
    const auto counts = textproc::term_counts(t);
    CHECK(counts.at("a") == 3);
    CHECK(counts.at("c") == 1);
}

TEST_CASE("prefix matcher: single and multi-word stems") {
    const std::vector<std::string> stems = {"larcen", "missing person", "steal", "vehicle"};
    const textproc::PrefixMatcher m(stems);
    CHECK(m.match(terms("Larceny reported")) == std::vector<std::size_t>{0});
    CHECK(m.match(terms("a missing persons report")) == std::vector<std::size_t>{1});
    CHECK(m.match(terms("missing the person")).empty());
    CHECK(m.match(terms("stealing vehicles, stealth vehicle")) == std::vector<std::size_t>{2, 3});
    CHECK(m.match(terms("stea")).empty());
}

TEST_CASE("prefix matcher deduplicates normalized stems") {
    const std::vector<std::string> stems = {"Theft", "theft", " theft "};
    const textproc::PrefixMatcher m(stems);
    CHECK(m.size() == 1);
}

TEST_CASE("csv parser handles quotes, CRLF, BOM and blank lines") {
    const auto t = csv::parse("\xEF\xBB\xBF" "a, b ,c\r\n1,\"x, y\",\"he said \"\"hi\"\"\"\r\n\r\n2,\"multi\nline\",3\n");
    CHECK(t.header == csv::Row{"a", "b", "c"});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][1] == "x, y");
    CHECK(t.rows[0][2] == "he said \"hi\"");
    CHECK(t.rows[1][1] == "multi\nline");
    CHECK(t.record_numbers[1] == 4);
    CHECK(t.column("b") == 1);
    CHECK(t.column("z") == csv::Table::npos);
}

TEST_CASE("csv parser rejects an unterminated quote") {
    CHECK_THROWS_AS(csv::parse("a\n\"open"), Error);
}

TEST_CASE("csv writer round-trips") {
    csv::Writer w;
    w.row({"plain", "with,comma", "with \"quote\"", "two\nlines", ""});
    const auto t = csv::parse("h1,h2,h3,h4,h5\n" + w.str());
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0] == csv::Row{"plain", "with,comma", "with \"quote\"", "two\nlines", ""});
}

TEST_CASE("number formatting and parsing") {
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(3.0) == "3");
    double d = 0;
    CHECK(io::parse_double("1e-3", d));
    CHECK(d == doctest::Approx(0.001));
    CHECK_FALSE(io::parse_double("1.5x", d));
    CHECK_FALSE(io::parse_double("", d));
    long long i = 0;
    CHECK(io::parse_int("+42", i));
    CHECK(i == 42);
    CHECK_FALSE(io::parse_int("4.2", i));
}

TEST_CASE("word lists skip comments and blanks") {
    CHECK(io::parse_word_list("# header\n\n alpha \nbeta\n#x\n") == std::vector<std::string>{"alpha", "beta"});
}

TEST_CASE("bundled data is available") {
    CHECK_FALSE(io::bundled("stoplist.txt").empty());
    CHECK_THROWS_AS(io::bundled("nope.txt"), Error);
}
