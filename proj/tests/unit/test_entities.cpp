#include <doctest.h>

#include <filesystem>

#include "crimenews/entities.hpp"
#include "crimenews/io.hpp"

using namespace crimenews;
using namespace crimenews::entities;

namespace {

std::vector<std::pair<std::string, std::string>> spans(std::string_view text, const Gazetteers& g) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : extract_entities(text, g)) out.emplace_back(e.text, std::string(to_string(e.label)));
    return out;
}

using Spans = std::vector<std::pair<std::string, std::string>>;

}  // namespace

TEST_CASE("tagging") {
    const auto t = tag_text("Yesterday Boston police found 3 guns on Monday.");
    REQUIRE(t.size() == 9);
    CHECK(t[0].sentence_initial);
    CHECK(t[0].tag == Tag::Word);
    CHECK(t[1].tag == Tag::ProperCandidate);
    CHECK(t[2].tag == Tag::Word);
    CHECK(t[4].tag == Tag::Number);
    CHECK(t[7].tag == Tag::DateWord);
    CHECK(t[8].tag == Tag::Punct);
}

TEST_CASE("gazetteer spans") {
    const auto g = default_gazetteers();
    CHECK(spans("Members of the Islamic State claimed it.", g) == Spans{{"Islamic State", "ORG"}});
    CHECK(spans("Shots were fired in Boston late at night.", g) == Spans{{"Boston", "GPE"}});
    CHECK(spans("Agents said the FBI opened a case.", g) == Spans{{"FBI", "ORG"}});
}

TEST_CASE("person after a title") {
    const auto g = default_gazetteers();
    CHECK(spans("Witnesses said Mr. John Smith ran.", g) == Spans{{"John Smith", "PERSON"}});
    CHECK(spans("It was Officer Jane Doe who called.", g) == Spans{{"Jane Doe", "PERSON"}});
    CHECK(spans("It was Mr Smith.", g) == Spans{{"Smith", "PERSON"}});
}

TEST_CASE("org keywords and unknown names") {
    const auto g = default_gazetteers();
    CHECK(spans("A report from the Springfield Police Department arrived.", g) ==
          Spans{{"Springfield Police Department", "ORG"}});
    CHECK(spans("They met Zorblax Quint yesterday.", g) == Spans{{"Zorblax Quint", "OTHER"}});
}

TEST_CASE("dates") {
    const auto g = default_gazetteers();
    CHECK(spans("It happened on Monday, May 5 2017 at noon.", g) ==
          Spans{{"Monday", "DATE"}, {"May 5 2017", "DATE"}});
    CHECK(spans("He paid 40 dollars.", g).empty());
}

TEST_CASE("sentence-initial capitals are not names by themselves") {
    const auto g = default_gazetteers();
    CHECK(spans("Police arrived quickly.", g).empty());
    CHECK(spans("Boston police arrived.", g) == Spans{{"Boston", "GPE"}});
    CHECK(spans("Senator Ann Lee spoke.", g) == Spans{{"Ann Lee", "PERSON"}});
}

TEST_CASE("token offsets") {
    const auto e = extract_entities("We drove to New York City today.", default_gazetteers());
    REQUIRE(e.size() == 1);
    CHECK(e[0].text == "New York City");
    CHECK(e[0].label == Label::GPE);
    CHECK(e[0].start == 3);
    CHECK(e[0].end == 6);
}

TEST_CASE("adding a gazetteer entry relabels a span") {
    auto g = default_gazetteers();
    CHECK(spans("They met Zorblax Quint yesterday.", g) == Spans{{"Zorblax Quint", "OTHER"}});
    g.add(Label::ORG, "zorblax quint");
    CHECK(spans("They met Zorblax Quint yesterday.", g) == Spans{{"Zorblax Quint", "ORG"}});
}

TEST_CASE("gazetteers load from a directory") {
    const std::filesystem::path dir = std::filesystem::path(CRIMENEWS_TEST_TMP) / "gaz";
    io::write_text(dir / "gpe.txt", "# places\nGotham\n");
    const auto g = load_gazetteers(dir);
    CHECK(g.gpe.contains("gotham"));
    CHECK(g.org.empty());
    CHECK(spans("Crime rose in Gotham again.", g) == Spans{{"Gotham", "GPE"}});
}

TEST_CASE("json output") {
    const std::vector<Entity> e = {{"Boston", Label::GPE, 1, 2}};
    CHECK(to_json(e) == R"([{"text":"Boston","label":"GPE","start":1,"end":2}])");
}
