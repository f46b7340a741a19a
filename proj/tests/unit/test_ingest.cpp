#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <variant>

#include "crimenews/error.hpp"
#include "crimenews/ingest.hpp"

using namespace crimenews;
using namespace crimenews::ingest;
using namespace std::chrono;

namespace {

CrimeRecord adapt_ok(const RawRecord& raw, SourceKind kind) {
    auto r = adapt_record(raw, kind);
    REQUIRE(std::holds_alternative<CrimeRecord>(r));
    return std::get<CrimeRecord>(r);
}

SourceStream stream(SourceKind kind, std::string label, std::string text) {
    return {kind, std::move(label), csv::parse(text)};
}

}  // namespace

TEST_CASE("canonical header has 26 columns ending in DataBase") {
    const auto& h = canonical_header();
    CHECK(h.size() == 26);
    CHECK(h.front() == "Date");
    CHECK(h[9] == "VictimAge");
    CHECK(h.back() == "DataBase");
}

TEST_CASE("schema detection by signature") {
    CHECK(detect_schema(std::vector<std::string>{"ID", "Date", "Primary Type", "Location Description", "Extra"}) ==
          SourceKind::ChicagoCrime);
    CHECK(detect_schema(std::vector<std::string>{"OFFENSE_CODE_GROUP", "OCCURRED_ON_DATE"}) == SourceKind::BostonCrime);
    CHECK_THROWS_AS(detect_schema(std::vector<std::string>{"foo", "bar"}), Error);
    try {
        detect_schema(std::vector<std::string>{"foo"});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnrecognizedSchema);
    }
    // Both the Kaggle homicide and mass shooting signatures present.
    try {
        detect_schema(std::vector<std::string>{"Victim Age", "Perpetrator Race", "Mental Health Issues", "Total victims"});
        FAIL("expected ambiguity");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AmbiguousSchema);
    }
}

TEST_CASE("every registered schema detects itself") {
    for (const auto& s : schema_registry()) {
        std::vector<std::string> header(s.columns.begin(), s.columns.end());
        CHECK(detect_schema(header) == s.kind);
    }
}

TEST_CASE("date and city only record has 23 null attributes") {
    RawRecord raw = {{"Date", "05/01/2017"},
                     {"Primary Type", ""},
                     {"Block", ""},
                     {"Description", ""},
                     {"Location Description", ""},
                     {"Latitude", ""},
                     {"Longitude", ""}};
    const auto r = adapt_ok(raw, SourceKind::ChicagoCrime);
    CHECK(r.date == Date{year{2017}, month{5}, day{1}});
    CHECK(r.city == "Chicago");
    CHECK(r.state == "IL");
    // 25 nullable attributes minus date, city and the constant state.
    CHECK(null_attribute_count(r) == 22);

    CrimeRecord only;
    only.date = Date{year{2017}, month{5}, day{1}};
    only.city = "Chicago";
    CHECK(null_attribute_count(only) == 23);
}

TEST_CASE("Boston adapter") {
    const auto r = adapt_ok({{"OFFENSE_CODE_GROUP", "Larceny"},
                             {"OFFENSE_DESCRIPTION", "LARCENY SHOPLIFTING"},
                             {"OCCURRED_ON_DATE", "2018-09-02 13:00:00"},
                             {"STREET", "WASHINGTON ST"},
                             {"Lat", "42.35"},
                             {"Long", "-71.06"},
                             {"SHOOTING", "Y"}},
                            SourceKind::BostonCrime);
    CHECK(r.crime_type == "Larceny");
    CHECK(r.crime_detail == "LARCENY SHOPLIFTING");
    CHECK(r.lat == doctest::Approx(42.35));
    CHECK(r.lon == doctest::Approx(-71.06));
    CHECK(r.date == Date{year{2018}, month{9}, day{2}});
    CHECK(r.database == SourceKind::BostonCrime);
}

TEST_CASE("homicide sentinels become null") {
    const auto r = adapt_ok({{"Year", "1990"},
                             {"Month", "March"},
                             {"Victim Age", "998"},
                             {"Perpetrator Race", "Unknown"},
                             {"Crime Type", "Murder or Manslaughter"},
                             {"Victim Count", "0"}},
                            SourceKind::HomicideReports);
    CHECK_FALSE(r.victim_age.has_value());
    CHECK_FALSE(r.perpe_race.has_value());
    CHECK(r.date == Date{year{1990}, month{3}, day{1}});
    CHECK(r.total_victims == 0);
}

TEST_CASE("global terrorism keeps only United States rows") {
    RawRecord us = {{"iyear", "2001"}, {"imonth", "9"}, {"iday", "11"}, {"country_txt", "United States"},
                    {"nkill", "3"},    {"city", "New York"}};
    const auto r = adapt_ok(us, SourceKind::GlobalTerrorism);
    CHECK(r.total_victims == 3);
    CHECK(r.date == Date{year{2001}, month{9}, day{11}});

    RawRecord fr = us;
    fr["country_txt"] = "France";
    CHECK(std::holds_alternative<Dropped>(adapt_record(fr, SourceKind::GlobalTerrorism)));

    RawRecord unknown_day = us;
    unknown_day["iday"] = "0";
    CHECK_FALSE(adapt_ok(unknown_day, SourceKind::GlobalTerrorism).date.has_value());
}

TEST_CASE("mass shootings split location") {
    const auto r = adapt_ok({{"Location", "Sutherland Springs, Texas"}, {"Date", "11/5/2017"}, {"Total victims", "46"}},
                            SourceKind::MassShootings);
    CHECK(r.city == "Sutherland Springs");
    CHECK(r.state == "Texas");
    CHECK(r.total_victims == 46);
}

TEST_CASE("malformed values raise MalformedValue") {
    auto code_of = [](const RawRecord& raw, SourceKind k) {
        try {
            adapt_record(raw, k);
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    CHECK(code_of({{"Latitude", "abc"}}, SourceKind::ChicagoCrime) == ErrorCode::MalformedValue);
    CHECK(code_of({{"Latitude", "95"}}, SourceKind::ChicagoCrime) == ErrorCode::MalformedValue);
    CHECK(code_of({{"Date", "2017-01-01"}}, SourceKind::ChicagoCrime) == ErrorCode::MalformedValue);
    CHECK(code_of({{"age", "-1"}}, SourceKind::FatalPoliceShootings) == ErrorCode::MalformedValue);
    CHECK(code_of({{"Total victims", "-2"}}, SourceKind::MassShootings) == ErrorCode::MalformedValue);
}

TEST_CASE("merge quarantines bad rows and keeps going") {
    std::vector<SourceStream> in;
    in.push_back(stream(SourceKind::PhillyCrime, "philly.csv",
                        "dispatch_date,text_general_code,location_block,lat,lng\n"
                        "2017-01-01,Thefts,100 MAIN,39.9,-75.1\n"
                        "2017-01-02,Thefts\n"
                        "2017-01-03,Fraud,200 MAIN,bad,-75.1\n"));
    in.push_back(stream(SourceKind::GlobalTerrorism, "gtd.csv",
                        "iyear,imonth,iday,country_txt\n2001,1,1,United States\n2001,1,1,Peru\n"));
    const auto m = merge_sources(in);
    CHECK(m.dataset.records.size() == 2);
    CHECK(m.quarantine.size() == 2);
    CHECK(m.quarantine[0].record_number == 3);
    CHECK(m.tallies[0].second.total == 3);
    CHECK(m.tallies[0].second.quarantined == 2);
    CHECK(m.tallies[1].second.dropped == 1);
    CHECK(m.dataset.provenance.at(SourceKind::PhillyCrime) == 1);

    const auto dist = source_distribution(m.dataset);
    CHECK(dist.at(SourceKind::PhillyCrime) == doctest::Approx(0.5));
    CHECK_THROWS_AS(source_distribution(MergedCrimeDataset{}), Error);
}

TEST_CASE("canonical CSV round-trips and re-ingests idempotently") {
    std::vector<SourceStream> in;
    in.push_back(stream(SourceKind::ChicagoCrime, "c.csv",
                        "Date,Block,Primary Type,Description,Location Description,Latitude,Longitude\n"
                        "01/02/2016,\"1 \"\"A\"\" ST\",THEFT,\"OVER $500, FROM CAR\",STREET,41.8,-87.6\n"));
    const auto m = merge_sources(in);
    const auto text = write_canonical_csv(m.dataset.records);

    const auto dir = std::filesystem::path(CRIMENEWS_TEST_TMP);
    std::filesystem::create_directories(dir);
    const auto path = dir / "canonical.csv";
    {
        std::ofstream(path) << text;
    }
    const auto back = read_canonical_csv(path);
    REQUIRE(back.records.size() == 1);
    CHECK(back.records[0] == m.dataset.records[0]);
    CHECK(back.provenance.at(SourceKind::ChicagoCrime) == 1);
    CHECK(write_canonical_csv(back.records) == text);

    const auto s = load_source(path);
    CHECK(s.kind == SourceKind::Canonical);
}

TEST_CASE("fixture inputs load with their schemas") {
    const std::filesystem::path dir = std::filesystem::path(CRIMENEWS_FIXTURES) / "crime";
    CHECK(load_source(dir / "boston.csv").kind == SourceKind::BostonCrime);
    CHECK(load_source(dir / "denver.csv").kind == SourceKind::DenverCrime);
    CHECK(load_source(dir / "san_francisco.csv").kind == SourceKind::SanFranciscoCrime);
    CHECK(load_source(dir / "fatal_police_shootings.csv").kind == SourceKind::FatalPoliceShootings);
    CHECK(load_source(dir / "global_terrorism.csv").kind == SourceKind::GlobalTerrorism);
}
