#include <doctest.h>

#include <set>

#include "crimenews/crimemap.hpp"
#include "crimenews/error.hpp"
#include "fixtures.hpp"

using namespace crimenews;
using namespace crimenews::crimemap;

TEST_CASE("hand-labelled crime strings") {
    const auto mapper = compile_rules(default_rules());
    for (const auto& [raw, expected] : fixtures::crime_strings()) {
        CAPTURE(raw);
        CHECK(to_string(canonicalize(mapper, raw)) == to_string(expected));
    }
}

TEST_CASE("vehicle guard keeps vehicle theft out of Robbery") {
    const auto mapper = compile_rules(default_rules());
    CHECK(canonicalize(mapper, "theft") == CanonicalCrimeType::Robbery);
    CHECK(canonicalize(mapper, "motor vehicle theft") == CanonicalCrimeType::VehicleTheft);
    CHECK(canonicalize(mapper, "theft from vehicle") != CanonicalCrimeType::Robbery);
    CHECK(canonicalize(mapper, "accident") == CanonicalCrimeType::Accident);
    CHECK(canonicalize(mapper, "vehicle accident") == CanonicalCrimeType::VehicleAccident);
}

TEST_CASE("canonicalize is case-insensitive and null-safe") {
    const auto mapper = compile_rules(default_rules());
    CHECK(canonicalize(mapper, "Larceny") == canonicalize(mapper, "LARCENY"));
    CHECK(mapper.canonicalize(std::optional<std::string>{}) == CanonicalCrimeType::Other);
    CHECK(canonicalize(mapper, "   ") == CanonicalCrimeType::Other);
    CHECK(canonicalize(mapper, "zzz unknown") == CanonicalCrimeType::Other);
}

TEST_CASE("empty ruleset maps everything to Other") {
    const auto mapper = compile_rules({});
    CHECK(canonicalize(mapper, "LARCENY") == CanonicalCrimeType::Other);
    CHECK(mapper.category_count() == 1);
}

TEST_CASE("default ruleset covers every category") {
    const auto mapper = compile_rules(default_rules());
    CHECK(mapper.category_count() >= 15);
}

TEST_CASE("duplicate priorities are rejected") {
    std::vector<CrimeTypeRule> rules = {{CanonicalCrimeType::Drug, {"drug"}, {}, 3},
                                        {CanonicalCrimeType::Fraud, {"fraud"}, {}, 3}};
    try {
        compile_rules(rules);
        FAIL("expected DuplicatePriority");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DuplicatePriority);
    }
    CHECK_THROWS_AS(compile_rules({{CanonicalCrimeType::Drug, {}, {}, 1}}), Error);
}

TEST_CASE("priority order decides overlapping stems") {
    std::vector<CrimeTypeRule> rules = {{CanonicalCrimeType::Fraud, {"check"}, {}, 2},
                                        {CanonicalCrimeType::Robbery, {"check"}, {}, 1}};
    CHECK(canonicalize(compile_rules(rules), "bad check") == CanonicalCrimeType::Robbery);
    rules[1].priority = 5;
    CHECK(canonicalize(compile_rules(rules), "bad check") == CanonicalCrimeType::Fraud);
}

TEST_CASE("rules parse from JSON") {
    const auto rules = parse_rules(R"([{"category": "Drug", "stems": ["weed"], "guards": ["killer"], "priority": 1}])");
    REQUIRE(rules.size() == 1);
    CHECK(rules[0].category == CanonicalCrimeType::Drug);
    const auto mapper = compile_rules(rules);
    CHECK(canonicalize(mapper, "weed possession") == CanonicalCrimeType::Drug);
    CHECK(canonicalize(mapper, "weed killer") == CanonicalCrimeType::Other);
    CHECK_THROWS_AS(parse_rules(R"([{"category": "Nope", "stems": ["x"], "priority": 1}])"), Error);
    CHECK_THROWS_AS(parse_rules("{"), Error);
}

TEST_CASE("category names round-trip") {
    std::set<std::string> names;
    for (auto c : kAllCrimeTypes) {
        CHECK(parse_crime_type(to_string(c)) == c);
        names.insert(std::string(to_string(c)));
    }
    CHECK(names.size() == 15);
}

TEST_CASE("category distribution counts every record once") {
    ingest::MergedCrimeDataset ds;
    for (const char* t : {"LARCENY", "BURGLARY", "NARCOTICS", ""}) {
        ingest::CrimeRecord r;
        if (*t) r.crime_type = t;
        ds.records.push_back(r);
    }
    const auto dist = category_distribution(ds, compile_rules(default_rules()));
    CHECK(dist.size() == 15);
    CHECK(dist.at(CanonicalCrimeType::Robbery) == 2);
    CHECK(dist.at(CanonicalCrimeType::Drug) == 1);
    CHECK(dist.at(CanonicalCrimeType::Other) == 1);
}
