#pragma once

// Hand-built fixtures shared by the unit tests and the acceptance binary.

#include <string>
#include <utility>
#include <vector>

#include "crimenews/corpus.hpp"
#include "crimenews/crimemap.hpp"

namespace fixtures {

using crimenews::crimemap::CanonicalCrimeType;

// Raw crime-type strings with the category a reader assigns by hand.
inline const std::vector<std::pair<std::string, CanonicalCrimeType>>& crime_strings() {
    using C = CanonicalCrimeType;
    static const std::vector<std::pair<std::string, CanonicalCrimeType>> v = {
        {"LARCENY", C::Robbery},
        {"motor vehicle theft", C::VehicleTheft},
        {"TRAFFIC ACCIDENT", C::Accident},
        {"BURGLARY", C::Robbery},
        {"AUTO THEFT", C::VehicleTheft},
        {"Vehicle Accident", C::VehicleAccident},
        {"Murder or Manslaughter", C::Homicide},
        {"NARCOTICS", C::Drug},
        {"Aggravated Assault", C::Assault},
        {"CRIM SEXUAL ASSAULT", C::SexOffense},
        {"FORGERY & COUNTERFEITING", C::Fraud},
        {"ARSON", C::Arson},
        {"KIDNAPPING", C::Kidnapping},
        {"Bombing/Explosion", C::Terrorism},
        {"WEAPONS VIOLATION", C::WeaponsViolation},
        {"Criminal Mischief", C::Vandalism},
        {"Police shooting", C::Assault},
        {"Hit and Run", C::VehicleAccident},
        {"", C::Other},
        {"LIQUOR LAW VIOLATION", C::Other},
    };
    return v;
}

struct FilterCase {
    std::string title;
    std::string content;
    std::size_t stems;  // distinct dictionary stems hit
    bool accepted;
};

// Four accepted, four under the threshold, four hitting exactly one
// exclusion group.
inline const std::vector<FilterCase>& filter_cases() {
    static const std::vector<FilterCase> v = {
        {"Robbery downtown", "The robber stole weapons; police arrived", 4, true},
        {"", "Police say the shooting left one victim", 3, true},
        {"Officers investigate", "A homicide and an assault on Main Street", 3, true},
        {"Trial begins", "Counterfeit bills and bribe charges lead to fraud hearing", 3, true},
        {"", "City council approves new park budget", 0, false},
        {"Police announce a charity run", "", 1, false},
        {"Local officer wins fire safety award", "", 2, false},
        {"Weather damage closes the school", "", 1, false},
        {"", "Vehicle accident causes damage on highway", 3, false},
        {"Fire damage", "Reported after an incident downtown", 3, false},
        {"Fraud dispute ends", "The offense was dismissed", 3, false},
        {"", "Accident damage to vehicle fleet", 3, false},
    };
    return v;
}

inline crimenews::corpus::Article article(std::string id, const FilterCase& c) {
    crimenews::corpus::Article a;
    a.id = std::move(id);
    if (!c.title.empty()) a.title = c.title;
    a.content = c.content;
    return a;
}

}  // namespace fixtures
