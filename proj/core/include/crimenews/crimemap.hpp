#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crimenews/ingest.hpp"
#include "crimenews/textproc.hpp"

namespace crimenews::crimemap {

enum class CanonicalCrimeType {
    Robbery,
    Assault,
    Drug,
    VehicleTheft,
    VehicleAccident,
    Accident,
    Homicide,
    SexOffense,
    Fraud,
    Vandalism,
    WeaponsViolation,
    Arson,
    Kidnapping,
    Terrorism,
    Other,
};

inline constexpr std::array kAllCrimeTypes = {
    CanonicalCrimeType::Robbery,      CanonicalCrimeType::Assault,          CanonicalCrimeType::Drug,
    CanonicalCrimeType::VehicleTheft, CanonicalCrimeType::VehicleAccident,  CanonicalCrimeType::Accident,
    CanonicalCrimeType::Homicide,     CanonicalCrimeType::SexOffense,       CanonicalCrimeType::Fraud,
    CanonicalCrimeType::Vandalism,    CanonicalCrimeType::WeaponsViolation, CanonicalCrimeType::Arson,
    CanonicalCrimeType::Kidnapping,   CanonicalCrimeType::Terrorism,        CanonicalCrimeType::Other,
};

std::string_view to_string(CanonicalCrimeType type);
std::optional<CanonicalCrimeType> parse_crime_type(std::string_view name);

struct CrimeTypeRule {
    CanonicalCrimeType category = CanonicalCrimeType::Other;
    std::vector<std::string> stems;
    std::vector<std::string> guards;  // any hit vetoes the rule
    int priority = 0;                 // lower wins
};

/// Parses the ruleset JSON: a list of {category, stems[], guards[], priority}.
std::vector<CrimeTypeRule> parse_rules(std::string_view json_text);
std::vector<CrimeTypeRule> default_rules();

class CrimeTypeMapper;

/// Throws Error(DuplicatePriority) when two rules share a priority and
/// Error(InvalidArgument) when a rule has no stems.
CrimeTypeMapper compile_rules(std::vector<CrimeTypeRule> rules);

/// Immutable after construction; safe to share between threads.
class CrimeTypeMapper {
public:
    CanonicalCrimeType canonicalize(std::string_view crime_type) const;
    CanonicalCrimeType canonicalize(const std::optional<std::string>& crime_type) const;

    const std::vector<CrimeTypeRule>& rules() const noexcept { return rules_; }
    /// Distinct categories the rules can produce, plus Other.
    std::size_t category_count() const;

private:
    friend CrimeTypeMapper compile_rules(std::vector<CrimeTypeRule> rules);

    struct StemUse {
        std::size_t rule;
        bool guard;
    };

    std::vector<CrimeTypeRule> rules_;  // sorted by priority
    textproc::PrefixMatcher matcher_;
    std::vector<std::vector<StemUse>> uses_;  // per matcher stem
};

CanonicalCrimeType canonicalize(const CrimeTypeMapper& mapper, std::string_view crime_type);

/// Category counts over the dataset; every category is present (possibly 0).
std::map<CanonicalCrimeType, std::size_t> category_distribution(const ingest::MergedCrimeDataset& dataset,
                                                                const CrimeTypeMapper& mapper);

}  // namespace crimenews::crimemap
