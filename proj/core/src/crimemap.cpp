#include "crimenews/crimemap.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"

namespace crimenews::crimemap {

std::string_view to_string(CanonicalCrimeType type) {
    switch (type) {
        case CanonicalCrimeType::Robbery: return "Robbery";
        case CanonicalCrimeType::Assault: return "Assault";
        case CanonicalCrimeType::Drug: return "Drug";
        case CanonicalCrimeType::VehicleTheft: return "VehicleTheft";
        case CanonicalCrimeType::VehicleAccident: return "VehicleAccident";
        case CanonicalCrimeType::Accident: return "Accident";
        case CanonicalCrimeType::Homicide: return "Homicide";
        case CanonicalCrimeType::SexOffense: return "SexOffense";
        case CanonicalCrimeType::Fraud: return "Fraud";
        case CanonicalCrimeType::Vandalism: return "Vandalism";
        case CanonicalCrimeType::WeaponsViolation: return "WeaponsViolation";
        case CanonicalCrimeType::Arson: return "Arson";
        case CanonicalCrimeType::Kidnapping: return "Kidnapping";
        case CanonicalCrimeType::Terrorism: return "Terrorism";
        case CanonicalCrimeType::Other: return "Other";
    }
    return "Other";
}

std::optional<CanonicalCrimeType> parse_crime_type(std::string_view name) {
    for (auto t : kAllCrimeTypes) {
        if (to_string(t) == name) return t;
    }
    return std::nullopt;
}

std::vector<CrimeTypeRule> parse_rules(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::InvalidArgument, std::string("ruleset is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) raise(ErrorCode::InvalidArgument, "ruleset must be a JSON list");
    std::vector<CrimeTypeRule> rules;
    for (const auto& item : doc) {
        CrimeTypeRule rule;
        try {
            const auto name = item.at("category").get<std::string>();
            auto category = parse_crime_type(name);
            if (!category) raise(ErrorCode::InvalidArgument, "unknown crime category '" + name + "'");
            rule.category = *category;
            rule.stems = item.at("stems").get<std::vector<std::string>>();
            rule.guards = item.value("guards", std::vector<std::string>{});
            rule.priority = item.at("priority").get<int>();
        } catch (const nlohmann::json::exception& e) {
            raise(ErrorCode::InvalidArgument, std::string("bad rule entry: ") + e.what());
        }
        rules.push_back(std::move(rule));
    }
    return rules;
}

std::vector<CrimeTypeRule> default_rules() { return parse_rules(io::bundled("crime_rules.json")); }

CrimeTypeMapper compile_rules(std::vector<CrimeTypeRule> rules) {
    std::set<int> priorities;
    for (const auto& r : rules) {
        if (r.stems.empty()) {
            raise(ErrorCode::InvalidArgument, "rule for " + std::string(to_string(r.category)) + " has no stems");
        }
        if (!priorities.insert(r.priority).second) {
            raise(ErrorCode::DuplicatePriority, "priority " + std::to_string(r.priority) + " used twice");
        }
    }
    std::stable_sort(rules.begin(), rules.end(),
                     [](const CrimeTypeRule& a, const CrimeTypeRule& b) { return a.priority < b.priority; });

    // One matcher over every stem and guard; each matcher entry remembers
    // which rules use it and in which role.
    std::vector<std::string> all;
    std::vector<std::vector<std::pair<std::size_t, bool>>> pending;
    auto normalized = [](const std::string& s) {
        std::string joined;
        for (const auto& t : textproc::terms(s)) joined += (joined.empty() ? "" : " ") + t;
        return joined;
    };
    auto add = [&](const std::string& stem, std::size_t rule, bool guard) {
        const std::string key = normalized(stem);
        if (key.empty()) raise(ErrorCode::InvalidArgument, "empty stem in crime rules");
        auto it = std::find(all.begin(), all.end(), key);
        if (it == all.end()) {
            all.push_back(key);
            pending.emplace_back();
            it = all.end() - 1;
        }
        pending[static_cast<std::size_t>(it - all.begin())].emplace_back(rule, guard);
    };
    for (std::size_t i = 0; i < rules.size(); ++i) {
        for (const auto& s : rules[i].stems) add(s, i, false);
        for (const auto& g : rules[i].guards) add(g, i, true);
    }

    CrimeTypeMapper mapper;
    mapper.rules_ = std::move(rules);
    mapper.matcher_ = textproc::PrefixMatcher(all);
    mapper.uses_.resize(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (auto [rule, guard] : pending[i]) mapper.uses_[i].push_back({rule, guard});
    }
    return mapper;
}

CanonicalCrimeType CrimeTypeMapper::canonicalize(std::string_view crime_type) const {
    if (rules_.empty()) return CanonicalCrimeType::Other;
    const auto terms = textproc::terms(crime_type);
    if (terms.empty()) return CanonicalCrimeType::Other;
    std::vector<char> matched(rules_.size(), 0);
    std::vector<char> vetoed(rules_.size(), 0);
    for (std::size_t stem : matcher_.match(terms)) {
        for (const auto& use : uses_[stem]) (use.guard ? vetoed : matched)[use.rule] = 1;
    }
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (matched[i] && !vetoed[i]) return rules_[i].category;
    }
    return CanonicalCrimeType::Other;
}

CanonicalCrimeType CrimeTypeMapper::canonicalize(const std::optional<std::string>& crime_type) const {
    return crime_type ? canonicalize(std::string_view(*crime_type)) : CanonicalCrimeType::Other;
}

std::size_t CrimeTypeMapper::category_count() const {
    std::set<CanonicalCrimeType> cats{CanonicalCrimeType::Other};
    for (const auto& r : rules_) cats.insert(r.category);
    return cats.size();
}

CanonicalCrimeType canonicalize(const CrimeTypeMapper& mapper, std::string_view crime_type) {
    return mapper.canonicalize(crime_type);
}

std::map<CanonicalCrimeType, std::size_t> category_distribution(const ingest::MergedCrimeDataset& dataset,
                                                                const CrimeTypeMapper& mapper) {
    std::map<CanonicalCrimeType, std::size_t> counts;
    for (auto t : kAllCrimeTypes) counts[t] = 0;
    for (const auto& r : dataset.records) ++counts[mapper.canonicalize(r.crime_type)];
    return counts;
}

}  // namespace crimenews::crimemap
