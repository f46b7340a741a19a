#include "crimenews/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <functional>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"

namespace crimenews::ingest {
namespace {

enum class Field {
    Date,
    CrimeType,
    CrimeDetail,
    Lat,
    Long,
    LocDescription,
    City,
    Street,
    State,
    VictimAge,
    VictimRace,
    VictimGender,
    VictimDescription,
    TotalVictims,
    PerpeMental,
    PerpeFlee,
    PerpeRace,
    PerpeGender,
    PerpeAge,
    PerpeNationality,
    PerpeVicRelation,
    Weapon,
    Motivation,
    NewsCoverage,
    PropertyDamage,
    Database,
};

// Column-major reading order of the merged-attribute table.
constexpr std::array<std::string_view, kCanonicalColumnCount> kHeader = {
    "Date",         "CrimeType",        "CrimeDetail",      "Lat",
    "Long",         "LocDescription",   "City",             "Street",
    "State",        "VictimAge",        "VictimRace",       "VictimGender",
    "VictimDescription", "TotalVictims", "PerpeMental",     "PerpeFlee",
    "PerpeRace",    "PerpeGender",      "PerpeAge",         "PerpeNationality",
    "PerpeVicRelation", "Weapon",       "Motivation",       "NewsCoverage",
    "PropertyDamage", "DataBase",
};

struct ColumnMap {
    std::string_view column;
    Field field;
};

/// How a source encodes its event date.
struct DateRule {
    enum class Kind { None, Format, YearMonthName, YearMonthDay } kind = Kind::None;
    std::string_view column;  // Format
    std::string_view format;  // %Y %m %d plus literal separators
    std::string_view year_column, month_column, day_column;
};

struct Adapter {
    SourceSchema schema;
    std::vector<ColumnMap> map;
    DateRule date;
    std::vector<std::pair<std::string_view, std::string_view>> constants;  // column name -> value
    std::vector<std::pair<std::string_view, std::string_view>> null_values;  // column ("*" = any) -> token
    // Source-specific hook run after field mapping; may drop the row.
    std::function<std::optional<Dropped>(const RawRecord&, CrimeRecord&)> finish;
};

std::optional<std::string_view> lookup(const RawRecord& raw, std::string_view column) {
    auto it = raw.find(column);
    if (it == raw.end()) return std::nullopt;
    return std::string_view(it->second);
}

[[noreturn]] void malformed(std::string_view column, std::string_view value, std::string_view why) {
    raise(ErrorCode::MalformedValue,
          std::string(column) + "='" + std::string(value) + "': " + std::string(why));
}

std::optional<Date> make_date(long long y, long long m, long long d) {
    Date date{std::chrono::year(static_cast<int>(y)), std::chrono::month(static_cast<unsigned>(m)),
              std::chrono::day(static_cast<unsigned>(d))};
    if (y < 1 || y > 9999 || m < 1 || m > 12 || d < 1 || d > 31 || !date.ok()) return std::nullopt;
    return date;
}

// Parses `text` against a format made of %Y, %m, %d and literal characters.
// Anything after the formatted prefix must start with a space or 'T' (a time
// of day, which is discarded).
std::optional<Date> parse_date(std::string_view text, std::string_view format) {
    long long y = 0, m = 0, d = 0;
    std::size_t pos = 0;
    auto read_number = [&](std::size_t max_digits, long long& out) {
        std::size_t digits = 0;
        out = 0;
        while (pos < text.size() && digits < max_digits && text[pos] >= '0' && text[pos] <= '9') {
            out = out * 10 + (text[pos] - '0');
            ++pos;
            ++digits;
        }
        return digits > 0;
    };
    for (std::size_t f = 0; f < format.size(); ++f) {
        if (format[f] == '%' && f + 1 < format.size()) {
            const char spec = format[++f];
            bool ok = false;
            if (spec == 'Y') ok = read_number(4, y);
            else if (spec == 'm') ok = read_number(2, m);
            else if (spec == 'd') ok = read_number(2, d);
            if (!ok) return std::nullopt;
        } else {
            if (pos >= text.size() || text[pos] != format[f]) return std::nullopt;
            ++pos;
        }
    }
    if (pos < text.size() && text[pos] != ' ' && text[pos] != 'T') return std::nullopt;
    return make_date(y, m, d);
}

std::optional<unsigned> month_from_name(std::string_view name) {
    static constexpr std::array<std::string_view, 12> kMonths = {
        "january", "february", "march",     "april",   "may",      "june",
        "july",    "august",   "september", "october", "november", "december"};
    std::string lower;
    for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (unsigned i = 0; i < kMonths.size(); ++i) {
        if (lower == kMonths[i] || (lower.size() == 3 && kMonths[i].starts_with(lower))) return i + 1;
    }
    return std::nullopt;
}

double parse_real(std::string_view column, std::string_view value) {
    double v = 0;
    if (!io::parse_double(value, v) || !std::isfinite(v)) malformed(column, value, "not a number");
    return v;
}

long long parse_whole(std::string_view column, std::string_view value) {
    long long n = 0;
    if (io::parse_int(value, n)) return n;
    // Some sources write counts as "3.0".
    const double v = parse_real(column, value);
    if (v != std::floor(v) || std::fabs(v) > 9.0e15) malformed(column, value, "not a whole number");
    return static_cast<long long>(v);
}

int parse_age(std::string_view column, std::string_view value) {
    const long long age = parse_whole(column, value);
    if (age < 0 || age > 130) malformed(column, value, "age outside [0, 130]");
    return static_cast<int>(age);
}

void assign(CrimeRecord& r, Field field, std::string_view column, std::string_view value) {
    auto text = [&] { return std::optional<std::string>(std::string(value)); };
    switch (field) {
        case Field::Date:
            if (auto d = parse_date(value, "%Y-%m-%d")) r.date = d;
            else malformed(column, value, "not a date");
            break;
        case Field::CrimeType: r.crime_type = text(); break;
        case Field::CrimeDetail: r.crime_detail = text(); break;
        case Field::Lat: {
            const double v = parse_real(column, value);
            if (v < -90.0 || v > 90.0) malformed(column, value, "latitude outside [-90, 90]");
            r.lat = v;
            break;
        }
        case Field::Long: {
            const double v = parse_real(column, value);
            if (v < -180.0 || v > 180.0) malformed(column, value, "longitude outside [-180, 180]");
            r.lon = v;
            break;
        }
        case Field::LocDescription: r.loc_description = text(); break;
        case Field::City: r.city = text(); break;
        case Field::Street: r.street = text(); break;
        case Field::State: r.state = text(); break;
        case Field::VictimAge: r.victim_age = parse_age(column, value); break;
        case Field::VictimRace: r.victim_race = text(); break;
        case Field::VictimGender: r.victim_gender = text(); break;
        case Field::VictimDescription: r.victim_description = text(); break;
        case Field::TotalVictims: {
            const long long n = parse_whole(column, value);
            if (n < 0) malformed(column, value, "negative count");
            r.total_victims = n;
            break;
        }
        case Field::PerpeMental: r.perpe_mental = text(); break;
        case Field::PerpeFlee: r.perpe_flee = text(); break;
        case Field::PerpeRace: r.perpe_race = text(); break;
        case Field::PerpeGender: r.perpe_gender = text(); break;
        case Field::PerpeAge: r.perpe_age = parse_age(column, value); break;
        case Field::PerpeNationality: r.perpe_nationality = text(); break;
        case Field::PerpeVicRelation: r.perpe_vic_relation = text(); break;
        case Field::Weapon: r.weapon = text(); break;
        case Field::Motivation: r.motivation = text(); break;
        case Field::NewsCoverage: r.news_coverage = text(); break;
        case Field::PropertyDamage: r.property_damage = text(); break;
        case Field::Database:
            if (auto kind = parse_source_kind(value); kind && *kind != SourceKind::Canonical) {
                r.database = *kind;
            } else {
                malformed(column, value, "unknown source database");
            }
            break;
    }
}

Field field_for(std::string_view header_name) {
    for (std::size_t i = 0; i < kHeader.size(); ++i) {
        if (kHeader[i] == header_name) return static_cast<Field>(i);
    }
    raise(ErrorCode::InvalidArgument, "not a canonical column: " + std::string(header_name));
}

std::vector<Adapter> build_adapters() {
    using K = SourceKind;
    using F = Field;
    std::vector<Adapter> adapters;

    {
        Adapter a;
        a.schema = {K::BostonCrime,
                    {"OFFENSE_CODE_GROUP", "OFFENSE_DESCRIPTION", "OCCURRED_ON_DATE", "STREET", "Lat", "Long"},
                    {"OFFENSE_CODE_GROUP", "OCCURRED_ON_DATE"}};
        a.map = {{"OFFENSE_CODE_GROUP", F::CrimeType},
                 {"OFFENSE_DESCRIPTION", F::CrimeDetail},
                 {"STREET", F::Street},
                 {"Lat", F::Lat},
                 {"Long", F::Long}};
        a.date = {DateRule::Kind::Format, "OCCURRED_ON_DATE", "%Y-%m-%d", {}, {}, {}};
        a.constants = {{"City", "Boston"}, {"State", "MA"}};
        adapters.push_back(std::move(a));
    }
    {
        Adapter a;
        a.schema = {K::ChicagoCrime,
                    {"Date", "Block", "Primary Type", "Description", "Location Description", "Latitude",
                     "Longitude"},
                    {"Primary Type", "Location Description"}};
        a.map = {{"Block", F::Street},
                 {"Primary Type", F::CrimeType},
                 {"Description", F::CrimeDetail},
                 {"Location Description", F::LocDescription},
                 {"Latitude", F::Lat},
                 {"Longitude", F::Long}};
        a.date = {DateRule::Kind::Format, "Date", "%m/%d/%Y", {}, {}, {}};
        a.constants = {{"City", "Chicago"}, {"State", "IL"}};
        adapters.push_back(std::move(a));
    }
    {
        Adapter a;
        a.schema = {K::DenverCrime,
                    {"FIRST_OCCURRENCE_DATE", "OFFENSE_TYPE_ID", "OFFENSE_CATEGORY_ID", "INCIDENT_ADDRESS",
                     "GEO_LAT", "GEO_LON"},
                    {"OFFENSE_CATEGORY_ID", "FIRST_OCCURRENCE_DATE"}};
        a.map = {{"OFFENSE_TYPE_ID", F::CrimeDetail},
                 {"OFFENSE_CATEGORY_ID", F::CrimeType},
                 {"INCIDENT_ADDRESS", F::Street},
                 {"GEO_LAT", F::Lat},
                 {"GEO_LON", F::Long}};
        a.date = {DateRule::Kind::Format, "FIRST_OCCURRENCE_DATE", "%m/%d/%Y", {}, {}, {}};
        a.constants = {{"City", "Denver"}, {"State", "CO"}};
        adapters.push_back(std::move(a));
    }
    {
        Adapter a;
        a.schema = {K::PhillyCrime,
                    {"dispatch_date", "text_general_code", "location_block", "lat", "lng"},
                    {"text_general_code", "dispatch_date"}};
        a.map = {{"text_general_code", F::CrimeType},
                 {"location_block", F::Street},
                 {"lat", F::Lat},
                 {"lng", F::Long}};
        a.date = {DateRule::Kind::Format, "dispatch_date", "%Y-%m-%d", {}, {}, {}};
        a.constants = {{"City", "Philadelphia"}, {"State", "PA"}};
        adapters.push_back(std::move(a));
    }
    {
        Adapter a;
        a.schema = {K::SanFranciscoCrime,
                    {"Category", "Descript", "Date", "Address", "X", "Y"},
                    {"Descript", "Category", "X", "Y"}};
        a.map = {{"Category", F::CrimeType},
                 {"Descript", F::CrimeDetail},
                 {"Address", F::Street},
                 {"X", F::Long},
                 {"Y", F::Lat}};
        a.date = {DateRule::Kind::Format, "Date", "%m/%d/%Y", {}, {}, {}};
        a.constants = {{"City", "San Francisco"}, {"State", "CA"}};
        adapters.push_back(std::move(a));
    }
    {
        Adapter a;
        a.schema = {K::FatalPoliceShootings,
                    {"id", "name", "date", "manner_of_death", "armed", "age", "gender", "race", "city",
                     "state", "signs_of_mental_illness", "threat_level", "flee", "body_camera"},
                    {"manner_of_death", "signs_of_mental_illness"}};
        // The person shot by police occupies the perpetrator attributes.
        a.map = {{"manner_of_death", F::CrimeDetail},
                 {"armed", F::Weapon},
                 {"age", F::PerpeAge},
                 {"gender", F::PerpeGender},
                 {"race", F::PerpeRace},
                 {"city", F::City},
                 {"state", F::State},
                 {"signs_of_mental_illness", F::PerpeMental},
                 {"flee", F::PerpeFlee}};
        // Neither shooting source has a crime-type column.
        a.constants = {{"CrimeType", "Police shooting"}};
        a.date = {DateRule::Kind::Format, "date", "%Y-%m-%d", {}, {}, {}};
        adapters.push_back(std::move(a));
    }
    {
        Adapter a;
        a.schema = {K::HomicideReports,
                    {"Record ID", "Agency Name", "City", "State", "Year", "Month", "Crime Type",
                     "Crime Solved", "Victim Sex", "Victim Age", "Victim Race", "Perpetrator Sex",
                     "Perpetrator Age", "Perpetrator Race", "Relationship", "Weapon", "Victim Count",
                     "Record Source"},
                    {"Victim Age", "Perpetrator Race"}};
        a.map = {{"City", F::City},
                 {"State", F::State},
                 {"Crime Type", F::CrimeType},
                 {"Victim Sex", F::VictimGender},
                 {"Victim Age", F::VictimAge},
                 {"Victim Race", F::VictimRace},
                 {"Perpetrator Sex", F::PerpeGender},
                 {"Perpetrator Age", F::PerpeAge},
                 {"Perpetrator Race", F::PerpeRace},
                 {"Relationship", F::PerpeVicRelation},
                 {"Weapon", F::Weapon},
                 {"Victim Count", F::TotalVictims}};
        a.date = {DateRule::Kind::YearMonthName, {}, {}, "Year", "Month", {}};
        // The source writes unknown values as "Unknown" and unknown victim age as 998.
        a.null_values = {{"*", "Unknown"}, {"Victim Age", "998"}};
        adapters.push_back(std::move(a));
    }
    {
        Adapter a;
        a.schema = {K::GlobalTerrorism,
                    {"eventid", "iyear", "imonth", "iday", "country_txt", "provstate", "city", "latitude",
                     "longitude", "attacktype1_txt", "targtype1_txt", "gname", "motive", "weaptype1_txt",
                     "nkill", "propextent_txt", "summary"},
                    {"iyear", "country_txt"}};
        a.map = {{"provstate", F::State},
                 {"city", F::City},
                 {"latitude", F::Lat},
                 {"longitude", F::Long},
                 {"attacktype1_txt", F::CrimeType},
                 {"summary", F::CrimeDetail},
                 {"targtype1_txt", F::VictimDescription},
                 {"motive", F::Motivation},
                 {"weaptype1_txt", F::Weapon},
                 {"nkill", F::TotalVictims},
                 {"propextent_txt", F::PropertyDamage}};
        a.date = {DateRule::Kind::YearMonthDay, {}, {}, "iyear", "imonth", "iday"};
        a.null_values = {{"*", "Unknown"}};
        a.finish = [](const RawRecord& raw, CrimeRecord&) -> std::optional<Dropped> {
            auto country = lookup(raw, "country_txt");
            if (!country || io::trim(*country) != "United States") {
                return Dropped{"country '" + std::string(country.value_or("")) + "' is not the United States"};
            }
            return std::nullopt;
        };
        adapters.push_back(std::move(a));
    }
    {
        Adapter a;
        a.schema = {K::MassShootings,
                    {"S#", "Title", "Location", "Date", "Summary", "Fatalities", "Injured", "Total victims",
                     "Mental Health Issues", "Race", "Gender", "Latitude", "Longitude"},
                    {"Mental Health Issues", "Total victims"}};
        a.map = {{"Summary", F::CrimeDetail},
                 {"Total victims", F::TotalVictims},
                 {"Mental Health Issues", F::PerpeMental},
                 {"Race", F::PerpeRace},
                 {"Gender", F::PerpeGender},
                 {"Latitude", F::Lat},
                 {"Longitude", F::Long}};
        a.date = {DateRule::Kind::Format, "Date", "%m/%d/%Y", {}, {}, {}};
        a.null_values = {{"*", "Unknown"}};
        a.constants = {{"CrimeType", "Mass shooting"}};
        a.finish = [](const RawRecord& raw, CrimeRecord& r) -> std::optional<Dropped> {
            // "City, State" in a single column.
            if (auto loc = lookup(raw, "Location")) {
                const auto text = io::trim(*loc);
                const auto comma = text.rfind(',');
                if (comma != std::string_view::npos) {
                    auto city = io::trim(text.substr(0, comma));
                    auto state = io::trim(text.substr(comma + 1));
                    if (!city.empty()) r.city = std::string(city);
                    if (!state.empty()) r.state = std::string(state);
                } else if (!text.empty()) {
                    r.city = std::string(text);
                }
            }
            return std::nullopt;
        };
        adapters.push_back(std::move(a));
    }
    {
        Adapter a;
        a.schema.kind = K::Canonical;
        for (auto h : kHeader) {
            a.schema.columns.push_back(h);
            a.schema.signature.push_back(h);
            if (h != "Date") a.map.push_back({h, field_for(h)});
        }
        a.date = {DateRule::Kind::Format, "Date", "%Y-%m-%d", {}, {}, {}};
        adapters.push_back(std::move(a));
    }
    return adapters;
}

const std::vector<Adapter>& adapters() {
    static const std::vector<Adapter> all = build_adapters();
    return all;
}

const Adapter& adapter_for(SourceKind kind) {
    for (const auto& a : adapters()) {
        if (a.schema.kind == kind) return a;
    }
    raise(ErrorCode::InvalidArgument, "no adapter for " + std::string(to_string(kind)));
}

bool is_null_value(const Adapter& a, std::string_view column, std::string_view value) {
    if (value.empty()) return true;
    for (const auto& [col, token] : a.null_values) {
        if ((col == "*" || col == column) && value == token) return true;
    }
    return false;
}

std::optional<Date> adapt_date(const Adapter& a, const RawRecord& raw) {
    const auto& rule = a.date;
    auto get = [&](std::string_view column) -> std::optional<std::string_view> {
        auto v = lookup(raw, column);
        if (!v) return std::nullopt;
        auto t = io::trim(*v);
        if (is_null_value(a, column, t)) return std::nullopt;
        return t;
    };
    switch (rule.kind) {
        case DateRule::Kind::None: return std::nullopt;
        case DateRule::Kind::Format: {
            auto v = get(rule.column);
            if (!v) return std::nullopt;
            auto d = parse_date(*v, rule.format);
            if (!d) malformed(rule.column, *v, "expected date format " + std::string(rule.format));
            return d;
        }
        case DateRule::Kind::YearMonthName: {
            auto y = get(rule.year_column);
            auto m = get(rule.month_column);
            if (!y || !m) return std::nullopt;
            const long long year = parse_whole(rule.year_column, *y);
            auto month = month_from_name(*m);
            if (!month) malformed(rule.month_column, *m, "not a month name");
            auto d = make_date(year, *month, 1);
            if (!d) malformed(rule.year_column, *y, "not a valid year");
            return d;
        }
        case DateRule::Kind::YearMonthDay: {
            auto y = get(rule.year_column);
            auto m = get(rule.month_column);
            auto dd = get(rule.day_column);
            if (!y || !m || !dd) return std::nullopt;
            const long long year = parse_whole(rule.year_column, *y);
            const long long month = parse_whole(rule.month_column, *m);
            const long long day = parse_whole(rule.day_column, *dd);
            // Zero month or day means "unknown" in this source.
            if (month == 0 || day == 0) return std::nullopt;
            auto d = make_date(year, month, day);
            if (!d) malformed(rule.year_column, *y, "not a valid calendar date");
            return d;
        }
    }
    return std::nullopt;
}

template <class T>
std::string cell(const std::optional<T>& v) {
    if (!v) return {};
    if constexpr (std::is_same_v<T, std::string>) return *v;
    else if constexpr (std::is_same_v<T, double>) return io::format_double(*v);
    else if constexpr (std::is_same_v<T, Date>) return format_date(*v);
    else return std::to_string(*v);
}

}  // namespace

std::string_view to_string(SourceKind kind) {
    switch (kind) {
        case SourceKind::BostonCrime: return "BostonCrime";
        case SourceKind::ChicagoCrime: return "ChicagoCrime";
        case SourceKind::DenverCrime: return "DenverCrime";
        case SourceKind::PhillyCrime: return "PhillyCrime";
        case SourceKind::SanFranciscoCrime: return "SanFranciscoCrime";
        case SourceKind::FatalPoliceShootings: return "FatalPoliceShootings";
        case SourceKind::HomicideReports: return "HomicideReports";
        case SourceKind::GlobalTerrorism: return "GlobalTerrorism";
        case SourceKind::MassShootings: return "MassShootings";
        case SourceKind::Canonical: return "Canonical";
    }
    return "Canonical";
}

std::optional<SourceKind> parse_source_kind(std::string_view name) {
    for (auto kind : kAllSourceKinds) {
        if (to_string(kind) == name) return kind;
    }
    return std::nullopt;
}

std::string format_date(const Date& date) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                  static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
    return buf;
}

const std::array<std::string_view, kCanonicalColumnCount>& canonical_header() { return kHeader; }

csv::Row to_canonical_row(const CrimeRecord& r) {
    return {cell(r.date),
            cell(r.crime_type),
            cell(r.crime_detail),
            cell(r.lat),
            cell(r.lon),
            cell(r.loc_description),
            cell(r.city),
            cell(r.street),
            cell(r.state),
            cell(r.victim_age),
            cell(r.victim_race),
            cell(r.victim_gender),
            cell(r.victim_description),
            cell(r.total_victims),
            cell(r.perpe_mental),
            cell(r.perpe_flee),
            cell(r.perpe_race),
            cell(r.perpe_gender),
            cell(r.perpe_age),
            cell(r.perpe_nationality),
            cell(r.perpe_vic_relation),
            cell(r.weapon),
            cell(r.motivation),
            cell(r.news_coverage),
            cell(r.property_damage),
            std::string(to_string(r.database))};
}

std::size_t null_attribute_count(const CrimeRecord& record) {
    const auto row = to_canonical_row(record);
    return static_cast<std::size_t>(std::count_if(row.begin(), row.end() - 1, [](const auto& c) { return c.empty(); }));
}

const std::vector<SourceSchema>& schema_registry() {
    static const std::vector<SourceSchema> registry = [] {
        std::vector<SourceSchema> out;
        for (const auto& a : adapters()) out.push_back(a.schema);
        return out;
    }();
    return registry;
}

SourceKind detect_schema(std::span<const std::string> header) {
    if (header.empty()) raise(ErrorCode::UnrecognizedSchema, "empty header");
    std::vector<SourceKind> matches;
    for (const auto& schema : schema_registry()) {
        const bool all = std::all_of(schema.signature.begin(), schema.signature.end(), [&](std::string_view col) {
            return std::find(header.begin(), header.end(), col) != header.end();
        });
        if (all) matches.push_back(schema.kind);
    }
    if (matches.empty()) {
        std::string cols;
        for (const auto& h : header) cols += (cols.empty() ? "" : ", ") + h;
        raise(ErrorCode::UnrecognizedSchema, "no registered source matches header [" + cols + "]");
    }
    if (matches.size() > 1) {
        std::string kinds;
        for (auto k : matches) kinds += (kinds.empty() ? "" : ", ") + std::string(to_string(k));
        raise(ErrorCode::AmbiguousSchema, "header matches several sources: " + kinds);
    }
    return matches.front();
}

AdaptResult adapt_record(const RawRecord& raw, SourceKind source) {
    const Adapter& a = adapter_for(source);
    CrimeRecord r;
    r.database = source;
    r.date = adapt_date(a, raw);
    for (const auto& [column, field] : a.map) {
        auto value = lookup(raw, column);
        if (!value) continue;
        auto text = io::trim(*value);
        if (is_null_value(a, column, text)) continue;
        assign(r, field, column, text);
    }
    for (const auto& [column, value] : a.constants) assign(r, field_for(column), column, value);
    if (a.finish) {
        if (auto dropped = a.finish(raw, r)) return *dropped;
    }
    if (source == SourceKind::Canonical && !lookup(raw, "DataBase")) {
        malformed("DataBase", "", "canonical rows must name their source database");
    }
    return r;
}

SourceStream load_source(const std::filesystem::path& path) {
    SourceStream s;
    s.table = csv::read_file(path);
    s.kind = detect_schema(s.table.header);
    s.label = path.filename().string();
    return s;
}

MergeResult merge_sources(std::span<const SourceStream> inputs) {
    MergeResult result;
    for (const auto& input : inputs) {
        SourceTally tally;
        const auto& header = input.table.header;
        for (std::size_t i = 0; i < input.table.rows.size(); ++i) {
            const auto& row = input.table.rows[i];
            ++tally.total;
            const std::size_t record_number =
                i < input.table.record_numbers.size() ? input.table.record_numbers[i] : i + 2;
            auto quarantine = [&](std::string reason) {
                ++tally.quarantined;
                result.quarantine.push_back({input.kind, input.label, record_number, std::move(reason), header, row});
            };
            if (row.size() != header.size()) {
                quarantine("MalformedValue: row has " + std::to_string(row.size()) + " fields, header has " +
                           std::to_string(header.size()));
                continue;
            }
            RawRecord raw;
            for (std::size_t c = 0; c < header.size(); ++c) raw.emplace(header[c], row[c]);
            try {
                auto adapted = adapt_record(raw, input.kind);
                if (auto* rec = std::get_if<CrimeRecord>(&adapted)) {
                    ++tally.retained;
                    ++result.dataset.provenance[rec->database];
                    result.dataset.records.push_back(std::move(*rec));
                } else {
                    ++tally.dropped;
                }
            } catch (const Error& e) {
                quarantine(e.what());
            }
        }
        result.tallies.emplace_back(input.label, tally);
    }
    return result;
}

std::map<SourceKind, double> source_distribution(const MergedCrimeDataset& dataset) {
    std::size_t total = 0;
    for (const auto& [kind, count] : dataset.provenance) total += count;
    if (total == 0) raise(ErrorCode::EmptyDataset, "no records to summarize");
    std::map<SourceKind, double> out;
    for (const auto& [kind, count] : dataset.provenance) {
        if (count) out[kind] = static_cast<double>(count) / static_cast<double>(total);
    }
    return out;
}

std::string write_canonical_csv(std::span<const CrimeRecord> records) {
    csv::Writer w;
    w.row(csv::Row(kHeader.begin(), kHeader.end()));
    for (const auto& r : records) w.row(to_canonical_row(r));
    return w.str();
}

std::string write_quarantine_csv(std::span<const QuarantinedRow> rows) {
    csv::Writer w;
    w.row({"source", "input", "record", "reason", "header", "original"});
    for (const auto& q : rows) {
        w.row({std::string(to_string(q.source)), q.label, std::to_string(q.record_number), q.reason,
               csv::format_row(q.header), csv::format_row(q.original)});
    }
    return w.str();
}

MergedCrimeDataset read_canonical_csv(const std::filesystem::path& path) {
    SourceStream s;
    s.table = csv::read_file(path);
    s.kind = detect_schema(s.table.header);
    if (s.kind != SourceKind::Canonical) {
        raise(ErrorCode::UnrecognizedSchema, path.string() + " is not a canonical crime CSV");
    }
    s.label = path.filename().string();
    auto merged = merge_sources(std::span(&s, 1));
    if (!merged.quarantine.empty()) {
        raise(ErrorCode::MalformedValue, path.string() + ": " + merged.quarantine.front().reason);
    }
    return std::move(merged.dataset);
}

}  // namespace crimenews::ingest
