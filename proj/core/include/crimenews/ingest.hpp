#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "crimenews/csv.hpp"

namespace crimenews::ingest {

enum class SourceKind {
    BostonCrime,
    ChicagoCrime,
    DenverCrime,
    PhillyCrime,
    SanFranciscoCrime,
    FatalPoliceShootings,
    HomicideReports,
    GlobalTerrorism,
    MassShootings,
    Canonical,
};

inline constexpr std::array kAllSourceKinds = {
    SourceKind::BostonCrime,          SourceKind::ChicagoCrime,    SourceKind::DenverCrime,
    SourceKind::PhillyCrime,          SourceKind::SanFranciscoCrime,
    SourceKind::FatalPoliceShootings, SourceKind::HomicideReports, SourceKind::GlobalTerrorism,
    SourceKind::MassShootings,        SourceKind::Canonical,
};

std::string_view to_string(SourceKind kind);
std::optional<SourceKind> parse_source_kind(std::string_view name);

using Date = std::chrono::year_month_day;
std::string format_date(const Date& date);

/// One crime event in the merged schema. Every attribute except `database`
/// may be missing.
struct CrimeRecord {
    std::optional<Date> date;
    std::optional<std::string> crime_type;
    std::optional<std::string> crime_detail;
    std::optional<double> lat;
    std::optional<double> lon;
    std::optional<std::string> loc_description;
    std::optional<std::string> city;
    std::optional<std::string> street;
    std::optional<std::string> state;
    std::optional<int> victim_age;
    std::optional<std::string> victim_race;
    std::optional<std::string> victim_gender;
    std::optional<std::string> victim_description;
    std::optional<long long> total_victims;
    std::optional<std::string> perpe_mental;
    std::optional<std::string> perpe_flee;
    std::optional<std::string> perpe_race;
    std::optional<std::string> perpe_gender;
    std::optional<int> perpe_age;
    std::optional<std::string> perpe_nationality;
    std::optional<std::string> perpe_vic_relation;
    std::optional<std::string> weapon;
    std::optional<std::string> motivation;
    std::optional<std::string> news_coverage;
    std::optional<std::string> property_damage;
    SourceKind database = SourceKind::Canonical;

    friend bool operator==(const CrimeRecord&, const CrimeRecord&) = default;
};

inline constexpr std::size_t kCanonicalColumnCount = 26;

/// Canonical CSV header, in the fixed output order.
const std::array<std::string_view, kCanonicalColumnCount>& canonical_header();

/// Canonical text of each column; null attributes become "".
csv::Row to_canonical_row(const CrimeRecord& record);

/// Number of the 25 nullable attributes that are null.
std::size_t null_attribute_count(const CrimeRecord& record);

struct SourceSchema {
    SourceKind kind;
    std::vector<std::string_view> columns;    // registered columns
    std::vector<std::string_view> signature;  // all must be present to match
};

const std::vector<SourceSchema>& schema_registry();

/// Identifies the source whose signature columns all appear in `header`.
/// Throws Error(UnrecognizedSchema) or Error(AmbiguousSchema).
SourceKind detect_schema(std::span<const std::string> header);

using RawRecord = std::map<std::string, std::string, std::less<>>;

/// A row the source-specific filter removed on purpose (not an error).
struct Dropped {
    std::string reason;
};

using AdaptResult = std::variant<CrimeRecord, Dropped>;

/// Converts one source row into the canonical schema. Columns outside the
/// source's registered set are ignored. Throws Error(MalformedValue) when a
/// numeric or date field does not parse or violates its range.
AdaptResult adapt_record(const RawRecord& raw, SourceKind source);

struct MergedCrimeDataset {
    std::vector<CrimeRecord> records;
    std::map<SourceKind, std::size_t> provenance;
};

struct SourceStream {
    SourceKind kind = SourceKind::Canonical;
    std::string label;  // typically the file name
    csv::Table table;
};

/// Reads a CSV file and detects its kind from the header.
SourceStream load_source(const std::filesystem::path& path);

struct QuarantinedRow {
    SourceKind source;
    std::string label;
    std::size_t record_number = 0;
    std::string reason;
    csv::Row header;
    csv::Row original;
};

struct SourceTally {
    std::size_t total = 0;
    std::size_t retained = 0;
    std::size_t dropped = 0;
    std::size_t quarantined = 0;
};

struct MergeResult {
    MergedCrimeDataset dataset;
    std::vector<QuarantinedRow> quarantine;
    std::vector<std::pair<std::string, SourceTally>> tallies;  // per input, in order
};

/// Adapts every stream and concatenates them in input order. Bad rows go to
/// the quarantine list; a single bad row never aborts the merge.
MergeResult merge_sources(std::span<const SourceStream> inputs);

/// Share of each source in the dataset. Throws Error(EmptyDataset).
std::map<SourceKind, double> source_distribution(const MergedCrimeDataset& dataset);

std::string write_canonical_csv(std::span<const CrimeRecord> records);
std::string write_quarantine_csv(std::span<const QuarantinedRow> rows);

/// Parses a canonical CSV (the tool's own output) back into a dataset.
MergedCrimeDataset read_canonical_csv(const std::filesystem::path& path);

}  // namespace crimenews::ingest
