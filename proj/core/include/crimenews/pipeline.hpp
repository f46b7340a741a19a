#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crimenews/error.hpp"

namespace crimenews::pipeline {

struct PipelineConfig {
    std::vector<std::filesystem::path> crime_inputs;
    std::vector<std::filesystem::path> article_inputs;
    std::optional<std::filesystem::path> rules;       // crime-type ruleset JSON
    std::optional<std::filesystem::path> dictionary;  // crime stem word list
    std::optional<std::vector<std::vector<std::string>>> exclusion_groups;
    std::optional<std::filesystem::path> stoplist;
    std::optional<std::filesystem::path> gazetteers;  // directory
    std::size_t threshold = 3;

    std::size_t min_df = 5;
    double max_df_ratio = 0.95;
    std::size_t max_features = 60;

    std::optional<std::size_t> k;  // fixed k; when absent the sweep elbow picks it
    std::vector<std::size_t> sweep;
    std::size_t max_iter = 300;
    double tol = 1e-6;
    std::size_t top_terms = 10;

    double eps = 1.0;
    std::size_t min_samples = 10;

    std::size_t lda_topics = 50;
    std::optional<double> lda_alpha;
    double lda_beta = 0.01;
    std::size_t lda_iterations = 1000;
    std::size_t top_words = 10;

    std::size_t word_frequencies = 50;

    std::optional<std::uint64_t> seed;
    std::filesystem::path output_dir;
};

/// Parses "a..b", "a..b:step" and comma lists of those or single integers
/// into a strictly increasing list. Throws Error(Validation).
std::vector<std::size_t> parse_k_range(std::string_view text);

/// Reads the JSON config; relative paths resolve against the file's
/// directory. Each override is a (key, value) pair applied on top, with
/// dashes in the key read as underscores; values parse as JSON when they can
/// and as plain strings otherwise. Throws Error(Validation) on unknown keys
/// or ill-typed values.
PipelineConfig load_config(const std::filesystem::path& file,
                           const std::vector<std::pair<std::string, std::string>>& overrides = {});
PipelineConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir,
                            const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Throws Error(Validation) when the seed is missing, an input path does not
/// exist, or a parameter is out of range.
void validate(const PipelineConfig& config);

/// Canonical JSON form of the config, used as the manifest snapshot.
std::string config_json(const PipelineConfig& config);

enum class Stage { Ingest, Crimemap, Corpus, Vectorize, Cluster, Topics, Entities, Analytics };

inline constexpr std::array<Stage, 8> kStages = {Stage::Ingest,    Stage::Crimemap, Stage::Corpus,
                                                 Stage::Vectorize, Stage::Cluster,  Stage::Topics,
                                                 Stage::Entities,  Stage::Analytics};

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

/// Fixed offsets added to the global seed for the randomized stages.
inline constexpr std::uint64_t kKMeansSeedOffset = 1000;
inline constexpr std::uint64_t kLdaSeedOffset = 2000;

struct StageRecord {
    std::string name;
    std::string status;  // "ok" or "failed"
    std::size_t rows = 0;
    double wall_ms = 0.0;
    std::map<std::string, std::string> digests;  // path relative to output_dir -> SHA-256
    std::string error;
};

struct RunManifest {
    std::string config;  // config_json snapshot
    std::vector<StageRecord> stages;
};

std::string manifest_json(const RunManifest& manifest);
RunManifest read_manifest(const std::filesystem::path& path);

/// Raised when a stage aborts; carries the stage name. Outputs written so
/// far stay on disk.
class StageFailure : public Error {
public:
    StageFailure(std::string stage, const Error& cause);
    const std::string& stage() const noexcept { return stage_; }
    /// The cause's message without the stage prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string stage_;
    std::string detail_;
};

/// Runs one stage from the outputs of earlier stages under output_dir.
StageRecord run_stage(Stage stage, const PipelineConfig& config);

/// Halves of the cluster stage, runnable on their own.
StageRecord run_kmeans(const PipelineConfig& config);
StageRecord run_dbscan(const PipelineConfig& config);

/// Validates, runs every stage in order, then writes manifest.json and
/// report.txt under output_dir. A failing stage is recorded in the manifest
/// before StageFailure propagates.
RunManifest run_pipeline(const PipelineConfig& config);

/// Digests of every file under output_dir/<stage>, keyed by relative path.
std::map<std::string, std::string> stage_digests(const std::filesystem::path& output_dir, std::string_view stage);

}  // namespace crimenews::pipeline
