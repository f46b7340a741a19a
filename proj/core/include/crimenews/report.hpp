#pragma once

#include <filesystem>
#include <string>

#include "crimenews/pipeline.hpp"

namespace crimenews::report {

/// Plain-text report over a finished run: source distribution, category
/// distribution, filter acceptance, the (k, sse) table, cluster keywords,
/// DBSCAN sizes, LDA top words and entity counts. Depends only on stage
/// outputs and row counts, never on timings, so regenerating it yields the
/// same bytes. Throws Error(MissingStageOutput).
std::string emit_report(const pipeline::RunManifest& manifest, const std::filesystem::path& output_dir);

}  // namespace crimenews::report
