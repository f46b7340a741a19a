// crimenews: command line front end for the pipeline stages.

#include <filesystem>
#include <iostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"
#include "crimenews/pipeline.hpp"
#include "crimenews/report.hpp"

namespace fs = std::filesystem;
using namespace crimenews;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitStage = 3;

struct Invocation {
    std::string config;
    std::vector<std::pair<std::string, std::string>> overrides;
};

// Pairs "--key value" and "--key=value" leftovers into overrides.
std::vector<std::pair<std::string, std::string>> pair_overrides(const std::vector<std::string>& extras) {
    std::vector<std::pair<std::string, std::string>> out;
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const auto& arg = extras[i];
        if (arg.rfind("--", 0) != 0) raise(ErrorCode::Validation, "unexpected argument: " + arg);
        const auto eq = arg.find('=');
        if (eq != std::string::npos) {
            out.emplace_back(arg.substr(2, eq - 2), arg.substr(eq + 1));
        } else if (i + 1 < extras.size()) {
            out.emplace_back(arg.substr(2), extras[i + 1]);
            ++i;
        } else {
            raise(ErrorCode::Validation, "missing value for " + arg);
        }
    }
    return out;
}

pipeline::PipelineConfig configure(const Invocation& inv, CLI::App* sub) {
    auto overrides = pair_overrides(sub->remaining());
    overrides.insert(overrides.begin(), inv.overrides.begin(), inv.overrides.end());
    auto cfg = pipeline::load_config(inv.config, overrides);
    pipeline::validate(cfg);
    return cfg;
}

void print_file(const fs::path& path) {
    if (fs::exists(path)) std::cout << io::read_text(path);
}

void print_stage(const pipeline::StageRecord& rec) {
    std::cerr << rec.name << ": " << rec.rows << " rows, " << rec.digests.size() << " files\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Crime news dataset pipeline"};
    app.require_subcommand(1);
    Invocation inv;

    struct Command {
        const char* name;
        const char* help;
    };
    const std::vector<Command> commands = {
        {"ingest", "Merge crime datasets into the canonical schema"},
        {"crimemap", "Map crime types to canonical categories; prints the distribution"},
        {"filter-news", "Merge article datasets and keep crime articles"},
        {"vectorize", "Build the TF-IDF vocabulary and document-term matrix"},
        {"kmeans", "K-means clustering (with optional SSE sweep)"},
        {"dbscan", "DBSCAN clustering"},
        {"lda", "LDA topic model; prints top words per topic"},
        {"entities", "Rule-based named entity extraction"},
        {"stats", "Outlet statistics, word frequencies, geo points and PCA"},
        {"report", "Print the report for a finished run"},
        {"run", "Run the full pipeline"},
    };
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const auto& c : commands) {
        auto* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("-c,--config", inv.config, "Pipeline config JSON")->required()->check(CLI::ExistingFile);
        sub->add_option("--k", [&inv](const CLI::results_t& r) {
            inv.overrides.emplace_back("k", r.front());
            return true;
        }, "Number of k-means clusters");
        sub->add_option("--seed", [&inv](const CLI::results_t& r) {
            inv.overrides.emplace_back("seed", r.front());
            return true;
        }, "Global seed");
        sub->add_option("--sweep", [&inv](const CLI::results_t& r) {
            inv.overrides.emplace_back("sweep", r.front());
            return true;
        }, "k values for the SSE sweep, e.g. 2..128 or 2,4,8");
        sub->add_option("--eps", [&inv](const CLI::results_t& r) {
            inv.overrides.emplace_back("eps", r.front());
            return true;
        }, "DBSCAN radius");
        sub->add_option("--min-samples", [&inv](const CLI::results_t& r) {
            inv.overrides.emplace_back("min_samples", r.front());
            return true;
        }, "DBSCAN core threshold");
        sub->allow_extras();
        sub->footer("Any other config field can be set with --<field> <value>.");
        subs.emplace_back(c.name, sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    std::string name;
    CLI::App* sub = nullptr;
    for (const auto& [n, s] : subs) {
        if (s->parsed()) {
            name = n;
            sub = s;
        }
    }

    pipeline::PipelineConfig cfg;
    try {
        cfg = configure(inv, sub);
    } catch (const Error& e) {
        std::cerr << "crimenews: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        const auto& out = cfg.output_dir;
        if (name == "run") {
            const auto manifest = pipeline::run_pipeline(cfg);
            for (const auto& s : manifest.stages) print_stage(s);
            std::cout << (out / "report.txt").string() << "\n";
        } else if (name == "report") {
            const auto manifest = pipeline::read_manifest(out / "manifest.json");
            const auto text = report::emit_report(manifest, out);
            io::write_text(out / "report.txt", text);
            std::cout << text;
        } else if (name == "kmeans") {
            print_stage(pipeline::run_kmeans(cfg));
            if (fs::exists(out / "cluster" / "sweep.csv")) print_file(out / "cluster" / "sweep.csv");
            else print_file(out / "cluster" / "kmeans_sizes.csv");
        } else if (name == "dbscan") {
            print_stage(pipeline::run_dbscan(cfg));
            print_file(out / "cluster" / "dbscan_sizes.csv");
        } else {
            const std::vector<std::tuple<std::string, pipeline::Stage, fs::path>> single = {
                {"ingest", pipeline::Stage::Ingest, "ingest/source_distribution.csv"},
                {"crimemap", pipeline::Stage::Crimemap, "crimemap/categories.csv"},
                {"filter-news", pipeline::Stage::Corpus, "corpus/filter.csv"},
                {"vectorize", pipeline::Stage::Vectorize, "vectorize/vocabulary.csv"},
                {"lda", pipeline::Stage::Topics, "topics/top_words.csv"},
                {"entities", pipeline::Stage::Entities, "entities/label_counts.csv"},
                {"stats", pipeline::Stage::Analytics, "analytics/hit_times.csv"},
            };
            for (const auto& [n, stage, file] : single) {
                if (n != name) continue;
                print_stage(pipeline::run_stage(stage, cfg));
                print_file(out / file);
            }
        }
    } catch (const pipeline::StageFailure& e) {
        std::cerr << "crimenews: " << e.what() << "\n";
        return kExitStage;
    } catch (const Error& e) {
        std::cerr << "crimenews: " << e.what() << "\n";
        return e.code() == ErrorCode::Validation ? kExitValidation : kExitStage;
    } catch (const std::exception& e) {
        std::cerr << "crimenews: " << e.what() << "\n";
        return kExitStage;
    }
    return 0;
}
