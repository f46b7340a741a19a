#include "crimenews/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "crimenews/csv.hpp"
#include "crimenews/error.hpp"
#include "crimenews/io.hpp"

namespace crimenews::report {

namespace fs = std::filesystem;

namespace {

csv::Table load(const fs::path& dir, const char* name) {
    const auto path = dir / name;
    if (!fs::exists(path)) raise(ErrorCode::MissingStageOutput, "missing " + path.string());
    return csv::read_file(path);
}

const std::string& cell(const csv::Table& t, std::size_t row, std::string_view column) {
    const auto c = t.column(column);
    if (c == csv::Table::npos) raise(ErrorCode::MissingStageOutput, "column " + std::string(column) + " missing");
    return t.rows[row][c];
}

std::string pad(std::string text, std::size_t width) {
    if (text.size() < width) text.append(width - text.size(), ' ');
    return text;
}

// Left-aligned fixed-width table.
std::string table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows) {
        for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
        std::string s = " ";
        for (std::size_t c = 0; c < r.size(); ++c) {
            s += ' ';
            s += c + 1 == r.size() ? r[c] : pad(r[c], width[c]) + " ";
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        return s + "\n";
    };
    std::string out = line(header);
    for (const auto& r : rows) out += line(r);
    return out;
}

std::string heading(int number, std::string_view title) {
    std::string h = std::to_string(number) + ". " + std::string(title);
    return h + "\n" + std::string(h.size(), '-') + "\n";
}

std::string percent(double share) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", share * 100.0);
    return buf;
}

}  // namespace

std::string emit_report(const pipeline::RunManifest& manifest, const fs::path& output_dir) {
    std::map<std::string, const pipeline::StageRecord*> stages;
    for (const auto& s : manifest.stages) stages[s.name] = &s;
    for (auto st : pipeline::kStages) {
        const auto name = std::string(pipeline::to_string(st));
        if (!stages.contains(name) || stages[name]->status != "ok") {
            raise(ErrorCode::MissingStageOutput, "stage " + name + " did not complete");
        }
    }

    std::string out = "crimenews run report\n====================\n\n";
    out += "Stage rows:";
    for (auto st : pipeline::kStages) {
        const auto name = std::string(pipeline::to_string(st));
        out += " " + name + "=" + std::to_string(stages[name]->rows);
    }
    out += "\n\n";

    // 1. Source distribution.
    {
        const auto t = load(output_dir / "ingest", "source_distribution.csv");
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            double share = 0.0;
            io::parse_double(cell(t, i, "share"), share);
            rows.push_back({cell(t, i, "source"), cell(t, i, "rows"), percent(share)});
        }
        out += heading(1, "Source distribution");
        out += table({"source", "rows", "share"}, rows) + "\n";
    }

    // 2. Category distribution.
    {
        const auto t = load(output_dir / "crimemap", "categories.csv");
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < t.rows.size(); ++i) rows.push_back({cell(t, i, "category"), cell(t, i, "count")});
        out += heading(2, "Crime category distribution");
        out += table({"category", "count"}, rows) + "\n";
    }

    // 3. Filter acceptance.
    {
        const auto t = load(output_dir / "corpus", "filter.csv");
        std::size_t accepted = 0;
        for (std::size_t i = 0; i < t.rows.size(); ++i) accepted += cell(t, i, "accepted") == "1";
        const double rate = t.rows.empty() ? 0.0 : static_cast<double>(accepted) / static_cast<double>(t.rows.size());
        out += heading(3, "News filter acceptance");
        out += "  " + std::to_string(accepted) + " of " + std::to_string(t.rows.size()) + " articles accepted (" +
               percent(rate) + ")\n\n";
    }

    // 4. Elbow table.
    {
        out += heading(4, "SSE by k");
        const auto dir = output_dir / "cluster";
        if (fs::exists(dir / "sweep.csv")) {
            const auto t = load(dir, "sweep.csv");
            std::vector<std::vector<std::string>> rows;
            for (std::size_t i = 0; i < t.rows.size(); ++i) {
                rows.push_back({cell(t, i, "k"), cell(t, i, "sse"), cell(t, i, "elbow") == "1" ? "<- elbow" : ""});
            }
            out += table({"k", "sse", ""}, rows) + "\n";
        } else {
            const auto sizes = load(dir, "kmeans_sizes.csv");
            out += "  single k (k = " + std::to_string(sizes.rows.size()) + ")\n\n";
        }
    }

    // 5. Cluster keywords.
    {
        const auto t = load(output_dir / "cluster", "top_terms.csv");
        const auto sizes = load(output_dir / "cluster", "kmeans_sizes.csv");
        std::map<long long, std::vector<std::string>> terms;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            long long c = 0;
            io::parse_int(cell(t, i, "cluster"), c);
            terms[c].push_back(cell(t, i, "term"));
        }
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < sizes.rows.size(); ++i) {
            long long c = 0;
            io::parse_int(cell(sizes, i, "cluster"), c);
            std::string words;
            for (const auto& w : terms[c]) words += (words.empty() ? "" : ", ") + w;
            rows.push_back({cell(sizes, i, "cluster"), cell(sizes, i, "size"), words});
        }
        out += heading(5, "K-means cluster keywords");
        out += table({"cluster", "size", "top terms"}, rows) + "\n";
    }

    // 6. DBSCAN.
    {
        const auto t = load(output_dir / "cluster", "dbscan_sizes.csv");
        std::vector<std::vector<std::string>> rows;
        std::string noise = "0";
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            if (cell(t, i, "cluster") == "-1") noise = cell(t, i, "size");
            else rows.push_back({cell(t, i, "cluster"), cell(t, i, "size")});
        }
        out += heading(6, "DBSCAN clusters");
        out += "  clusters: " + std::to_string(rows.size()) + ", noise points: " + noise + "\n";
        if (!rows.empty()) out += table({"cluster", "size"}, rows);
        out += "\n";
    }

    // 7. LDA.
    {
        const auto t = load(output_dir / "topics", "top_words.csv");
        std::map<long long, std::vector<std::string>> words;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            long long k = 0;
            io::parse_int(cell(t, i, "topic"), k);
            words[k].push_back(cell(t, i, "word"));
        }
        std::vector<std::vector<std::string>> rows;
        for (const auto& [k, ws] : words) {
            std::string joined;
            for (const auto& w : ws) joined += (joined.empty() ? "" : ", ") + w;
            rows.push_back({std::to_string(k), joined});
        }
        out += heading(7, "LDA topics");
        out += table({"topic", "top words"}, rows) + "\n";
    }

    // 8. Entities.
    {
        const auto t = load(output_dir / "entities", "label_counts.csv");
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < t.rows.size(); ++i) rows.push_back({cell(t, i, "label"), cell(t, i, "count")});
        out += heading(8, "Named entities by label");
        out += table({"label", "count"}, rows);
    }
    return out;
}

}  // namespace crimenews::report
