#include "crimenews/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include <json.hpp>

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"
#include "crimenews/random.hpp"

namespace crimenews::cluster {
namespace {

void check_k(const Matrix& points, std::size_t k) {
    if (points.rows() == 0) raise(ErrorCode::InvalidArgument, "cannot cluster zero rows");
    if (k < 1) raise(ErrorCode::InvalidArgument, "k must be at least 1");
    if (k > points.rows()) {
        raise(ErrorCode::KTooLarge,
              "k = " + std::to_string(k) + " exceeds the " + std::to_string(points.rows()) + " rows");
    }
}

Matrix kmeans_plus_plus(const Matrix& points, std::size_t k, Rng& rng) {
    const std::size_t n = points.rows();
    Matrix centroids(k, points.cols());
    std::vector<char> chosen(n, 0);
    std::vector<double> d2(n, std::numeric_limits<double>::infinity());

    auto take = [&](std::size_t c, std::size_t idx) {
        chosen[idx] = 1;
        std::copy(points.row(idx).begin(), points.row(idx).end(), centroids.row(c).begin());
        for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(points.row(i), points.row(idx)));
    };

    take(0, static_cast<std::size_t>(rng.below(n)));
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) total += d2[i];
        std::size_t pick = n;
        if (total > 0.0) {
            const double r = rng.uniform() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0.0) continue;
                acc += d2[i];
                pick = i;
                if (acc > r) break;
            }
        } else {
            // Fewer distinct rows than k: pick uniformly among unused rows.
            std::vector<std::size_t> unused;
            for (std::size_t i = 0; i < n; ++i) {
                if (!chosen[i]) unused.push_back(i);
            }
            pick = unused[static_cast<std::size_t>(rng.below(unused.size()))];
        }
        take(c, pick);
    }
    return centroids;
}

// Moves the farthest point of some multi-member cluster into each empty one.
void repair_empty(const Matrix& points, Matrix& centroids, std::vector<std::size_t>& assignments) {
    const std::size_t k = centroids.rows();
    std::vector<std::size_t> sizes(k, 0);
    for (auto a : assignments) ++sizes[a];
    for (std::size_t c = 0; c < k; ++c) {
        if (sizes[c] != 0) continue;
        std::size_t far = points.rows();
        double best = -1.0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            if (sizes[assignments[i]] < 2) continue;
            const double d = squared_distance(points.row(i), centroids.row(assignments[i]));
            if (d > best) {
                best = d;
                far = i;
            }
        }
        if (far == points.rows()) raise(ErrorCode::KTooLarge, "not enough rows to fill every cluster");
        --sizes[assignments[far]];
        assignments[far] = c;
        sizes[c] = 1;
        std::copy(points.row(far).begin(), points.row(far).end(), centroids.row(c).begin());
    }
}

Matrix cluster_means(const Matrix& points, std::span<const std::size_t> assignments, std::size_t k) {
    Matrix sums(k, points.cols());
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        auto dst = sums.row(assignments[i]);
        auto src = points.row(i);
        for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
        ++counts[assignments[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
        for (auto& v : sums.row(c)) v /= static_cast<double>(counts[c]);
    }
    return sums;
}

}  // namespace

std::vector<std::size_t> nearest_centroids(const Matrix& points, const Matrix& centroids) {
    std::vector<std::size_t> out(points.rows(), 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centroids.rows(); ++c) {
            const double d = squared_distance(points.row(i), centroids.row(c));
            if (d < best) {
                best = d;
                out[i] = c;
            }
        }
    }
    return out;
}

double compute_sse(const Matrix& points, const Matrix& centroids, std::span<const std::size_t> assignments) {
    double sse = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i) {
        sse += squared_distance(points.row(i), centroids.row(assignments[i]));
    }
    return sse;
}

KMeansModel kmeans_fit_from(const Matrix& points, Matrix centroids, const KMeansParams& params) {
    const std::size_t k = centroids.rows();
    check_k(points, k);
    if (centroids.cols() != points.cols()) raise(ErrorCode::InvalidArgument, "centroid width differs from data");

    KMeansModel model;
    model.k = k;
    model.seed = params.seed;
    std::vector<std::size_t> assignments;
    for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
        auto next = nearest_centroids(points, centroids);
        if (iter > 0 && next == assignments) break;
        assignments = std::move(next);
        repair_empty(points, centroids, assignments);
        Matrix updated = cluster_means(points, assignments, k);
        double shift = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            shift = std::max(shift, std::sqrt(squared_distance(updated.row(c), centroids.row(c))));
        }
        centroids = std::move(updated);
        model.sse_history.push_back(compute_sse(points, centroids, assignments));
        ++model.iterations;
        if (shift < params.tol) break;
    }
    model.assignments = nearest_centroids(points, centroids);
    model.sse = compute_sse(points, centroids, model.assignments);
    model.centroids = std::move(centroids);
    return model;
}

KMeansModel kmeans_fit(const Matrix& points, const KMeansParams& params) {
    check_k(points, params.k);
    Rng rng(params.seed);
    return kmeans_fit_from(points, kmeans_plus_plus(points, params.k, rng), params);
}

std::vector<SweepPoint> sse_sweep(const Matrix& points, std::span<const std::size_t> k_values, std::uint64_t seed,
                                  std::size_t max_iter, double tol) {
    for (std::size_t i = 1; i < k_values.size(); ++i) {
        if (k_values[i] <= k_values[i - 1]) raise(ErrorCode::InvalidArgument, "sweep k values must strictly increase");
    }
    std::vector<SweepPoint> out;
    std::optional<KMeansModel> prev;
    for (std::size_t k : k_values) {
        check_k(points, k);
        KMeansParams params{k, seed, max_iter, tol};
        KMeansModel model;
        if (!prev) {
            model = kmeans_fit(points, params);
        } else {
            Matrix init = prev->centroids;
            while (init.rows() < k) {
                const auto nearest = nearest_centroids(points, init);
                std::size_t far = 0;
                double best = -1.0;
                for (std::size_t i = 0; i < points.rows(); ++i) {
                    const double d = squared_distance(points.row(i), init.row(nearest[i]));
                    if (d > best) {
                        best = d;
                        far = i;
                    }
                }
                std::vector<double> grown(init.values().begin(), init.values().end());
                grown.insert(grown.end(), points.row(far).begin(), points.row(far).end());
                init = Matrix(init.rows() + 1, points.cols(), std::move(grown));
            }
            const auto warm_assign = nearest_centroids(points, init);
            const double warm_sse = compute_sse(points, init, warm_assign);
            model = kmeans_fit_from(points, init, params);
            if (model.sse > warm_sse) {
                // Rounding can in principle leave Lloyd a hair above its start.
                model.centroids = init;
                model.assignments = warm_assign;
                model.sse = warm_sse;
            }
        }
        out.push_back({k, model.sse, model.iterations});
        prev = std::move(model);
    }
    return out;
}

std::optional<std::size_t> elbow_index(std::span<const SweepPoint> sweep) {
    if (sweep.size() < 3) return std::nullopt;
    std::size_t best = 1;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < sweep.size(); ++i) {
        const double second = sweep[i - 1].sse - 2.0 * sweep[i].sse + sweep[i + 1].sse;
        if (second > best_value) {
            best_value = second;
            best = i;
        }
    }
    return best;
}

DbscanResult dbscan_fit(const Matrix& points, double eps, std::size_t min_samples) {
    if (!(eps > 0.0)) raise(ErrorCode::InvalidArgument, "eps must be positive");
    if (min_samples < 1) raise(ErrorCode::InvalidArgument, "min_samples must be at least 1");
    const std::size_t n = points.rows();
    const double eps2 = eps * eps;

    std::vector<std::vector<std::size_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (squared_distance(points.row(i), points.row(j)) <= eps2) neighbors[i].push_back(j);
        }
    }

    DbscanResult result;
    result.eps = eps;
    result.min_samples = min_samples;
    result.labels.assign(n, -1);
    result.core.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) result.core[i] = neighbors[i].size() >= min_samples;

    long long next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!result.core[i] || result.labels[i] != -1) continue;
        const long long id = next++;
        std::deque<std::size_t> queue{i};
        result.labels[i] = id;
        while (!queue.empty()) {
            const std::size_t p = queue.front();
            queue.pop_front();
            if (!result.core[p]) continue;
            for (std::size_t q : neighbors[p]) {
                if (result.labels[q] != -1) continue;
                result.labels[q] = id;
                if (result.core[q]) queue.push_back(q);
            }
        }
    }
    result.n_clusters = static_cast<std::size_t>(next);
    return result;
}

std::vector<std::vector<std::string>> top_terms(const KMeansModel& model, std::span<const std::string> terms,
                                                std::size_t n) {
    if (model.centroids.cols() != terms.size()) {
        raise(ErrorCode::InvalidArgument, "centroid width does not match the vocabulary");
    }
    std::vector<std::vector<std::string>> out;
    for (std::size_t c = 0; c < model.centroids.rows(); ++c) {
        auto row = model.centroids.row(c);
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (row[j] > 0.0) idx.push_back(j);
        }
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (row[a] != row[b]) return row[a] > row[b];
            return terms[a] < terms[b];
        });
        if (idx.size() > n) idx.resize(n);
        std::vector<std::string> words;
        for (auto j : idx) words.push_back(terms[j]);
        out.push_back(std::move(words));
    }
    return out;
}

ClusterSizes cluster_sizes(std::span<const long long> labels) {
    std::map<long long, std::size_t> counts;
    ClusterSizes out;
    for (auto l : labels) {
        if (l < 0) ++out.noise;
        else ++counts[l];
    }
    for (const auto& [id, n] : counts) out.sizes.push_back(n);
    std::sort(out.sizes.begin(), out.sizes.end(), std::greater<>());
    return out;
}

ClusterSizes cluster_sizes(const DbscanResult& result) { return cluster_sizes(result.labels); }

ClusterSizes cluster_sizes(const KMeansModel& model) {
    std::vector<long long> labels(model.assignments.begin(), model.assignments.end());
    return cluster_sizes(labels);
}

void save_kmeans(const std::filesystem::path& stem, const KMeansModel& model) {
    io::write_f64_block(stem.string() + ".f64", model.centroids.values());
    nlohmann::ordered_json meta;
    meta["k"] = model.k;
    meta["features"] = model.centroids.cols();
    meta["seed"] = model.seed;
    meta["iterations"] = model.iterations;
    meta["sse"] = io::format_double(model.sse);
    std::vector<std::string> history;
    for (double v : model.sse_history) history.push_back(io::format_double(v));
    meta["sse_history"] = history;
    meta["assignments"] = model.assignments;
    meta["centroids"] = {{"file", stem.filename().string() + ".f64"},
                         {"dtype", "float64"},
                         {"byte_order", "little"},
                         {"layout", "row-major"}};
    io::write_text(stem.string() + ".json", meta.dump(2) + "\n");
}

KMeansModel load_kmeans(const std::filesystem::path& stem) {
    try {
        const auto meta = nlohmann::json::parse(io::read_text(stem.string() + ".json"));
        KMeansModel model;
        model.k = meta.at("k").get<std::size_t>();
        const auto features = meta.at("features").get<std::size_t>();
        model.seed = meta.at("seed").get<std::uint64_t>();
        model.iterations = meta.at("iterations").get<std::size_t>();
        io::parse_double(meta.at("sse").get<std::string>(), model.sse);
        for (const auto& v : meta.at("sse_history")) {
            double d = 0;
            io::parse_double(v.get<std::string>(), d);
            model.sse_history.push_back(d);
        }
        model.assignments = meta.at("assignments").get<std::vector<std::size_t>>();
        model.centroids = Matrix(model.k, features, io::read_f64_block(stem.string() + ".f64"));
        return model;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::MalformedValue, stem.string() + ".json: " + e.what());
    }
}

}  // namespace crimenews::cluster
