#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crimenews/matrix.hpp"

namespace crimenews::cluster {

struct KMeansParams {
    std::size_t k = 8;
    std::uint64_t seed = 0;
    std::size_t max_iter = 300;
    double tol = 1e-6;  // stop when no centroid moves farther than this
};

struct KMeansModel {
    std::size_t k = 0;
    Matrix centroids;                      // k x features
    std::vector<std::size_t> assignments;  // per row, in [0, k)
    double sse = 0.0;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
    std::vector<double> sse_history;  // SSE after each assign + update pair

    friend bool operator==(const KMeansModel&, const KMeansModel&) = default;
};

/// Lloyd's algorithm from k-means++ seeds. Empty clusters are refilled with
/// the point farthest from its centroid. Every final assignment is the
/// nearest centroid, ties to the lowest id.
/// Throws Error(KTooLarge) when k exceeds the row count.
KMeansModel kmeans_fit(const Matrix& points, const KMeansParams& params);

/// Lloyd's algorithm from the given initial centroids.
KMeansModel kmeans_fit_from(const Matrix& points, Matrix initial_centroids, const KMeansParams& params);

/// Sum of squared distances from each row to its assigned centroid.
double compute_sse(const Matrix& points, const Matrix& centroids, std::span<const std::size_t> assignments);

/// Nearest centroid per row, ties to the lowest id.
std::vector<std::size_t> nearest_centroids(const Matrix& points, const Matrix& centroids);

struct SweepPoint {
    std::size_t k = 0;
    double sse = 0.0;
    std::size_t iterations = 0;
};

/// Fits each k in turn. Every k after the first starts from the previous
/// centroids plus, one at a time, the row farthest from its nearest centroid,
/// so SSE never increases along the sweep. k_values must be strictly
/// increasing.
std::vector<SweepPoint> sse_sweep(const Matrix& points, std::span<const std::size_t> k_values, std::uint64_t seed,
                                  std::size_t max_iter = 300, double tol = 1e-6);

/// Index of the sweep entry with the largest second difference of SSE, or
/// nullopt with fewer than three entries.
std::optional<std::size_t> elbow_index(std::span<const SweepPoint> sweep);

struct DbscanResult {
    std::vector<long long> labels;  // cluster id or -1 for noise
    double eps = 1.0;
    std::size_t min_samples = 10;
    std::size_t n_clusters = 0;
    std::vector<bool> core;
};

/// Density clustering with Euclidean distance. A core point has at least
/// min_samples points (itself included) within eps. Clusters grow from core
/// points in ascending index order; a border point joins the first cluster
/// that reaches it.
DbscanResult dbscan_fit(const Matrix& points, double eps = 1.0, std::size_t min_samples = 10);

/// Highest-weight terms of each centroid, descending, ties lexicographic.
/// Zero-weight terms are never listed.
std::vector<std::vector<std::string>> top_terms(const KMeansModel& model, std::span<const std::string> terms,
                                                std::size_t n = 10);

struct ClusterSizes {
    std::vector<std::size_t> sizes;  // descending
    std::size_t noise = 0;
};

ClusterSizes cluster_sizes(std::span<const long long> labels);
ClusterSizes cluster_sizes(const DbscanResult& result);
ClusterSizes cluster_sizes(const KMeansModel& model);

/// JSON metadata at `stem`.json plus the centroid block at `stem`.f64.
void save_kmeans(const std::filesystem::path& stem, const KMeansModel& model);
KMeansModel load_kmeans(const std::filesystem::path& stem);

}  // namespace crimenews::cluster
