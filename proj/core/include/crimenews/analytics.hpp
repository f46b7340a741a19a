#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crimenews/corpus.hpp"
#include "crimenews/crimemap.hpp"
#include "crimenews/ingest.hpp"
#include "crimenews/matrix.hpp"
#include "crimenews/stats.hpp"
#include "crimenews/textproc.hpp"

namespace crimenews::analytics {

struct Projection2D {
    Matrix coords;                          // n x dims
    std::vector<double> explained_variance; // per component, non-increasing
    Matrix components;                      // dims x features, orthonormal rows
    std::vector<double> mean;               // column means removed before projecting
};

/// Principal components of the column-centered rows by power iteration with
/// deflation; variance uses the n - 1 divisor. Each component is oriented so
/// that its largest-magnitude entry is positive.
/// Throws Error(InvalidArgument) for fewer than two rows or dims above the
/// feature count, Error(DegenerateData) when every column is constant.
Projection2D pca_project(const Matrix& data, std::size_t dims = 2);

/// coords * components + mean.
Matrix pca_reconstruct(const Projection2D& projection);

/// Longitude/latitude box treated as the contiguous United States.
struct GeoBox {
    double min_long = -125.0;
    double max_long = -66.0;
    double min_lat = 24.0;
    double max_lat = 50.0;
};

struct GeoPoint {
    std::size_t record = 0;  // index into the dataset
    double lon = 0.0;
    double lat = 0.0;
    crimemap::CanonicalCrimeType type = crimemap::CanonicalCrimeType::Other;
};

struct GeoPoints {
    std::vector<GeoPoint> main;
    std::vector<GeoPoint> outliers;
    std::size_t skipped = 0;  // rows without both coordinates
};

GeoPoints geo_points(const ingest::MergedCrimeDataset& dataset, std::span<const crimemap::CanonicalCrimeType> types,
                     const GeoBox& box = {});
GeoPoints geo_points(const ingest::MergedCrimeDataset& dataset, const crimemap::CrimeTypeMapper& mapper,
                     const GeoBox& box = {});

/// Top-n stopword-filtered terms over title and content, by count
/// descending, ties lexicographic.
std::vector<std::pair<std::string, std::size_t>> word_frequencies(std::span<const corpus::Article> articles,
                                                                  const textproc::Stoplist& stoplist, std::size_t n);

}  // namespace crimenews::analytics
