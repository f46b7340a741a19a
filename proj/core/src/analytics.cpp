#include "crimenews/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "crimenews/error.hpp"

namespace crimenews::analytics {

double percentile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) raise(ErrorCode::EmptyInput, "percentile of an empty sequence");
    if (!(p >= 0.0 && p <= 1.0)) raise(ErrorCode::InvalidArgument, "percentile must lie in [0, 1]");
    const double rank = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(rank));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = rank - static_cast<double>(lo);
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

SummaryStats summary_stats(std::span<const double> values) {
    if (values.empty()) raise(ErrorCode::EmptyInput, "summary statistics of an empty sequence");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double sum = 0.0;
    for (double v : sorted) sum += v;
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : sorted) ss += (v - mean) * (v - mean);

    SummaryStats s;
    s.mean = mean;
    s.std = std::sqrt(ss / n);
    s.p25 = percentile_sorted(sorted, 0.25);
    s.p50 = percentile_sorted(sorted, 0.50);
    s.p75 = percentile_sorted(sorted, 0.75);
    s.p100 = sorted.back();
    return s;
}

namespace {

using Square = std::vector<double>;  // p x p row-major

Square multiply(const Square& a, const Square& b, std::size_t p) {
    Square out(p * p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t k = 0; k < p; ++k) {
            const double aik = a[i * p + k];
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < p; ++j) out[i * p + j] += aik * b[k * p + j];
        }
    }
    return out;
}

double frobenius(const Square& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

std::vector<double> apply(const Square& a, const std::vector<double>& x, std::size_t p) {
    std::vector<double> y(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p; ++j) s += a[i * p + j] * x[j];
        y[i] = s;
    }
    return y;
}

bool normalize(std::vector<double>& v) {
    const double n = l2_norm(v);
    if (!(n > 0.0)) return false;
    for (double& x : v) x /= n;
    return true;
}

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
    for (const auto& b : basis) {
        const double d = dot(v, b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * b[i];
    }
}

// Unit vector orthogonal to `basis`, taken from the first standard basis
// vector with a usable residual.
std::vector<double> orthogonal_fallback(const std::vector<std::vector<double>>& basis, std::size_t p) {
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<double> e(p, 0.0);
        e[i] = 1.0;
        orthogonalize(e, basis);
        orthogonalize(e, basis);
        if (l2_norm(e) > 1e-6 && normalize(e)) return e;
    }
    raise(ErrorCode::DegenerateData, "no orthogonal direction left");
}

// Dominant eigenvector of the symmetric PSD matrix `a` by the power method.
// Repeated squaring first pulls the iterate toward the dominant direction,
// then plain iterations on `a` polish it.
std::optional<std::vector<double>> dominant_eigenvector(const Square& a, std::size_t p, double scale) {
    const double norm_a = frobenius(a);
    if (!(norm_a > 1e-12 * scale)) return std::nullopt;

    std::vector<double> v;
    if (p <= 256) {
        Square b = a;
        for (double& x : b) x /= norm_a;
        for (int s = 0; s < 48; ++s) {
            Square next = multiply(b, b, p);
            const double n = frobenius(next);
            if (!(n > 0.0)) break;
            for (double& x : next) x /= n;
            const double change = [&] {
                double d = 0.0;
                for (std::size_t i = 0; i < b.size(); ++i) d = std::max(d, std::abs(next[i] - b[i]));
                return d;
            }();
            b = std::move(next);
            if (change < 1e-15) break;
        }
        // b is close to v v^T; its largest column is parallel to v.
        std::size_t best = 0;
        double best_norm = -1.0;
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < p; ++i) s += b[i * p + j] * b[i * p + j];
            if (s > best_norm) {
                best_norm = s;
                best = j;
            }
        }
        v.resize(p);
        for (std::size_t i = 0; i < p; ++i) v[i] = b[i * p + best];
    } else {
        v.assign(p, 1.0);
        for (std::size_t i = 0; i < p; ++i) v[i] += 1e-3 * static_cast<double>(i % 7);
    }
    if (!normalize(v)) return std::nullopt;

    for (int it = 0; it < 100000; ++it) {
        auto w = apply(a, v, p);
        if (!normalize(w)) return std::nullopt;
        if (dot(w, v) < 0.0) {
            for (double& x : w) x = -x;
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < p; ++i) delta = std::max(delta, std::abs(w[i] - v[i]));
        v = std::move(w);
        if (delta < 1e-15) break;
    }
    return v;
}

void orient(std::vector<double>& v) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[arg])) arg = i;
    }
    if (v[arg] < 0.0) {
        for (double& x : v) x = -x;
    }
}

}  // namespace

Projection2D pca_project(const Matrix& data, std::size_t dims) {
    const std::size_t n = data.rows();
    const std::size_t p = data.cols();
    if (n < 2) raise(ErrorCode::InvalidArgument, "PCA needs at least two rows");
    if (dims < 1 || dims > p) raise(ErrorCode::InvalidArgument, "dims must lie in [1, feature count]");

    Projection2D out;
    out.mean.assign(p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < p; ++c) out.mean[c] += data(r, c);
    }
    for (double& m : out.mean) m /= static_cast<double>(n);

    Matrix centered(n, p);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < p; ++c) centered(r, c) = data(r, c) - out.mean[c];
    }

    Square cov(p * p, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const auto row = centered.row(r);
        for (std::size_t i = 0; i < p; ++i) {
            if (row[i] == 0.0) continue;
            for (std::size_t j = i; j < p; ++j) cov[i * p + j] += row[i] * row[j];
        }
    }
    const double denom = static_cast<double>(n - 1);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            cov[i * p + j] /= denom;
            cov[j * p + i] = cov[i * p + j];
        }
    }
    double trace = 0.0;
    for (std::size_t i = 0; i < p; ++i) trace += cov[i * p + i];
    if (!(trace > 0.0)) raise(ErrorCode::DegenerateData, "total variance is zero");

    std::vector<std::vector<double>> basis;
    Square deflated = cov;
    for (std::size_t d = 0; d < dims; ++d) {
        auto v = dominant_eigenvector(deflated, p, trace);
        std::vector<double> comp;
        if (v) {
            comp = std::move(*v);
            orthogonalize(comp, basis);
            if (!normalize(comp)) comp = orthogonal_fallback(basis, p);
        } else {
            comp = orthogonal_fallback(basis, p);
        }
        orient(comp);
        const auto cv = apply(cov, comp, p);
        const double lambda = dot(comp, cv);
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j) deflated[i * p + j] -= lambda * comp[i] * comp[j];
        }
        basis.push_back(std::move(comp));
    }

    out.components = Matrix(dims, p);
    for (std::size_t d = 0; d < dims; ++d) {
        for (std::size_t c = 0; c < p; ++c) out.components(d, c) = basis[d][c];
    }
    out.coords = Matrix(n, dims);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t d = 0; d < dims; ++d) out.coords(r, d) = dot(centered.row(r), basis[d]);
    }
    out.explained_variance.assign(dims, 0.0);
    for (std::size_t d = 0; d < dims; ++d) {
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += out.coords(r, d) * out.coords(r, d);
        out.explained_variance[d] = s / denom;
    }
    return out;
}

Matrix pca_reconstruct(const Projection2D& projection) {
    const std::size_t n = projection.coords.rows();
    const std::size_t dims = projection.components.rows();
    const std::size_t p = projection.components.cols();
    Matrix out(n, p);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < p; ++c) {
            double s = projection.mean[c];
            for (std::size_t d = 0; d < dims; ++d) s += projection.coords(r, d) * projection.components(d, c);
            out(r, c) = s;
        }
    }
    return out;
}

GeoPoints geo_points(const ingest::MergedCrimeDataset& dataset, std::span<const crimemap::CanonicalCrimeType> types,
                     const GeoBox& box) {
    if (types.size() != dataset.records.size()) {
        raise(ErrorCode::InvalidArgument, "one crime type per record is required");
    }
    GeoPoints out;
    for (std::size_t i = 0; i < dataset.records.size(); ++i) {
        const auto& r = dataset.records[i];
        if (!r.lat || !r.lon) {
            ++out.skipped;
            continue;
        }
        GeoPoint pt{i, *r.lon, *r.lat, types[i]};
        const bool inside = pt.lon >= box.min_long && pt.lon <= box.max_long && pt.lat >= box.min_lat &&
                            pt.lat <= box.max_lat;
        (inside ? out.main : out.outliers).push_back(pt);
    }
    return out;
}

GeoPoints geo_points(const ingest::MergedCrimeDataset& dataset, const crimemap::CrimeTypeMapper& mapper,
                     const GeoBox& box) {
    std::vector<crimemap::CanonicalCrimeType> types;
    types.reserve(dataset.records.size());
    for (const auto& r : dataset.records) types.push_back(mapper.canonicalize(r.crime_type));
    return geo_points(dataset, types, box);
}

std::vector<std::pair<std::string, std::size_t>> word_frequencies(std::span<const corpus::Article> articles,
                                                                  const textproc::Stoplist& stoplist, std::size_t n) {
    if (n < 1) raise(ErrorCode::InvalidArgument, "n must be at least 1");
    std::map<std::string, std::size_t> counts;
    for (const auto& a : articles) {
        for (auto& t : textproc::remove_stopwords(textproc::terms(corpus::searchable_text(a)), stoplist)) {
            ++counts[std::move(t)];
        }
    }
    std::vector<std::pair<std::string, std::size_t>> out(counts.begin(), counts.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    if (out.size() > n) out.resize(n);
    return out;
}

}  // namespace crimenews::analytics
