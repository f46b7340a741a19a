#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace crimenews::svg {

inline constexpr int kWidth = 800;
inline constexpr int kHeight = 600;

/// Categorical fills, indexed by group id modulo 16. Noise (negative ids) is
/// drawn in kNoiseColor.
inline constexpr std::array<std::string_view, 16> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39", "#7b4173", "#3182bd"};
inline constexpr std::string_view kNoiseColor = "#c7c7c7";

std::string_view color_for(long long group);

struct Point {
    double x = 0.0;
    double y = 0.0;
    long long group = 0;
};

/// One <circle> per point inside a fixed 800x600 viewBox.
std::string scatter(std::span<const Point> points, std::string_view title, std::string_view x_label,
                    std::string_view y_label);

/// Polyline with a circle per vertex; `highlight` marks one vertex in red.
std::string line(std::span<const double> xs, std::span<const double> ys, std::string_view title,
                 std::string_view x_label, std::string_view y_label, std::optional<std::size_t> highlight = {});

}  // namespace crimenews::svg
