#pragma once

// File formats: CSV series, binary PPM images, and the flattening of RGB
// images into univariate series (all R values, then G, then B).

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fabba/core_model.hpp"

namespace fabba {

// ---------------------------------------------------------------- CSV series

/// Parses one row of decimal numbers split on `delimiter`. Surrounding
/// whitespace is ignored; "nan" parses as NaN.
[[nodiscard]] std::vector<double> parse_number_row(std::string_view line, char delimiter);

/// One series per non-blank line, comma separated.
[[nodiscard]] std::vector<TimeSeries> parse_series_csv(std::string_view text);
[[nodiscard]] std::vector<TimeSeries> read_series_csv(const std::filesystem::path& path);

[[nodiscard]] std::string format_series_csv(const TimeSeries& series);
void write_series_csv(const std::filesystem::path& path, const std::vector<TimeSeries>& series);

[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// ---------------------------------------------------------------- images

/// Interleaved RGB bytes in row-major pixel order, as stored in a P6 file.
struct ImageTensor {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;  // size width * height * 3

    [[nodiscard]] std::uint8_t at(std::size_t row, std::size_t col, std::size_t channel) const {
        return pixels[(row * width + col) * 3 + channel];
    }
    void validate() const;

    friend bool operator==(const ImageTensor&, const ImageTensor&) = default;
};

/// Channel-planar series: every R value in row-major order, then G, then B.
[[nodiscard]] TimeSeries flatten_image(const ImageTensor& img);

/// Inverse of flatten_image. Accepts one trailing extra value (a polygonal
/// chain has N + 1 points) and drops it. Values are rounded and clamped to [0, 255].
[[nodiscard]] ImageTensor unflatten_image(const TimeSeries& series, std::size_t width, std::size_t height);

[[nodiscard]] ImageTensor parse_ppm(std::string_view bytes);
[[nodiscard]] std::string encode_ppm(const ImageTensor& img);
[[nodiscard]] ImageTensor read_ppm(const std::filesystem::path& path);
void write_ppm(const ImageTensor& img, const std::filesystem::path& path);

}  // namespace fabba
