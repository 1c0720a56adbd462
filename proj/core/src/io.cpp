#include "fabba/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace fabba {

namespace {

std::string_view trim(std::string_view s) {
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view field) {
    field = trim(field);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        throw Error("invalid number '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

// ---------------------------------------------------------------- CSV series

std::vector<double> parse_number_row(std::string_view line, char delimiter) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(delimiter, start);
        const std::string_view field = line.substr(start, end == std::string_view::npos ? end : end - start);
        out.push_back(parse_number(field));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

std::vector<TimeSeries> parse_series_csv(std::string_view text) {
    std::vector<TimeSeries> out;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        const std::string_view line =
            trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        ++line_no;
        if (!line.empty()) {
            try {
                out.emplace_back(parse_number_row(line, ','));
            } catch (const Error& e) {
                throw Error("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

std::vector<TimeSeries> read_series_csv(const std::filesystem::path& path) {
    return parse_series_csv(read_text_file(path));
}

std::string format_series_csv(const TimeSeries& series) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (i > 0) out.push_back(',');
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), series[i]);
        out.append(buf, ptr);
    }
    out.push_back('\n');
    return out;
}

void write_series_csv(const std::filesystem::path& path, const std::vector<TimeSeries>& series) {
    std::string text;
    for (const TimeSeries& s : series) text += format_series_csv(s);
    write_text_file(path, text);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw Error("write failed for '" + path.string() + "'");
    }
}

// ---------------------------------------------------------------- images

void ImageTensor::validate() const {
    if (width < 1 || height < 1) throw Error("image dimensions must be >= 1");
    if (pixels.size() != width * height * 3) throw Error("pixel count does not match width * height * 3");
}

TimeSeries flatten_image(const ImageTensor& img) {
    img.validate();
    const std::size_t plane = img.width * img.height;
    std::vector<double> out(plane * 3);
    for (std::size_t p = 0; p < plane; ++p) {
        for (std::size_t c = 0; c < 3; ++c) {
            out[c * plane + p] = static_cast<double>(img.pixels[p * 3 + c]);
        }
    }
    return TimeSeries(std::move(out));
}

ImageTensor unflatten_image(const TimeSeries& series, std::size_t width, std::size_t height) {
    const std::size_t plane = width * height;
    if (width < 1 || height < 1) throw Error("image dimensions must be >= 1");
    if (series.size() != plane * 3 && series.size() != plane * 3 + 1) {
        throw Error("series length " + std::to_string(series.size()) + " does not match a " + std::to_string(width) +
                    "x" + std::to_string(height) + " RGB image");
    }
    ImageTensor img;
    img.width = width;
    img.height = height;
    img.pixels.resize(plane * 3);
    for (std::size_t c = 0; c < 3; ++c) {
        for (std::size_t p = 0; p < plane; ++p) {
            const double v = std::clamp(std::round(series[c * plane + p]), 0.0, 255.0);
            img.pixels[p * 3 + c] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

ImageTensor parse_ppm(std::string_view bytes) {
    std::size_t pos = 0;
    auto skip_space_and_comments = [&] {
        while (pos < bytes.size()) {
            const char c = bytes[pos];
            if (c == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    };
    auto read_uint = [&]() -> std::size_t {
        skip_space_and_comments();
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(bytes.data() + pos, bytes.data() + bytes.size(), value);
        if (ec != std::errc() || ptr == bytes.data() + pos) {
            throw Error("malformed PPM header");
        }
        pos = static_cast<std::size_t>(ptr - bytes.data());
        return value;
    };

    if (bytes.size() < 2 || bytes[0] != 'P') {
        throw Error("malformed PPM header");
    }
    if (bytes[1] != '6') {
        throw Error("unsupported PPM variant");
    }
    pos = 2;
    ImageTensor img;
    img.width = read_uint();
    img.height = read_uint();
    const std::size_t maxval = read_uint();
    if (img.width == 0 || img.height == 0) {
        throw Error("malformed PPM header");
    }
    if (maxval != 255) {
        throw Error("unsupported maxval");
    }
    if (pos >= bytes.size() || !(bytes[pos] == ' ' || bytes[pos] == '\t' || bytes[pos] == '\r' || bytes[pos] == '\n')) {
        throw Error("malformed PPM header");
    }
    ++pos;

    const std::size_t needed = img.width * img.height * 3;
    if (bytes.size() - pos < needed) {
        throw Error("truncated PPM data");
    }
    img.pixels.assign(reinterpret_cast<const std::uint8_t*>(bytes.data() + pos),
                      reinterpret_cast<const std::uint8_t*>(bytes.data() + pos + needed));
    return img;
}

std::string encode_ppm(const ImageTensor& img) {
    img.validate();
    std::string out = "P6\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

ImageTensor read_ppm(const std::filesystem::path& path) { return parse_ppm(read_text_file(path)); }

void write_ppm(const ImageTensor& img, const std::filesystem::path& path) { write_text_file(path, encode_ppm(img)); }

}  // namespace fabba
