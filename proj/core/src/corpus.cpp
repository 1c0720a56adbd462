#include <algorithm>
#include <cmath>

#include "fabba/bench.hpp"
#include "fabba/io.hpp"

namespace fabba {

namespace {

std::string_view trim_line(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

std::vector<CorpusEntry> parse_ucr_tsv(std::string_view text, const std::string& stem) {
    std::vector<CorpusEntry> out;
    std::size_t start = 0;
    std::size_t row = 0;
    while (start <= text.size()) {
        const std::size_t end = text.find('\n', start);
        const std::string_view line =
            trim_line(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (!line.empty()) {
            const std::size_t tab = line.find('\t');
            if (tab == std::string_view::npos) {
                throw Error(stem + ": row " + std::to_string(row) + " has no values");
            }
            std::vector<double> values = parse_number_row(line.substr(tab + 1), '\t');
            // Variable-length UCR sets pad rows with trailing NaN.
            while (!values.empty() && std::isnan(values.back())) values.pop_back();
            CorpusEntry entry;
            entry.id = stem + "/" + std::to_string(row);
            entry.label = std::string(trim_line(line.substr(0, tab)));
            entry.series = TimeSeries(std::move(values), entry.id);
            out.push_back(std::move(entry));
            ++row;
        }
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

}  // namespace

std::vector<CorpusEntry> load_corpus_file(const std::filesystem::path& file) {
    const std::string ext = file.extension().string();
    const std::string stem = file.stem().string();
    const std::string text = read_text_file(file);
    if (ext == ".tsv") {
        return parse_ucr_tsv(text, stem);
    }
    if (ext == ".csv") {
        std::vector<CorpusEntry> out;
        std::size_t row = 0;
        for (TimeSeries& s : parse_series_csv(text)) {
            CorpusEntry entry;
            entry.id = stem + "/" + std::to_string(row++);
            entry.series = TimeSeries(s.data(), entry.id);
            out.push_back(std::move(entry));
        }
        return out;
    }
    throw Error("unsupported corpus file '" + file.string() + "' (expected .tsv or .csv)");
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw Error("corpus directory '" + dir.string() + "' not found");
    }
    std::vector<std::filesystem::path> files;
    for (const auto& item : std::filesystem::directory_iterator(dir)) {
        const std::string ext = item.path().extension().string();
        if (item.is_regular_file() && (ext == ".tsv" || ext == ".csv")) files.push_back(item.path());
    }
    std::sort(files.begin(), files.end());

    std::vector<CorpusEntry> out;
    for (const auto& file : files) {
        auto entries = load_corpus_file(file);
        std::move(entries.begin(), entries.end(), std::back_inserter(out));
    }
    if (out.empty()) {
        throw Error("corpus directory '" + dir.string() + "' holds no series");
    }
    return out;
}

}  // namespace fabba
