#pragma once

// Evaluation protocol: tolerance escalation, same-n-same-k comparison against
// ABBA / SAX / 1d-SAX, parameter sweeps and Dolan-More performance profiles.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fabba/aggregation.hpp"
#include "fabba/core_model.hpp"
#include "fabba/metrics.hpp"

namespace fabba {

// ---------------------------------------------------------------- profiles

/// scores[i][j]: solver i on problem j, smaller is better.
struct ProfileTable {
    std::vector<std::string> solvers;
    std::vector<std::string> problems;
    std::vector<std::vector<double>> scores;
    std::set<std::pair<std::size_t, std::size_t>> failures;  // (solver, problem)

    void validate() const;
};

struct ProfileCurves {
    std::vector<double> thetas;
    std::vector<std::string> solvers;
    std::vector<std::vector<double>> rho;  // [solver][theta]
};

/// rho_i(theta) = |{j : r_ij < theta}| / |P| with r_ij = s_ij / min_i s_ij.
/// Failed runs get r_ij = +inf. When the best score is 0, zero scores get
/// ratio 1 and all others +inf.
[[nodiscard]] ProfileCurves performance_profile(const ProfileTable& table, std::span<const double> thetas);

/// `points` values evenly spaced on [1, theta_max].
[[nodiscard]] std::vector<double> theta_grid(double theta_max, std::size_t points);

// ---------------------------------------------------------------- escalation

struct EscalationConfig {
    double start = 0.05;
    double step = 0.05;
    double cap = 0.5;
    double target_rate = 0.2;
};

struct Escalation {
    double tol = 0.0;
    std::vector<Piece> pieces;
};

/// Smallest tol in start, start + step, ..., cap with n / N <= target_rate;
/// nullopt when the series stays too noisy at the cap.
[[nodiscard]] std::optional<Escalation> escalate_tolerance(const TimeSeries& series,
                                                           const EscalationConfig& cfg = {});

// ---------------------------------------------------------------- corpus

struct CorpusEntry {
    std::string id;
    std::optional<std::string> label;
    TimeSeries series;
};

/// Reads every *.tsv (UCR layout: label, then values) and *.csv (values only)
/// file of `dir` in filename order. Ids are "<file stem>/<row>".
[[nodiscard]] std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

/// One file; the format follows the extension.
[[nodiscard]] std::vector<CorpusEntry> load_corpus_file(const std::filesystem::path& file);

// ---------------------------------------------------------------- comparison

inline constexpr const char* kMethodNames[] = {"fABBA", "ABBA", "SAX", "1d-SAX"};

struct ComparisonConfig {
    double alpha = 0.1;
    double scl = 1.0;
    SortKind sorting = SortKind::norm_2;
    std::uint64_t seed = 0;
    bool normalize = true;
    std::size_t jobs = 1;
    EscalationConfig escalation;
};

struct MethodReport {
    std::string series_id;
    std::string method;
    std::size_t n = 0;
    std::size_t k = 0;
    double tol = 0.0;
    double alpha = 0.0;
    ReconstructionReport report;
};

struct ComparisonResult {
    std::vector<MethodReport> rows;  // series in corpus order, methods in kMethodNames order
    std::vector<std::string> excluded;
};

[[nodiscard]] ComparisonResult run_comparison(std::span<const CorpusEntry> corpus, const ComparisonConfig& cfg);

enum class ErrorMetric { euclid, dtw, euclid_diff, dtw_diff };
[[nodiscard]] std::string_view to_string(ErrorMetric metric);

/// Methods x series table of one error metric from a comparison run.
[[nodiscard]] ProfileTable profile_table(const ComparisonResult& result, ErrorMetric metric);

// ---------------------------------------------------------------- sweep

struct SweepConfig {
    double scl = 1.0;
    bool normalize = true;
    std::size_t jobs = 1;
    EscalationConfig escalation;
};

struct SweepRow {
    double alpha = 0.0;
    SortKind sorting = SortKind::norm_2;
    double mean_tau_d = 0.0;
    double mean_euclid = 0.0;
    double mean_dtw = 0.0;
    double mean_runtime_ms = 0.0;
    double mean_dist = 0.0;
    double mean_k = 0.0;
    std::size_t series = 0;
};

[[nodiscard]] std::vector<SweepRow> parameter_sweep(std::span<const CorpusEntry> corpus, std::span<const double> alphas,
                                                    std::span<const SortKind> sortings, const SweepConfig& cfg = {});

// ---------------------------------------------------------------- CSV output

void write_reports_csv(std::ostream& out, std::span<const MethodReport> rows);
void write_profiles_csv(std::ostream& out, const ProfileCurves& curves);
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Shortest round-trip decimal form of a double.
[[nodiscard]] std::string format_number(double value);

/// Runs body(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

}  // namespace fabba
