#include "fabba/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "fabba/baselines.hpp"
#include "fabba/compression.hpp"
#include "fabba/pipeline.hpp"

namespace fabba {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point from) {
    return std::chrono::duration<double, std::milli>(Clock::now() - from).count();
}

struct PreparedSeries {
    TimeSeries working;
    std::int64_t big_n = 0;
    Escalation escalation;
};

std::optional<PreparedSeries> prepare_series(const TimeSeries& series, bool normalize, const EscalationConfig& esc) {
    PreparedSeries out;
    out.working = normalize ? znormalize(series).series : series;
    auto found = escalate_tolerance(out.working, esc);
    if (!found) return std::nullopt;
    out.escalation = std::move(*found);
    out.big_n = static_cast<std::int64_t>(out.working.size()) - 1;
    return out;
}

TimeSeries reconstruct(const SymbolicSeries& symbolic, const PreparedSeries& prep) {
    FabbaModel model;
    model.symbolic = symbolic;
    model.symbolic.scaling.start_value = prep.working.front();
    model.symbolic.scaling.normalize = false;
    model.symbolic.scaling.mean = 0.0;
    model.symbolic.scaling.std = 1.0;
    model.pieces_count = symbolic.symbols.size();
    model.series_len = prep.big_n;
    return fabba_inverse(model);
}

std::vector<MethodReport> compare_one(const CorpusEntry& entry, const PreparedSeries& prep,
                                      const ComparisonConfig& cfg) {
    const auto& pieces = prep.escalation.pieces;
    const std::size_t n = pieces.size();
    const auto big_n = static_cast<std::size_t>(prep.big_n);

    std::vector<MethodReport> rows;
    auto emit = [&](const char* method, std::size_t k, const TimeSeries& recon, double runtime_ms,
                    std::uint64_t dist_count) {
        MethodReport row;
        row.series_id = entry.id;
        row.method = method;
        row.n = n;
        row.k = k;
        row.tol = prep.escalation.tol;
        row.alpha = cfg.alpha;
        row.report = score_reconstruction(prep.working, recon);
        std::tie(row.report.tau_c, row.report.tau_d) = rates(n, big_n, k);
        row.report.n = n;
        row.report.k = k;
        row.report.runtime_ms = runtime_ms;
        row.report.dist_count = dist_count;
        rows.push_back(std::move(row));
    };

    auto start = Clock::now();
    Digitization fabba = digitize(pieces, cfg.alpha, cfg.scl, cfg.sorting);
    double runtime = elapsed_ms(start);
    const std::size_t k = fabba.symbolic.codebook.size();
    emit(kMethodNames[0], k, reconstruct(fabba.symbolic, prep), runtime, fabba.dist_count);

    start = Clock::now();
    AbbaDigitization abba = abba_digitize_fixed_k(pieces, k, cfg.scl, cfg.seed);
    SymbolicSeries abba_symbolic = symbolize(pieces, abba.labels, abba.k, abba.meta);
    runtime = elapsed_ms(start);
    emit(kMethodNames[1], k, reconstruct(abba_symbolic, prep), runtime, abba.dist_count);

    // SAX needs at least two cells and 1d-SAX a budget of four.
    SaxConfig sax;
    sax.n_segments = n;
    sax.alphabet_size = std::max<std::size_t>(k, 2);
    start = Clock::now();
    SaxWord word = sax_transform(prep.working, sax);
    runtime = elapsed_ms(start);
    emit(kMethodNames[2], k, sax_inverse(word.symbols, sax, word.mean, word.std, word.length), runtime, 0);

    SaxConfig oned;
    oned.n_segments = n;
    std::tie(oned.mean_alphabet, oned.slope_alphabet) = split_symbol_budget(std::max<std::size_t>(k, 4));
    start = Clock::now();
    OneDSaxWord oned_word = onedsax_transform(prep.working, oned);
    runtime = elapsed_ms(start);
    emit(kMethodNames[3], k, onedsax_inverse(oned_word.symbols, oned, oned_word.mean, oned_word.std, oned_word.length),
         runtime, 0);
    return rows;
}

void write_field(std::ostream& out, const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        out << text;
        return;
    }
    out << '"';
    for (char c : text) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace

// ---------------------------------------------------------------- profiles

void ProfileTable::validate() const {
    if (solvers.empty() || problems.empty()) throw Error("profile table needs solvers and problems");
    if (scores.size() != solvers.size()) throw Error("profile table: one score row per solver");
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i].size() != problems.size()) throw Error("profile table: one score per problem");
        for (std::size_t j = 0; j < problems.size(); ++j) {
            if (failures.contains({i, j})) continue;
            if (!std::isfinite(scores[i][j]) || scores[i][j] < 0.0) {
                throw Error("profile table: scores must be finite and >= 0");
            }
        }
    }
}

ProfileCurves performance_profile(const ProfileTable& table, std::span<const double> thetas) {
    table.validate();
    for (double t : thetas) {
        if (!(t >= 1.0)) throw Error("theta must be >= 1");
    }
    const std::size_t solvers = table.solvers.size();
    const std::size_t problems = table.problems.size();
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::vector<std::vector<double>> ratio(solvers, std::vector<double>(problems, inf));
    for (std::size_t j = 0; j < problems; ++j) {
        double best = inf;
        for (std::size_t i = 0; i < solvers; ++i) {
            if (!table.failures.contains({i, j})) best = std::min(best, table.scores[i][j]);
        }
        if (best == inf) {
            throw Error("every solver failed on problem '" + table.problems[j] + "'");
        }
        for (std::size_t i = 0; i < solvers; ++i) {
            if (table.failures.contains({i, j})) continue;
            const double s = table.scores[i][j];
            if (best == 0.0) {
                ratio[i][j] = s == 0.0 ? 1.0 : inf;
            } else {
                ratio[i][j] = s / best;
            }
        }
    }

    ProfileCurves curves;
    curves.thetas.assign(thetas.begin(), thetas.end());
    curves.solvers = table.solvers;
    curves.rho.assign(solvers, std::vector<double>(thetas.size(), 0.0));
    for (std::size_t i = 0; i < solvers; ++i) {
        for (std::size_t t = 0; t < thetas.size(); ++t) {
            std::size_t below = 0;
            for (std::size_t j = 0; j < problems; ++j) {
                if (ratio[i][j] < thetas[t]) ++below;
            }
            curves.rho[i][t] = static_cast<double>(below) / static_cast<double>(problems);
        }
    }
    return curves;
}

std::vector<double> theta_grid(double theta_max, std::size_t points) {
    if (!(theta_max >= 1.0) || points < 2) throw Error("theta grid needs theta_max >= 1 and >= 2 points");
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = 1.0 + (theta_max - 1.0) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return out;
}

// ---------------------------------------------------------------- escalation

std::optional<Escalation> escalate_tolerance(const TimeSeries& series, const EscalationConfig& cfg) {
    if (series.size() < 2) {
        throw Error("series too short");
    }
    if (!(cfg.start > 0.0) || !(cfg.step > 0.0)) throw Error("escalation start and step must be > 0");
    const double big_n = static_cast<double>(series.size() - 1);
    for (std::size_t m = 0;; ++m) {
        const double tol = cfg.start + static_cast<double>(m) * cfg.step;
        if (tol > cfg.cap * (1.0 + 1e-12)) break;
        std::vector<Piece> pieces = compress(series, CompressionConfig{tol, std::nullopt});
        if (static_cast<double>(pieces.size()) / big_n <= cfg.target_rate) {
            return Escalation{tol, std::move(pieces)};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- comparison

ComparisonResult run_comparison(std::span<const CorpusEntry> corpus, const ComparisonConfig& cfg) {
    if (corpus.empty()) {
        throw Error("empty corpus");
    }
    std::vector<std::optional<std::vector<MethodReport>>> per_series(corpus.size());
    parallel_for(corpus.size(), cfg.jobs, [&](std::size_t i) {
        auto prep = prepare_series(corpus[i].series, cfg.normalize, cfg.escalation);
        if (prep) per_series[i] = compare_one(corpus[i], *prep, cfg);
    });

    ComparisonResult result;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!per_series[i]) {
            result.excluded.push_back(corpus[i].id);
            continue;
        }
        const auto& rows = *per_series[i];
        for (const MethodReport& row : rows) {
            if (row.n != rows.front().n || row.k != rows.front().k) {
                throw Error("comparison rows disagree on (n, k) for " + corpus[i].id);
            }
        }
        result.rows.insert(result.rows.end(), rows.begin(), rows.end());
    }
    return result;
}

std::string_view to_string(ErrorMetric metric) {
    switch (metric) {
        case ErrorMetric::euclid: return "euclid";
        case ErrorMetric::dtw: return "dtw";
        case ErrorMetric::euclid_diff: return "euclid_diff";
        case ErrorMetric::dtw_diff: return "dtw_diff";
    }
    return "?";
}

ProfileTable profile_table(const ComparisonResult& result, ErrorMetric metric) {
    ProfileTable table;
    for (const char* name : kMethodNames) table.solvers.emplace_back(name);
    table.scores.assign(table.solvers.size(), {});

    for (const MethodReport& row : result.rows) {
        if (table.problems.empty() || table.problems.back() != row.series_id) {
            table.problems.push_back(row.series_id);
        }
        const auto solver = static_cast<std::size_t>(
            std::find(table.solvers.begin(), table.solvers.end(), row.method) - table.solvers.begin());
        if (solver == table.solvers.size()) throw Error("unknown method " + row.method);
        double value = 0.0;
        switch (metric) {
            case ErrorMetric::euclid: value = row.report.euclid; break;
            case ErrorMetric::dtw: value = row.report.dtw; break;
            case ErrorMetric::euclid_diff: value = row.report.euclid_diff; break;
            case ErrorMetric::dtw_diff: value = row.report.dtw_diff; break;
        }
        table.scores[solver].push_back(value);
    }
    for (std::size_t i = 0; i < table.scores.size(); ++i) {
        if (table.scores[i].size() != table.problems.size()) {
            throw Error("comparison result is missing rows for a method");
        }
        for (std::size_t j = 0; j < table.problems.size(); ++j) {
            if (!std::isfinite(table.scores[i][j])) table.failures.insert({i, j});
        }
    }
    return table;
}

// ---------------------------------------------------------------- sweep

std::vector<SweepRow> parameter_sweep(std::span<const CorpusEntry> corpus, std::span<const double> alphas,
                                      std::span<const SortKind> sortings, const SweepConfig& cfg) {
    if (corpus.empty()) throw Error("empty corpus");
    if (alphas.empty() || sortings.empty()) throw Error("sweep needs at least one alpha and one sorting");

    const std::size_t combos = alphas.size() * sortings.size();
    struct Cell {
        double tau_d, euclid, dtw, runtime_ms, dist, k;
    };
    std::vector<std::optional<std::vector<Cell>>> per_series(corpus.size());

    parallel_for(corpus.size(), cfg.jobs, [&](std::size_t i) {
        auto prep = prepare_series(corpus[i].series, cfg.normalize, cfg.escalation);
        if (!prep) return;
        const auto& pieces = prep->escalation.pieces;
        std::vector<Cell> cells;
        cells.reserve(combos);
        for (SortKind sorting : sortings) {
            for (double alpha : alphas) {
                const auto start = Clock::now();
                Digitization dg = digitize(pieces, alpha, cfg.scl, sorting);
                const double runtime = elapsed_ms(start);
                const TimeSeries recon = reconstruct(dg.symbolic, *prep);
                const auto k = static_cast<double>(dg.symbolic.codebook.size());
                cells.push_back({k / static_cast<double>(pieces.size()), euclid(prep->working, recon),
                                 dtw(prep->working, recon), runtime, static_cast<double>(dg.dist_count), k});
            }
        }
        per_series[i] = std::move(cells);
    });

    std::vector<SweepRow> rows;
    rows.reserve(combos);
    for (std::size_t s = 0; s < sortings.size(); ++s) {
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            SweepRow row;
            row.alpha = alphas[a];
            row.sorting = sortings[s];
            const std::size_t c = s * alphas.size() + a;
            for (const auto& cells : per_series) {
                if (!cells) continue;
                const Cell& cell = (*cells)[c];
                row.mean_tau_d += cell.tau_d;
                row.mean_euclid += cell.euclid;
                row.mean_dtw += cell.dtw;
                row.mean_runtime_ms += cell.runtime_ms;
                row.mean_dist += cell.dist;
                row.mean_k += cell.k;
                ++row.series;
            }
            if (row.series > 0) {
                const double cnt = static_cast<double>(row.series);
                row.mean_tau_d /= cnt;
                row.mean_euclid /= cnt;
                row.mean_dtw /= cnt;
                row.mean_runtime_ms /= cnt;
                row.mean_dist /= cnt;
                row.mean_k /= cnt;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

// ---------------------------------------------------------------- CSV output

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

void write_reports_csv(std::ostream& out, std::span<const MethodReport> rows) {
    out << "series_id,method,n,k,tol,alpha,euclid,dtw,euclid_diff,dtw_diff,runtime_ms,dist_count\n";
    for (const MethodReport& r : rows) {
        write_field(out, r.series_id);
        out << ',' << r.method << ',' << r.n << ',' << r.k << ',' << format_number(r.tol) << ','
            << format_number(r.alpha) << ',' << format_number(r.report.euclid) << ',' << format_number(r.report.dtw)
            << ',' << format_number(r.report.euclid_diff) << ',' << format_number(r.report.dtw_diff) << ','
            << format_number(r.report.runtime_ms) << ',' << r.report.dist_count << '\n';
    }
}

void write_profiles_csv(std::ostream& out, const ProfileCurves& curves) {
    out << "theta,solver,rho\n";
    for (std::size_t i = 0; i < curves.solvers.size(); ++i) {
        for (std::size_t t = 0; t < curves.thetas.size(); ++t) {
            out << format_number(curves.thetas[t]) << ',';
            write_field(out, curves.solvers[i]);
            out << ',' << format_number(curves.rho[i][t]) << '\n';
        }
    }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "alpha,sorting,mean_tau_d,mean_euclid,mean_dtw,mean_runtime_ms,mean_dist,mean_k,series\n";
    for (const SweepRow& r : rows) {
        out << format_number(r.alpha) << ',' << to_string(r.sorting) << ',' << format_number(r.mean_tau_d) << ','
            << format_number(r.mean_euclid) << ',' << format_number(r.mean_dtw) << ','
            << format_number(r.mean_runtime_ms) << ',' << format_number(r.mean_dist) << ','
            << format_number(r.mean_k) << ',' << r.series << '\n';
    }
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(1, count));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    workers.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace fabba
