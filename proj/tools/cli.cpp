#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fabba/fabba.hpp"

namespace fabba::cli {

namespace {

namespace fs = std::filesystem;

struct CompressArgs {
    std::string input;
    std::size_t row = 0;
    double tol = 0.1;
    double alpha = 0.5;
    double scl = 1.0;
    std::string sorting = "2-norm";
    bool normalize = false;
    std::string out;
};

struct ReconstructArgs {
    std::string input;
    std::string out;
};

struct ImageArgs {
    std::string input;
    double tol = 0.1;
    double alpha = 0.001;
    double scl = 1.0;
    std::string sorting = "2-norm";
    bool no_normalize = false;
    std::string out = "recon.ppm";
    std::string report;
};

struct BenchArgs {
    std::string corpus;
    double alpha = 0.1;
    double scl = 1.0;
    std::string sorting = "2-norm";
    std::uint64_t seed = 0;
    bool no_normalize = false;
    std::size_t jobs = 1;
    double theta_max = 10.0;
    std::string out_dir = ".";
};

struct SweepArgs {
    std::string corpus;
    std::string alphas = "0.1..0.9";
    double alpha_step = 0.1;
    std::string sortings = "2-norm";
    double scl = 1.0;
    bool no_normalize = false;
    std::size_t jobs = 1;
    std::string out = "sweep.csv";
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_text_file(path, text);
    }
}

int run_compress(const CompressArgs& a, std::ostream& out) {
    const auto series = read_series_csv(a.input);
    if (a.row >= series.size()) {
        throw Error("'" + a.input + "' has " + std::to_string(series.size()) + " series; row " +
                    std::to_string(a.row) + " requested");
    }
    FabbaConfig cfg;
    cfg.tol = a.tol;
    cfg.alpha = a.alpha;
    cfg.scl = a.scl;
    cfg.sorting = parse_sort_kind(a.sorting);
    cfg.normalize = a.normalize;
    const FabbaModel model = fabba_transform(series[a.row], cfg);
    emit(a.out, serialize_model(model), out);
    return kExitOk;
}

int run_reconstruct(const ReconstructArgs& a, std::ostream& out) {
    const FabbaModel model = parse_model(read_text_file(a.input));
    emit(a.out, format_series_csv(fabba_inverse(model)), out);
    return kExitOk;
}

int run_image(const ImageArgs& a, std::ostream& out) {
    const ImageTensor img = read_ppm(a.input);
    const TimeSeries series = flatten_image(img);

    FabbaConfig cfg;
    cfg.tol = a.tol;
    cfg.alpha = a.alpha;
    cfg.scl = a.scl;
    cfg.sorting = parse_sort_kind(a.sorting);
    cfg.normalize = !a.no_normalize;
    const FabbaModel model = fabba_transform(series, cfg);
    const TimeSeries recon = fabba_inverse(model);
    const ImageTensor back = unflatten_image(recon, img.width, img.height);
    write_ppm(back, a.out);

    double abs_err = 0.0;
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        abs_err += std::abs(static_cast<double>(img.pixels[i]) - static_cast<double>(back.pixels[i]));
    }
    const auto k = model.symbolic.codebook.size();
    const auto [tau_c, tau_d] = rates(model.pieces_count, static_cast<std::size_t>(model.series_len), k);

    nlohmann::ordered_json report = {
        {"input", a.input},
        {"width", img.width},
        {"height", img.height},
        {"tol", a.tol},
        {"alpha", a.alpha},
        {"scl", a.scl},
        {"sorting", std::string(to_string(cfg.sorting))},
        {"normalize", cfg.normalize},
        {"series_len", model.series_len},
        {"n", model.pieces_count},
        {"k", k},
        {"tau_c", tau_c},
        {"tau_d", tau_d},
        {"mean_abs_error", abs_err / static_cast<double>(img.pixels.size())},
        {"reconstructed_len", recon.size()},
    };
    if (!a.report.empty()) {
        write_text_file(a.report, report.dump(2) + "\n");
    }
    out << "image " << img.width << "x" << img.height << ": n=" << model.pieces_count << " k=" << k
        << " tau_c=" << format_number(tau_c) << " tau_d=" << format_number(tau_d) << "\n";
    return kExitOk;
}

int run_bench(const BenchArgs& a, std::ostream& out) {
    const auto corpus = load_corpus(a.corpus);
    ComparisonConfig cfg;
    cfg.alpha = a.alpha;
    cfg.scl = a.scl;
    cfg.sorting = parse_sort_kind(a.sorting);
    cfg.seed = a.seed;
    cfg.normalize = !a.no_normalize;
    cfg.jobs = a.jobs;
    const ComparisonResult result = run_comparison(corpus, cfg);
    if (result.rows.empty()) {
        throw Error("every series was excluded as too noisy");
    }

    fs::create_directories(a.out_dir);
    {
        std::ostringstream csv;
        write_reports_csv(csv, result.rows);
        write_text_file(fs::path(a.out_dir) / "reports.csv", csv.str());
    }
    const auto thetas = theta_grid(a.theta_max, 1 + static_cast<std::size_t>(std::lround((a.theta_max - 1.0) * 10.0)));
    for (ErrorMetric metric : {ErrorMetric::euclid, ErrorMetric::dtw, ErrorMetric::euclid_diff, ErrorMetric::dtw_diff}) {
        std::ostringstream csv;
        write_profiles_csv(csv, performance_profile(profile_table(result, metric), thetas));
        const std::string name =
            metric == ErrorMetric::euclid ? "profiles.csv" : "profiles_" + std::string(to_string(metric)) + ".csv";
        write_text_file(fs::path(a.out_dir) / name, csv.str());
    }
    out << "bench: " << corpus.size() << " series, " << result.excluded.size() << " excluded, "
        << result.rows.size() << " report rows\n";
    return kExitOk;
}

int run_sweep(const SweepArgs& a, std::ostream& out) {
    const auto corpus = load_corpus(a.corpus);
    const auto alphas = parse_alpha_list(a.alphas, a.alpha_step);
    std::vector<SortKind> sortings;
    std::stringstream ss(a.sortings);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) sortings.push_back(parse_sort_kind(item));
    }
    SweepConfig cfg;
    cfg.scl = a.scl;
    cfg.normalize = !a.no_normalize;
    cfg.jobs = a.jobs;
    const auto rows = parameter_sweep(corpus, alphas, sortings, cfg);
    std::ostringstream csv;
    write_sweep_csv(csv, rows);
    emit(a.out, csv.str(), out);
    return kExitOk;
}

}  // namespace

std::vector<double> parse_alpha_list(const std::string& text, double step) {
    std::vector<double> out;
    const auto range = text.find("..");
    if (range != std::string::npos) {
        if (!(step > 0.0)) throw Error("alpha step must be > 0");
        const auto lo_hi = parse_number_row(text.substr(0, range) + "," + text.substr(range + 2), ',');
        if (lo_hi[1] < lo_hi[0]) throw Error("alpha range must be increasing");
        const auto count = static_cast<std::size_t>(std::floor((lo_hi[1] - lo_hi[0]) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(std::round((lo_hi[0] + static_cast<double>(i) * step) * 1e12) / 1e12);
        }
    } else {
        out = parse_number_row(text, ',');
    }
    for (double a : out) {
        if (!(a > 0.0) || !std::isfinite(a)) throw Error("alpha values must be > 0");
    }
    return out;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fABBA symbolic time-series representation"};
    app.name("fabba");
    app.require_subcommand(1);

    CompressArgs compress_args;
    auto* compress = app.add_subcommand("compress", "Transform one CSV series into a symbolic model (JSON)");
    compress->add_option("input", compress_args.input, "CSV file, one series per line")->required();
    compress->add_option("--row", compress_args.row, "Which series (line) of the file to use");
    compress->add_option("--tol", compress_args.tol, "Compression tolerance");
    compress->add_option("--alpha", compress_args.alpha, "Aggregation radius");
    compress->add_option("--scl", compress_args.scl, "Length weight");
    compress->add_option("--sorting", compress_args.sorting, "lexi | 1-norm | 2-norm");
    compress->add_flag("--normalize", compress_args.normalize, "Z-normalize before compression");
    compress->add_option("--out", compress_args.out, "Model JSON path (stdout when omitted)");

    ReconstructArgs reconstruct_args;
    auto* reconstruct = app.add_subcommand("reconstruct", "Rebuild a series from a model JSON");
    reconstruct->add_option("model", reconstruct_args.input, "Model JSON")->required();
    reconstruct->add_option("--out", reconstruct_args.out, "Output CSV (stdout when omitted)");

    ImageArgs image_args;
    auto* image = app.add_subcommand("image", "Compress and reconstruct a binary PPM image");
    image->add_option("input", image_args.input, "P6 PPM file")->required();
    image->add_option("--tol", image_args.tol, "Compression tolerance");
    image->add_option("--alpha", image_args.alpha, "Aggregation radius");
    image->add_option("--scl", image_args.scl, "Length weight");
    image->add_option("--sorting", image_args.sorting, "lexi | 1-norm | 2-norm");
    image->add_flag("--no-normalize", image_args.no_normalize, "Work on raw pixel values");
    image->add_option("--out", image_args.out, "Reconstructed PPM");
    image->add_option("--report", image_args.report, "Report JSON with tau_c and tau_d");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Compare fABBA, ABBA, SAX and 1d-SAX on a corpus");
    bench->add_option("corpus", bench_args.corpus, "Directory of .tsv / .csv files")->required();
    bench->add_option("--alpha", bench_args.alpha, "Aggregation radius");
    bench->add_option("--scl", bench_args.scl, "Length weight");
    bench->add_option("--sorting", bench_args.sorting, "lexi | 1-norm | 2-norm");
    bench->add_option("--seed", bench_args.seed, "k-means++ seed");
    bench->add_flag("--no-normalize", bench_args.no_normalize, "Skip z-normalization of each series");
    bench->add_option("--jobs", bench_args.jobs, "Worker threads (1 for stable timings)");
    bench->add_option("--theta-max", bench_args.theta_max, "Upper end of the profile theta grid");
    bench->add_option("--out-dir", bench_args.out_dir, "Directory for reports.csv and profiles*.csv");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Average fABBA metrics over a grid of alpha values");
    sweep->add_option("corpus", sweep_args.corpus, "Directory of .tsv / .csv files")->required();
    sweep->add_option("--alphas", sweep_args.alphas, "lo..hi range or comma-separated list");
    sweep->add_option("--alpha-step", sweep_args.alpha_step, "Step for lo..hi ranges");
    sweep->add_option("--sortings", sweep_args.sortings, "Comma-separated sortings");
    sweep->add_option("--scl", sweep_args.scl, "Length weight");
    sweep->add_flag("--no-normalize", sweep_args.no_normalize, "Skip z-normalization of each series");
    sweep->add_option("--jobs", sweep_args.jobs, "Worker threads");
    sweep->add_option("--out", sweep_args.out, "Output CSV (stdout for -)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*compress) return run_compress(compress_args, out);
        if (*reconstruct) return run_reconstruct(reconstruct_args, out);
        if (*image) return run_image(image_args, out);
        if (*bench) return run_bench(bench_args, out);
        if (*sweep) return run_sweep(sweep_args, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    err << app.help();
    return kExitUsage;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return dispatch(args, out, err);
}

}  // namespace fabba::cli
