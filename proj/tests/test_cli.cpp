#include <gtest/gtest.h>

#include <filesystem>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "fabba/io.hpp"
#include "fabba/pipeline.hpp"

using namespace fabba;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("fabba_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::size_t count_lines(const std::string& text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST_F(CliTest, CompressRamp) {
    write_text_file(path("ramp.csv"), "0,1,2,3,4,5,6,7,8,9,10\n");
    const CliRun r = run({"compress", path("ramp.csv"), "--tol", "0.1", "--alpha", "0.5", "--out", path("model.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const FabbaModel m = parse_model(read_text_file(path("model.json")));
    EXPECT_EQ(m.symbolic.symbols.size(), 1u);

    const CliRun back = run({"reconstruct", path("model.json")});
    ASSERT_EQ(back.code, cli::kExitOk) << back.err;
    EXPECT_EQ(back.out, "0,1,2,3,4,5,6,7,8,9,10\n");
}

TEST_F(CliTest, ImageReport) {
    ImageTensor img{16, 12, {}};
    for (std::size_t i = 0; i < 16 * 12; ++i) {
        img.pixels.push_back(static_cast<std::uint8_t>(i));
        img.pixels.push_back(static_cast<std::uint8_t>(255 - i));
        img.pixels.push_back(static_cast<std::uint8_t>(i / 2));
    }
    write_ppm(img, path("grad.ppm"));
    const CliRun r = run({"image", path("grad.ppm"), "--tol", "0.5", "--alpha", "0.001", "--out", path("recon.ppm"),
                       "--report", path("report.json")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const auto report = nlohmann::json::parse(read_text_file(path("report.json")));
    for (const char* key : {"tau_c", "tau_d"}) {
        ASSERT_TRUE(report.contains(key)) << key;
        EXPECT_GT(report[key].get<double>(), 0.0);
        EXPECT_LE(report[key].get<double>(), 1.0);
    }
    EXPECT_EQ(report["reconstructed_len"].get<std::size_t>(), 16u * 12u * 3u);
    const ImageTensor out = read_ppm(path("recon.ppm"));
    EXPECT_EQ(out.width, 16u);
    EXPECT_EQ(out.height, 12u);
}

TEST_F(CliTest, BenchOnBundledCorpus) {
    const std::string corpus = std::string(FABBA_SOURCE_DIR) + "/data/corpus";
    const CliRun r = run({"bench", corpus, "--alpha", "0.1", "--out-dir", dir_.string()});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    const std::string reports = read_text_file(path("reports.csv"));
    EXPECT_EQ(count_lines(reports), 81u);
    EXPECT_EQ(reports.substr(0, reports.find('\n')),
              "series_id,method,n,k,tol,alpha,euclid,dtw,euclid_diff,dtw_diff,runtime_ms,dist_count");
    const std::string profiles = read_text_file(path("profiles.csv"));
    EXPECT_EQ(profiles.substr(0, profiles.find('\n')), "theta,solver,rho");
}

TEST_F(CliTest, SweepWritesOneRowPerAlpha) {
    const std::string corpus = std::string(FABBA_SOURCE_DIR) + "/data/corpus";
    const CliRun r = run({"sweep", corpus, "--alphas", "0.1..0.3", "--out", path("sweep.csv")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    EXPECT_EQ(count_lines(read_text_file(path("sweep.csv"))), 4u);
}

TEST_F(CliTest, Deterministic) {
    write_text_file(path("s.csv"), "0,1,3,2,5,4,4,6,7,9,8,8,10,12,11\n");
    const CliRun a = run({"compress", path("s.csv"), "--tol", "0.3", "--alpha", "0.4"});
    const CliRun b = run({"compress", path("s.csv"), "--tol", "0.3", "--alpha", "0.4"});
    ASSERT_EQ(a.code, cli::kExitOk);
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, UsageErrorsExitOne) {
    EXPECT_EQ(run({"compress", path("x.csv"), "--bogus"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run({}).code, cli::kExitUsage);
}

TEST_F(CliTest, DataErrorsExitTwo) {
    EXPECT_EQ(run({"compress", path("missing.csv")}).code, cli::kExitData);
    write_text_file(path("bad.csv"), "1,2,x\n");
    EXPECT_EQ(run({"compress", path("bad.csv")}).code, cli::kExitData);
    write_text_file(path("p3.ppm"), "P3\n1 1\n255\n0 0 0\n");
    const CliRun r = run({"image", path("p3.ppm")});
    EXPECT_EQ(r.code, cli::kExitData);
    EXPECT_NE(r.err.find("unsupported PPM variant"), std::string::npos);
}

TEST(AlphaList, RangesAndLists) {
    const auto a = cli::parse_alpha_list("0.1..0.9", 0.1);
    ASSERT_EQ(a.size(), 9u);
    EXPECT_DOUBLE_EQ(a.front(), 0.1);
    EXPECT_DOUBLE_EQ(a.back(), 0.9);
    EXPECT_EQ(cli::parse_alpha_list("0.2,0.5", 0.1), (std::vector<double>{0.2, 0.5}));
}
