// Writes the bundled synthetic corpus: sines.tsv (UCR layout, labelled by
// frequency band) and walks.csv (Gaussian random walks).

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fabba/bench.hpp"

namespace {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace

int main(int argc, char** argv) {
    const std::filesystem::path dir = argc > 1 ? argv[1] : "data/corpus";
    std::filesystem::create_directories(dir);
    Rng rng(20211016);

    std::ofstream sines(dir / "sines.tsv");
    for (int s = 0; s < 10; ++s) {
        const int length = 500 + 50 * s;
        const int band = s % 3;
        const double cycles = 2.0 + 2.0 * band + rng.uniform();
        const double phase = 2.0 * std::numbers::pi * rng.uniform();
        const double amp = 1.0 + 4.0 * rng.uniform();
        sines << band;
        for (int i = 0; i < length; ++i) {
            const double t = static_cast<double>(i) / length;
            const double v = amp * std::sin(2.0 * std::numbers::pi * cycles * t + phase) + 0.02 * amp * rng.normal();
            sines << '\t' << fabba::format_number(std::round(v * 1e6) / 1e6);
        }
        sines << '\n';
    }

    std::ofstream walks(dir / "walks.csv");
    for (int s = 0; s < 10; ++s) {
        const int length = 400 + 60 * s;
        double v = 0.0;
        for (int i = 0; i < length; ++i) {
            if (i > 0) walks << ',';
            walks << fabba::format_number(std::round(v * 1e6) / 1e6);
            v += rng.normal();
        }
        walks << '\n';
    }
    std::cout << "wrote " << (dir / "sines.tsv").string() << " and " << (dir / "walks.csv").string() << "\n";
    return 0;
}
