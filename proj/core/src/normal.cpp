#include <algorithm>
#include <cmath>
#include <numbers>

#include "fabba/baselines.hpp"

namespace fabba {

namespace {

// Acklam's rational approximation for the lower tail, |rel err| < 1.2e-9.
double acklam_lower(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error("normal_quantile: p must be in (0, 1)");
    }
    if (p == 0.5) return 0.0;
    if (p > 0.5) return -normal_quantile(1.0 - p);

    double x = acklam_lower(p);
    // One Newton step on Phi(x) - p, with Phi from erfc for tail accuracy.
    const double cdf = 0.5 * std::erfc(-x / std::numbers::sqrt2);
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    x -= (cdf - p) / pdf;
    return x;
}

std::vector<double> gaussian_breakpoints(std::size_t alphabet_size) {
    if (alphabet_size < 2) {
        throw Error("alphabet size must be >= 2");
    }
    const double a = static_cast<double>(alphabet_size);
    std::vector<double> out(alphabet_size - 1);
    for (std::size_t i = 1; i < alphabet_size; ++i) {
        const std::size_t mirror = alphabet_size - i;
        if (2 * i == alphabet_size) {
            out[i - 1] = 0.0;
        } else if (i < mirror) {
            out[i - 1] = normal_quantile(static_cast<double>(i) / a);
        } else {
            out[i - 1] = -out[mirror - 1];
        }
    }
    return out;
}

std::uint32_t quantize_cell(double value, std::span<const double> breakpoints) {
    return static_cast<std::uint32_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), value) -
                                      breakpoints.begin());
}

double cell_value(std::uint32_t cell, std::span<const double> breakpoints) {
    const std::size_t cells = breakpoints.size() + 1;
    if (cell >= cells) {
        throw Error("cell index out of range");
    }
    if (cells == 2) {
        const double half_mean = std::sqrt(2.0 / std::numbers::pi);
        return cell == 0 ? -half_mean : half_mean;
    }
    if (cell == 0) {
        return breakpoints[0] - 0.5 * (breakpoints[1] - breakpoints[0]);
    }
    if (cell == cells - 1) {
        const std::size_t m = breakpoints.size() - 1;
        return breakpoints[m] + 0.5 * (breakpoints[m] - breakpoints[m - 1]);
    }
    return 0.5 * (breakpoints[cell - 1] + breakpoints[cell]);
}

}  // namespace fabba
