#include "mfx/accuracy.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "mfx/error.hpp"

namespace mfx {

namespace {

constexpr double kMinVariance = 1e-15;

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// t-ratio of the mean of `d` with HAC variance; `two_sided` selects the p-value.
TestResult mean_t_test(const std::vector<double>& d, int h, bool two_sided) {
    if (h < 1) throw Error(ErrorCode::InvalidArgument, "forecast horizon must be >= 1");
    const double n = static_cast<double>(d.size());
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
    const double v = long_run_variance(d, h - 1);
    if (!(v > kMinVariance)) {
        throw Error(ErrorCode::DegenerateVariance, "loss differential variance " + std::to_string(v));
    }
    TestResult r;
    r.statistic = mean / std::sqrt(v / n);
    r.p_value = two_sided ? 2.0 * normal_upper_tail(std::abs(r.statistic)) : normal_upper_tail(r.statistic);
    for (std::size_t k = 0; k < kSignificanceLevels.size(); ++k) r.reject[k] = r.p_value <= kSignificanceLevels[k];
    r.lags = h - 1;
    return r;
}

void require_same_length(std::size_t a, std::size_t b) {
    if (a == 0 || b == 0) throw Error(ErrorCode::EmptyInput, "empty error sequence");
    if (a != b) throw Error(ErrorCode::DimensionMismatch, std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

bool TestResult::rejects_at(double level) const {
    for (std::size_t k = 0; k < kSignificanceLevels.size(); ++k) {
        if (kSignificanceLevels[k] == level) return reject[k];
    }
    throw Error(ErrorCode::InvalidArgument, "significance level must be 0.01, 0.05 or 0.10");
}

const char* significance_stars(const TestResult& result) noexcept {
    if (result.reject[0]) return "***";
    if (result.reject[1]) return "**";
    if (result.reject[2]) return "*";
    return "";
}

double msfe(std::span<const double> errors) {
    if (errors.empty()) throw Error(ErrorCode::EmptyInput, "msfe of no errors");
    double sum = 0.0;
    for (double e : errors) sum += e * e;
    return sum / static_cast<double>(errors.size());
}

double long_run_variance(std::span<const double> x, int lags) {
    const std::size_t n = x.size();
    if (n == 0) throw Error(ErrorCode::EmptyInput, "long-run variance of nothing");
    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    std::vector<double> c(n);
    for (std::size_t t = 0; t < n; ++t) c[t] = x[t] - mean;
    auto autocov = [&](std::size_t k) {
        double s = 0.0;
        for (std::size_t t = k; t < n; ++t) s += c[t] * c[t - k];
        return s / static_cast<double>(n);
    };
    double v = autocov(0);
    for (int k = 1; k <= lags && static_cast<std::size_t>(k) < n; ++k) {
        v += 2.0 * (1.0 - static_cast<double>(k) / (lags + 1)) * autocov(static_cast<std::size_t>(k));
    }
    return v;
}

TestResult diebold_mariano(std::span<const double> e_bench, std::span<const double> e_model, int h) {
    require_same_length(e_bench.size(), e_model.size());
    std::vector<double> d(e_bench.size());
    for (std::size_t t = 0; t < d.size(); ++t) d[t] = e_bench[t] * e_bench[t] - e_model[t] * e_model[t];
    return mean_t_test(d, h, true);
}

TestResult clark_west(std::span<const double> e_small, std::span<const double> e_large,
                      std::span<const double> f_small, std::span<const double> f_large, int h) {
    require_same_length(e_small.size(), e_large.size());
    require_same_length(e_small.size(), f_small.size());
    require_same_length(e_small.size(), f_large.size());
    std::vector<double> f(e_small.size());
    for (std::size_t t = 0; t < f.size(); ++t) {
        const double gap = f_small[t] - f_large[t];
        f[t] = e_small[t] * e_small[t] - (e_large[t] * e_large[t] - gap * gap);
    }
    return mean_t_test(f, h, false);
}

}  // namespace mfx
