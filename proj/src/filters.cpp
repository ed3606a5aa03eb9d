#include "mfx/filters.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mfx/error.hpp"

namespace mfx {

namespace {

// Symmetric positive definite matrix with half-bandwidth 2, stored by diagonals:
// d0[i] = A(i,i), d1[i] = A(i,i+1), d2[i] = A(i,i+2).
struct PentaBands {
    std::vector<double> d0, d1, d2;
};

PentaBands hp_system(std::size_t n, double lambda) {
    PentaBands a{std::vector<double>(n, 1.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    // Accumulate lambda * D'D one second-difference row [1, -2, 1] at a time.
    constexpr double kRow[3] = {1.0, -2.0, 1.0};
    for (std::size_t r = 0; r + 2 < n; ++r) {
        for (int p = 0; p < 3; ++p) {
            a.d0[r + p] += lambda * kRow[p] * kRow[p];
            if (p < 2) a.d1[r + p] += lambda * kRow[p] * kRow[p + 1];
        }
        a.d2[r] += lambda * kRow[0] * kRow[2];
    }
    return a;
}

// In-place banded Cholesky A = L L'. On return d0 holds diag(L), d1[i] holds
// L(i+1,i) and d2[i] holds L(i+2,i).
void banded_cholesky(PentaBands& a) {
    const std::size_t n = a.d0.size();
    for (std::size_t i = 0; i < n; ++i) {
        double l2 = 0.0;  // L(i, i-2)
        double l1 = 0.0;  // L(i, i-1)
        if (i >= 2) {
            l2 = a.d2[i - 2] / a.d0[i - 2];
            a.d2[i - 2] = l2;
        }
        if (i >= 1) {
            const double cross = i >= 2 ? l2 * a.d1[i - 2] : 0.0;
            l1 = (a.d1[i - 1] - cross) / a.d0[i - 1];
            a.d1[i - 1] = l1;
        }
        const double pivot = a.d0[i] - l1 * l1 - l2 * l2;
        if (!(pivot > 0.0)) throw Error(ErrorCode::RankDeficient, "HP system not positive definite");
        a.d0[i] = std::sqrt(pivot);
    }
}

std::vector<double> banded_solve(const PentaBands& l, std::span<const double> rhs) {
    const std::size_t n = rhs.size();
    std::vector<double> z(rhs.begin(), rhs.end());
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= 1) z[i] -= l.d1[i - 1] * z[i - 1];
        if (i >= 2) z[i] -= l.d2[i - 2] * z[i - 2];
        z[i] /= l.d0[i];
    }
    for (std::size_t k = n; k-- > 0;) {
        if (k + 1 < n) z[k] -= l.d1[k] * z[k + 1];
        if (k + 2 < n) z[k] -= l.d2[k] * z[k + 2];
        z[k] /= l.d0[k];
    }
    return z;
}

}  // namespace

TrendCycle hp_filter(const TimeSeries& series, double lambda) {
    if (series.size() < 4) throw Error(ErrorCode::SeriesTooShort, "hp_filter needs >= 4 observations");
    if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "hp_filter lambda must be positive");

    auto factor = hp_system(series.size(), lambda);
    banded_cholesky(factor);
    std::vector<double> trend = banded_solve(factor, series.values());
    std::vector<double> cycle(series.size());
    for (std::size_t k = 0; k < cycle.size(); ++k) cycle[k] = series[k] - trend[k];
    return {TimeSeries(series.start(), std::move(trend)), TimeSeries(series.start(), std::move(cycle))};
}

TimeSeries output_gap(const TimeSeries& log_gdp, double lambda) {
    return hp_filter(log_gdp, lambda).cycle;
}

TimeSeries inflation(const TimeSeries& log_cpi) { return diff(log_cpi, 1); }

}  // namespace mfx
