#include "mfx/align.hpp"

#include <string>

#include "mfx/error.hpp"

namespace mfx {

std::optional<Period> AlignedMatrix::low_start() const {
    if (freq_ratio == 1) return block_start;
    if (block_start.freq() == Frequency::Monthly && freq_ratio == kMonthsPerQuarter) {
        return quarter_of(block_start);
    }
    return std::nullopt;
}

AlignedMatrix stack(const TimeSeries& high, int m, int k_lags) {
    if (m < 1 || k_lags < 0) throw Error(ErrorCode::InvalidArgument, "stack needs m >= 1, k_lags >= 0");

    // Left-trim to a low-frequency boundary when the calendar defines one.
    std::size_t offset = 0;
    const int ppy = periods_per_year(high.freq());
    if (m > 1 && ppy % m == 0) {
        const int pos = (high.start().index() - 1) % m;
        if (pos != 0) offset = static_cast<std::size_t>(m - pos);
    }
    if (offset >= high.size()) throw Error(ErrorCode::TooShort, "no complete block after trimming");
    const std::size_t n = high.size() - offset;
    if (n % static_cast<std::size_t>(m) != 0) {
        throw Error(ErrorCode::NotDivisible,
                    "length " + std::to_string(n) + " not divisible by " + std::to_string(m));
    }
    const auto blocks = static_cast<int>(n / static_cast<std::size_t>(m));
    if (blocks < k_lags + 1) {
        throw Error(ErrorCode::TooShort, std::to_string(blocks) + " blocks for k_lags " + std::to_string(k_lags));
    }

    const auto x = high.values().subspan(offset);
    AlignedMatrix out;
    out.freq_ratio = m;
    out.k_lags = k_lags;
    out.rows = blocks - k_lags;
    out.cols = m * (k_lags + 1);
    out.block_start = high.start() + static_cast<long>(offset) + static_cast<long>(k_lags) * m;
    out.data.reserve(static_cast<std::size_t>(out.rows) * out.cols);
    for (int t = k_lags; t < blocks; ++t) {
        for (int l = 0; l <= k_lags; ++l) {
            for (int j = 0; j < m; ++j) {
                out.data.push_back(x[static_cast<std::size_t>(m * (t - l + 1) - 1 - j)]);
            }
        }
    }
    return out;
}

TimeSeries unstack(const AlignedMatrix& mat) {
    if (mat.k_lags != 0) throw Error(ErrorCode::NotInvertible, "lag blocks overlap");
    std::vector<double> x;
    x.reserve(mat.data.size());
    for (int t = 0; t < mat.rows; ++t) {
        for (int j = mat.cols - 1; j >= 0; --j) x.push_back(mat(t, j));
    }
    return {mat.block_start, std::move(x)};
}

}  // namespace mfx
