#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mfx/timeseries.hpp"

namespace mfx {

/// Low-frequency design block of stacked high-frequency observations.
///
/// Row t holds `k_lags + 1` blocks of `freq_ratio` columns. Block l covers
/// the low-frequency period t - l; inside a block the columns run from the
/// most recent high-frequency observation to the oldest, so for monthly data
/// in quarters a row reads [x_3t, x_3t-1, x_3t-2, x_3(t-1), ...].
struct AlignedMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  ///< row-major, rows * cols
    int freq_ratio = 1;
    int k_lags = 0;
    /// High-frequency period of the oldest observation in row 0's current block.
    Period block_start = Period::month(1970, 1);

    [[nodiscard]] double operator()(int row, int col) const {
        return data[static_cast<std::size_t>(row) * cols + col];
    }
    [[nodiscard]] std::span<const double> row(int r) const {
        return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
    }
    /// Low-frequency period of row 0, when the ratio maps onto a known calendar
    /// (monthly with m = 3 gives quarters, m = 1 keeps the input frequency).
    [[nodiscard]] std::optional<Period> low_start() const;
};

/// Stack `high` into rows of `m * (k_lags + 1)` columns. A monthly series with
/// m = 3 is first left-trimmed to a quarter boundary; the first `k_lags` rows
/// are dropped so that every row is fully populated.
[[nodiscard]] AlignedMatrix stack(const TimeSeries& high, int m, int k_lags = 0);

/// Inverse of stack() for k_lags = 0.
[[nodiscard]] TimeSeries unstack(const AlignedMatrix& mat);

}  // namespace mfx
