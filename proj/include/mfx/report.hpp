#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mfx/backtest.hpp"
#include "mfx/models.hpp"

namespace mfx {

enum class OutputFormat { Text, Csv, Json };

[[nodiscard]] std::string_view to_string(OutputFormat f) noexcept;
[[nodiscard]] OutputFormat parse_format(std::string_view text);

/// Empty cells print as "-" (null in JSON).
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

/// Shortest decimal string that parses back to exactly `x`.
[[nodiscard]] std::string format_number(double x);

/// Text pads columns and prints numbers with six significant digits; CSV and
/// JSON keep full precision.
[[nodiscard]] std::string render(const Table& table, OutputFormat format);

/// Inverse of render(table, Csv): numeric cells become doubles, "-" empty.
[[nodiscard]] Table parse_csv_table(std::string_view text);

struct StationarityRow {
    std::string variable;
    TestResult adf;
    TestResult kpss;
    std::optional<int> order;  ///< empty when no order up to 2 qualifies
};

/// ADF (constant) and KPSS (level) on the quarterly return, the four
/// fundamentals differentials, both countries' output gaps and both
/// countries' inflation rates.
[[nodiscard]] std::vector<StationarityRow> stationarity_report(const Dataset& data);
[[nodiscard]] Table stationarity_table(const std::vector<StationarityRow>& rows);

struct BacktestRow {
    BacktestResult result;
    std::optional<Comparison> vs_benchmark;  ///< empty for the benchmark row
};

/// Backtests every spec concurrently against the random walk. Rows follow
/// the order of `specs`. Numerical failures are rethrown with the model name.
[[nodiscard]] std::vector<BacktestRow> backtest_report(const Dataset& data, const std::vector<ModelSpec>& specs,
                                                       const Scheme& scheme, const Period& train_end,
                                                       const Period& test_end, const ForecastOptions& options = {});
/// Columns: model, msfe, dm, dm_p, dm_stars, cw, cw_p, cw_stars.
[[nodiscard]] Table backtest_table(const std::vector<BacktestRow>& rows);

enum class PlotSeries { Levels, Returns, Predictors };

[[nodiscard]] PlotSeries parse_plot_series(std::string_view text);

/// Tidy (period, series, value) rows. Predictors are the quarterly
/// differentials and the output-gap differential. Throws EmptyInput for an
/// empty selection.
[[nodiscard]] Table plot_data(const Dataset& data, const std::vector<PlotSeries>& what);

}  // namespace mfx
