#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "mfx/accuracy.hpp"
#include "mfx/models.hpp"

namespace mfx {

enum class SchemeKind { Recursive, Rolling };

struct Scheme {
    SchemeKind kind = SchemeKind::Recursive;
    /// Rolling estimation window in quarters; defaults to the length of the
    /// initial training sample.
    std::optional<int> window;

    static Scheme recursive() { return {SchemeKind::Recursive, std::nullopt}; }
    static Scheme rolling(std::optional<int> window = std::nullopt) { return {SchemeKind::Rolling, window}; }
};

[[nodiscard]] std::string_view to_string(SchemeKind kind) noexcept;
[[nodiscard]] SchemeKind parse_scheme(std::string_view text);

struct BacktestResult {
    ModelSpec spec;
    SchemeKind scheme = SchemeKind::Recursive;
    int window = 0;  ///< resolved rolling window; 0 for recursive
    std::vector<Period> origins;
    std::vector<double> forecasts;
    std::vector<double> actuals;
    std::vector<double> errors;  ///< actual - forecast
    double msfe = 0.0;
};

/// One-step-ahead out-of-sample evaluation: every origin from `train_end` to
/// `test_end` - 1 forecasts the following quarter.
[[nodiscard]] BacktestResult backtest(const ModelSpec& spec, const Dataset& data, const Scheme& scheme,
                                      const Period& train_end, const Period& test_end,
                                      const ForecastOptions& options = {});

struct Comparison {
    TestResult dm;  ///< positive statistic: model beats the benchmark
    TestResult cw;  ///< benchmark nested in the model
};

/// DM and CW tests of `model` against the benchmark run on the same origins.
[[nodiscard]] Comparison compare_to_benchmark(const BacktestResult& benchmark, const BacktestResult& model, int h = 1);

}  // namespace mfx
