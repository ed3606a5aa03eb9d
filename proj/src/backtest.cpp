#include "mfx/backtest.hpp"

#include <string>

#include "mfx/error.hpp"

namespace mfx {

std::string_view to_string(SchemeKind kind) noexcept {
    return kind == SchemeKind::Recursive ? "recursive" : "rolling";
}

SchemeKind parse_scheme(std::string_view text) {
    if (text == "recursive") return SchemeKind::Recursive;
    if (text == "rolling") return SchemeKind::Rolling;
    throw Error(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(text) + "'");
}

BacktestResult backtest(const ModelSpec& spec, const Dataset& data, const Scheme& scheme, const Period& train_end,
                        const Period& test_end, const ForecastOptions& options) {
    if (!(train_end < test_end)) {
        throw Error(ErrorCode::InvalidArgument, "train_end " + train_end.to_string() + " not before test_end " +
                                                    test_end.to_string());
    }
    if (train_end < data.first_quarter() || test_end > data.last_quarter()) {
        throw Error(ErrorCode::InsufficientSpan, train_end.to_string() + ".." + test_end.to_string() +
                                                     " outside data " + data.first_quarter().to_string() + ".." +
                                                     data.last_quarter().to_string());
    }

    BacktestResult out;
    out.spec = spec;
    out.scheme = scheme.kind;
    std::optional<int> window;
    if (scheme.kind == SchemeKind::Rolling) {
        window = scheme.window.value_or(static_cast<int>(train_end - data.first_quarter()) + 1);
        if (*window < 1) throw Error(ErrorCode::InvalidWindow, "window " + std::to_string(*window));
        out.window = *window;
    }

    for (Period origin = train_end; origin < test_end; origin = origin + 1) {
        const OriginForecast f = forecast_at_origin(spec, data, origin, options, window);
        const double actual = data.ds.at(f.target);
        out.origins.push_back(origin);
        out.forecasts.push_back(f.forecast);
        out.actuals.push_back(actual);
        out.errors.push_back(actual - f.forecast);
    }
    out.msfe = msfe(out.errors);
    return out;
}

Comparison compare_to_benchmark(const BacktestResult& benchmark, const BacktestResult& model, int h) {
    if (benchmark.origins != model.origins) {
        throw Error(ErrorCode::DimensionMismatch, "benchmark and model cover different origins");
    }
    return {diebold_mariano(benchmark.errors, model.errors, h),
            clark_west(benchmark.errors, model.errors, benchmark.forecasts, model.forecasts, h)};
}

}  // namespace mfx
