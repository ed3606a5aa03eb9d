#pragma once

#include "mfx/timeseries.hpp"

namespace mfx {

inline constexpr double kHpLambdaQuarterly = 1600.0;
inline constexpr double kHpLambdaMonthly = 129600.0;

[[nodiscard]] constexpr double default_hp_lambda(Frequency f) noexcept {
    return f == Frequency::Quarterly ? kHpLambdaQuarterly : kHpLambdaMonthly;
}

struct TrendCycle {
    TimeSeries trend;
    TimeSeries cycle;
};

/// Hodrick-Prescott decomposition. The trend solves (I + lambda D'D) tau = y,
/// D the second-difference operator, through a banded Cholesky factorisation.
[[nodiscard]] TrendCycle hp_filter(const TimeSeries& series, double lambda);

/// Cycle of the HP filter applied to log GDP.
[[nodiscard]] TimeSeries output_gap(const TimeSeries& log_gdp, double lambda = kHpLambdaQuarterly);

/// First difference of a log price level.
[[nodiscard]] TimeSeries inflation(const TimeSeries& log_cpi);

}  // namespace mfx
