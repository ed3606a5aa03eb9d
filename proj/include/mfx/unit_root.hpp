#pragma once

#include <optional>

#include "mfx/accuracy.hpp"
#include "mfx/models.hpp"
#include "mfx/timeseries.hpp"

namespace mfx {

enum class AdfDeterministic { Constant, ConstantTrend };
enum class KpssDeterministic { Level, Trend };

/// Augmented Dickey-Fuller test. The augmentation order is chosen by AIC
/// over 0..max_lag on a common sample (default max_lag: floor(12 (n/100)^0.25)),
/// then the regression is re-estimated on every usable observation.
/// Decisions use asymptotic critical values; p-values follow MacKinnon's
/// approximate distribution.
[[nodiscard]] TestResult adf_test(const TimeSeries& series, AdfDeterministic deterministic = AdfDeterministic::Constant,
                                  std::optional<int> max_lag = std::nullopt);

/// KPSS stationarity test with Bartlett long-run variance and bandwidth
/// floor(4 (n/100)^(2/9)). p-values interpolate the critical-value table and
/// are clipped to [0.01, 0.10].
[[nodiscard]] TestResult kpss_test(const TimeSeries& series, KpssDeterministic deterministic = KpssDeterministic::Level);

/// Smallest d <= max_order for which diff(series, d) rejects the ADF unit root
/// at 5% and does not reject KPSS stationarity at 5%. Throws OrderNotFound.
[[nodiscard]] int integration_order(const TimeSeries& series, int max_order = 2);

/// First-difference the interest, price, money and output differentials whose
/// quarterly integration order is 1; the span loses its first quarter when
/// anything is differenced.
[[nodiscard]] Dataset difference_integrated(const Dataset& data, int max_order = 2);

}  // namespace mfx
