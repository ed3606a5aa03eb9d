#pragma once

#include <cstdint>

#include "mfx/models.hpp"
#include "mfx/timeseries.hpp"

namespace mfx {

/// Synthetic CAD/USD-like inputs. The exchange rate is close to a random
/// walk with a weak response to monthly price and interest differentials.
struct SimulationConfig {
    std::uint64_t seed = 1;
    Period first_month = Period::month(1980, 1);
    Period last_month = Period::month(2019, 3);
    double fx_monthly_sd = 0.0255;
};

[[nodiscard]] DatasetInputs simulate_inputs(const SimulationConfig& sim, Aggregation aggregation = Aggregation::LastOfQuarter);

[[nodiscard]] Dataset simulate_dataset(const SimulationConfig& sim, const DatasetConfig& config = {},
                                       Period first = Period::quarter(1985, 1),
                                       Period last = Period::quarter(2019, 1));

}  // namespace mfx
