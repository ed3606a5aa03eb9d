#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfx/filters.hpp"
#include "mfx/regression.hpp"
#include "mfx/timeseries.hpp"

namespace mfx {

enum class ModelKind {
    RandomWalk,
    UIRP,
    PPP,
    MM1,
    MM2,
    TYLR1,
    TYLR2,
    MF_UIRP,
    MF_PPP,
    MF_MM1,
    MF_MM2,
    MF_TYLR1,
    MF_TYLR2,
};

/// Table order: benchmark, classical models, mixed-frequency models.
inline constexpr std::array<ModelKind, 13> kAllModels = {
    ModelKind::RandomWalk, ModelKind::UIRP,   ModelKind::PPP,     ModelKind::MM1,    ModelKind::MM2,
    ModelKind::TYLR1,      ModelKind::TYLR2,  ModelKind::MF_UIRP, ModelKind::MF_PPP, ModelKind::MF_MM1,
    ModelKind::MF_MM2,     ModelKind::MF_TYLR1, ModelKind::MF_TYLR2,
};

/// "RW", "UIRP", ..., "MF-TYLR2".
[[nodiscard]] std::string_view acronym(ModelKind kind) noexcept;
/// Row label used in reports ("Random Walk" for the benchmark, else the acronym).
[[nodiscard]] std::string_view display_name(ModelKind kind) noexcept;
[[nodiscard]] ModelKind parse_model(std::string_view text);
[[nodiscard]] bool is_mixed_frequency(ModelKind kind) noexcept;
[[nodiscard]] bool uses_output_gap(ModelKind kind) noexcept;

struct ModelSpec {
    ModelKind kind = ModelKind::RandomWalk;
    bool restrict_alpha_zero = false;
    /// Money coefficient fixed to one (classical MM1/MM2 only).
    bool restrict_money_unity = false;

    /// Throws IllegalRestriction for flags that do not apply to `kind`.
    void validate() const;
};

struct DatasetConfig {
    Aggregation aggregation = Aggregation::LastOfQuarter;
    double hp_lambda = kHpLambdaQuarterly;
};

/// Raw transformed inputs, one series per country and role.
struct DatasetInputs {
    TimeSeries log_fx_quarterly;  ///< s_t, quarterly log level
    TimeSeries interest_domestic, interest_foreign;      ///< monthly
    TimeSeries log_cpi_domestic, log_cpi_foreign;        ///< monthly
    TimeSeries log_money_domestic, log_money_foreign;    ///< monthly
    TimeSeries log_gdp_domestic, log_gdp_foreign;        ///< quarterly
};

/// Every regressor and target on one common quarterly span. Differentials
/// are domestic minus foreign. Monthly series cover exactly the months of
/// the quarterly span.
struct Dataset {
    TimeSeries ds;      ///< quarterly log exchange-rate return
    TimeSeries log_fx;  ///< quarterly log level
    TimeSeries i_diff_m, p_diff_m, m_diff_m, pi_diff_m;
    TimeSeries i_diff_q, p_diff_q, m_diff_q, pi_diff_q;
    TimeSeries y_diff_q;
    TimeSeries ygap_diff_q;  ///< HP cycle over the full sample
    /// Country histories up to the last quarter; they may start before the span.
    TimeSeries log_gdp_domestic, log_gdp_foreign;
    TimeSeries log_cpi_domestic, log_cpi_foreign;
    DatasetConfig config;
    std::map<std::string, std::string> metadata;

    [[nodiscard]] Period first_quarter() const { return ds.start(); }
    [[nodiscard]] Period last_quarter() const { return ds.end(); }
    [[nodiscard]] int quarters() const { return static_cast<int>(ds.size()); }
    /// Throws InvalidArgument when the span invariants are broken.
    void validate() const;
};

/// Derive differentials, returns, inflation and gaps, then trim to the
/// common quarterly span (optionally clipped to [clip_first, clip_last]).
[[nodiscard]] Dataset build_dataset(const DatasetInputs& inputs, const DatasetConfig& config,
                                    std::optional<Period> clip_first = std::nullopt,
                                    std::optional<Period> clip_last = std::nullopt);

/// Restrict a dataset to the quarters [first, last].
[[nodiscard]] Dataset clip_dataset(const Dataset& data, const Period& first, const Period& last);

enum class FundamentalsTiming {
    Realized,  ///< regressors dated with the target quarter
    Lagged,    ///< regressors shifted one quarter back
};

struct ForecastOptions {
    FundamentalsTiming timing = FundamentalsTiming::Realized;
    /// Use the full-sample HP gap instead of re-filtering at each origin.
    bool full_sample_gap = false;
    /// Benchmark forecasts the last observed return instead of zero.
    bool rw_in_differences = false;
};

/// Regression design for one model on one dataset. Row k targets quarter
/// periods[k]. Column labels carry their timing: "_t-k" counts quarters and
/// "_3t-k" counts months back from the target quarter's last month.
struct ModelDesign {
    std::vector<double> y;
    DesignMatrix x;
    std::vector<Period> periods;
    bool intercept = true;
    /// Regressor moved to the left-hand side (money under unit restriction).
    std::vector<double> offset;
};

/// Builds (y, X) for `spec`. `gap` replaces the dataset's output-gap
/// differential when given. RandomWalk yields an empty design.
[[nodiscard]] ModelDesign build_design(const ModelSpec& spec, const Dataset& data,
                                       const ForecastOptions& options = {},
                                       const TimeSeries* gap = nullptr);

/// Output-gap differential known when forecasting `target` (HP filter on the
/// GDP differential history ending at the information date).
[[nodiscard]] TimeSeries gap_for_target(const Dataset& data, const Period& target,
                                        const ForecastOptions& options);

struct OriginForecast {
    Period target;
    double forecast = 0.0;
    std::optional<RegressionFit> fit;  ///< absent for the benchmark
};

/// Fit on rows dated up to `origin` (the trailing `window` quarters when
/// given) and forecast the return of origin + 1.
[[nodiscard]] OriginForecast forecast_at_origin(const ModelSpec& spec, const Dataset& data,
                                                const Period& origin, const ForecastOptions& options = {},
                                                std::optional<int> window = std::nullopt);

[[nodiscard]] double forecast_one_step(const ModelSpec& spec, const Dataset& data, const Period& origin,
                                       const ForecastOptions& options = {});

}  // namespace mfx
