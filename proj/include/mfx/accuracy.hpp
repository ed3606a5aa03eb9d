#pragma once

#include <array>
#include <span>

namespace mfx {

inline constexpr std::array<double, 3> kSignificanceLevels = {0.01, 0.05, 0.10};

/// Outcome of a hypothesis test.
struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    /// Rejection of the null at 1%, 5% and 10%.
    std::array<bool, 3> reject{};
    /// Autocovariance lags, ADF augmentation order or KPSS bandwidth.
    int lags = 0;

    [[nodiscard]] bool rejects_at(double level) const;
};

/// "***", "**", "*" or "" for the strongest level at which the null is rejected.
[[nodiscard]] const char* significance_stars(const TestResult& result) noexcept;

/// Mean squared forecast error. Throws EmptyInput on an empty sequence.
[[nodiscard]] double msfe(std::span<const double> errors);

/// Bartlett-kernel long-run variance of `x` (demeaned) using `lags`
/// autocovariances, all normalised by n.
[[nodiscard]] double long_run_variance(std::span<const double> x, int lags);

/// Diebold-Mariano test under squared-error loss with
/// d_t = e_bench,t^2 - e_model,t^2, so a positive statistic favours the
/// model. Two-sided normal p-value; h - 1 HAC lags.
[[nodiscard]] TestResult diebold_mariano(std::span<const double> e_bench, std::span<const double> e_model, int h = 1);

/// Clark-West adjusted MSPE test of a small model nested in a large one:
/// f_t = e_small^2 - (e_large^2 - (f_small - f_large)^2). One-sided (upper
/// tail) p-value.
[[nodiscard]] TestResult clark_west(std::span<const double> e_small, std::span<const double> e_large,
                                    std::span<const double> f_small, std::span<const double> f_large, int h = 1);

}  // namespace mfx
