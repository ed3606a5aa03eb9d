#include "mfx/unit_root.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mfx/error.hpp"
#include "mfx/regression.hpp"

namespace mfx {

namespace {

constexpr std::size_t kMinLength = 15;

// Asymptotic critical values at 1%, 5%, 10%.
constexpr std::array<double, 3> kAdfCritConstant = {-3.43, -2.86, -2.57};
constexpr std::array<double, 3> kAdfCritTrend = {-3.96, -3.41, -3.12};

// MacKinnon (1994) approximate distribution for a single I(1) series.
struct MacKinnonSurface {
    double tau_min, tau_max, tau_star;
    std::array<double, 3> small_p;  // polynomial in tau, ascending powers
    std::array<double, 4> large_p;
};
constexpr MacKinnonSurface kSurfaceConstant{
    -18.83, 2.74, -1.61, {2.1659, 1.4412, 3.8269e-2}, {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2}};
constexpr MacKinnonSurface kSurfaceTrend{
    -16.18, 0.7, -2.89, {3.2512, 1.6047, 4.9588e-2}, {2.5261, 6.1654e-1, -3.7956e-1, -6.0285e-2}};

// KPSS critical values at 10%, 5%, 2.5%, 1%.
constexpr std::array<double, 4> kKpssPValues = {0.10, 0.05, 0.025, 0.01};
constexpr std::array<double, 4> kKpssCritLevel = {0.347, 0.463, 0.574, 0.739};
constexpr std::array<double, 4> kKpssCritTrend = {0.119, 0.146, 0.176, 0.216};

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double mackinnon_p(double tau, const MacKinnonSurface& s) {
    if (tau > s.tau_max) return 1.0;
    if (tau < s.tau_min) return 0.0;
    double z = 0.0;
    if (tau <= s.tau_star) {
        for (std::size_t k = s.small_p.size(); k-- > 0;) z = z * tau + s.small_p[k];
    } else {
        for (std::size_t k = s.large_p.size(); k-- > 0;) z = z * tau + s.large_p[k];
    }
    return normal_cdf(z);
}

// Keep an approximate p-value inside the band implied by the decisions so
// that reject[k] holds exactly when p <= level k.
double reconcile(double p, const std::array<bool, 3>& reject) {
    const auto& lv = kSignificanceLevels;
    if (reject[0]) return std::min(p, lv[0]);
    if (reject[1]) return std::clamp(p, std::nextafter(lv[0], 1.0), lv[1]);
    if (reject[2]) return std::clamp(p, std::nextafter(lv[1], 1.0), lv[2]);
    return std::max(p, std::nextafter(lv[2], 1.0));
}

// Rows of the ADF regression for `lags` augmentation terms over dy[first..].
// Columns: const, [trend], y_{t-1}, dy_{t-1}, ..., dy_{t-lags}.
DesignMatrix adf_design(std::span<const double> y, std::span<const double> dy, std::size_t first, int lags,
                        bool trend, std::vector<double>& target) {
    std::vector<std::string> labels{"const"};
    if (trend) labels.emplace_back("trend");
    labels.emplace_back("y_lag");
    for (int i = 1; i <= lags; ++i) labels.push_back("dy_lag" + std::to_string(i));

    const std::size_t rows = dy.size() - first;
    std::vector<double> data;
    data.reserve(rows * labels.size());
    target.clear();
    for (std::size_t j = first; j < dy.size(); ++j) {
        data.push_back(1.0);
        if (trend) data.push_back(static_cast<double>(j + 1));
        data.push_back(y[j]);
        for (int i = 1; i <= lags; ++i) data.push_back(dy[j - static_cast<std::size_t>(i)]);
        target.push_back(dy[j]);
    }
    return {static_cast<int>(rows), std::move(labels), std::move(data)};
}

}  // namespace

TestResult adf_test(const TimeSeries& series, AdfDeterministic deterministic, std::optional<int> max_lag) {
    const std::size_t n = series.size();
    if (n < kMinLength) throw Error(ErrorCode::SeriesTooShort, "ADF needs >= 15 observations");
    const bool trend = deterministic == AdfDeterministic::ConstantTrend;
    const int ndet = trend ? 2 : 1;

    int kmax = max_lag.value_or(static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25))));
    if (kmax < 0) throw Error(ErrorCode::InvalidArgument, "max_lag must be >= 0");
    kmax = std::min(kmax, std::max(0, static_cast<int>((n - 1) / 2) - ndet - 1));

    const auto y = series.values();
    std::vector<double> dy(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) dy[j] = y[j + 1] - y[j];

    // AIC over 0..kmax on the common sample; nested models share one QR.
    std::vector<double> target;
    int best = 0;
    if (kmax > 0) {
        const DesignMatrix full = adf_design(y, dy, static_cast<std::size_t>(kmax), kmax, trend, target);
        const auto ssr = prefix_ssr(full, target);
        const double nobs = full.rows();
        double best_aic = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= kmax; ++k) {
            const int params = ndet + 1 + k;
            const double aic = nobs * std::log(ssr[static_cast<std::size_t>(params - 1)] / nobs) + 2.0 * params;
            if (aic < best_aic) {
                best_aic = aic;
                best = k;
            }
        }
    }

    const DesignMatrix x = adf_design(y, dy, static_cast<std::size_t>(best), best, trend, target);
    const RegressionFit fit = ols_fit(x, target, false);
    const int rho = ndet;

    TestResult r;
    r.statistic = fit.coefficients[static_cast<std::size_t>(rho)] / fit.std_error(rho);
    r.lags = best;
    const auto& crit = trend ? kAdfCritTrend : kAdfCritConstant;
    for (std::size_t k = 0; k < crit.size(); ++k) r.reject[k] = r.statistic < crit[k];
    r.p_value = reconcile(mackinnon_p(r.statistic, trend ? kSurfaceTrend : kSurfaceConstant), r.reject);
    return r;
}

TestResult kpss_test(const TimeSeries& series, KpssDeterministic deterministic) {
    const std::size_t n = series.size();
    if (n < kMinLength) throw Error(ErrorCode::SeriesTooShort, "KPSS needs >= 15 observations");
    const auto y = series.values();

    std::vector<double> resid(n);
    if (deterministic == KpssDeterministic::Level) {
        const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
        for (std::size_t t = 0; t < n; ++t) resid[t] = y[t] - mean;
    } else {
        std::vector<double> t_index(n);
        std::iota(t_index.begin(), t_index.end(), 1.0);
        const RegressionFit fit = ols_fit(DesignMatrix(static_cast<int>(n), {"trend"}, t_index), y, true);
        resid = fit.residuals;
    }

    const int bandwidth = static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
    double partial = 0.0;
    double sum_sq = 0.0;
    for (double e : resid) {
        partial += e;
        sum_sq += partial * partial;
    }
    const double lrv = long_run_variance(resid, bandwidth);
    if (!(lrv > 0.0)) throw Error(ErrorCode::DegenerateVariance, "constant series in KPSS");

    TestResult r;
    r.statistic = sum_sq / (static_cast<double>(n) * static_cast<double>(n) * lrv);
    r.lags = bandwidth;
    const auto& crit = deterministic == KpssDeterministic::Level ? kKpssCritLevel : kKpssCritTrend;
    // crit[0] is the 10% value, crit[3] the 1% value.
    r.reject = {r.statistic >= crit[3], r.statistic >= crit[1], r.statistic >= crit[0]};

    double p;
    if (r.statistic >= crit.back()) {
        p = kKpssPValues.back();
    } else if (r.statistic < crit.front()) {
        p = kKpssPValues.front();
    } else {
        std::size_t k = 0;
        while (r.statistic >= crit[k + 1]) ++k;
        const double w = (r.statistic - crit[k]) / (crit[k + 1] - crit[k]);
        p = kKpssPValues[k] + w * (kKpssPValues[k + 1] - kKpssPValues[k]);
    }
    r.p_value = reconcile(p, r.reject);
    return r;
}

int integration_order(const TimeSeries& series, int max_order) {
    if (max_order < 0) throw Error(ErrorCode::InvalidArgument, "max_order must be >= 0");
    for (int d = 0; d <= max_order; ++d) {
        const TimeSeries s = d == 0 ? series : diff(series, d);
        if (adf_test(s).rejects_at(0.05) && !kpss_test(s).rejects_at(0.05)) return d;
    }
    throw Error(ErrorCode::OrderNotFound, "no order <= " + std::to_string(max_order));
}

Dataset difference_integrated(const Dataset& data, int max_order) {
    Dataset out = data;
    std::string differenced;
    auto maybe_diff = [&](const TimeSeries& quarterly, const char* name) {
        int order = 0;
        try {
            order = integration_order(quarterly, max_order);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::OrderNotFound) throw;
        }
        if (order == 1) differenced += (differenced.empty() ? "" : ",") + std::string(name);
        return order == 1;
    };
    if (maybe_diff(data.i_diff_q, "i_diff")) {
        out.i_diff_q = diff(data.i_diff_q);
        out.i_diff_m = diff(data.i_diff_m);
    }
    if (maybe_diff(data.p_diff_q, "p_diff")) {
        out.p_diff_q = diff(data.p_diff_q);
        out.p_diff_m = diff(data.p_diff_m);
    }
    if (maybe_diff(data.m_diff_q, "m_diff")) {
        out.m_diff_q = diff(data.m_diff_q);
        out.m_diff_m = diff(data.m_diff_m);
    }
    if (maybe_diff(data.y_diff_q, "y_diff")) out.y_diff_q = diff(data.y_diff_q);
    if (differenced.empty()) return data;

    out.metadata["difference_I1"] = differenced;
    return clip_dataset(out, data.first_quarter() + 1, data.last_quarter());
}

}  // namespace mfx
