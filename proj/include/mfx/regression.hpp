#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace mfx {

/// Dense row-major regressor matrix with one label per column.
class DesignMatrix {
public:
    DesignMatrix() = default;
    DesignMatrix(int rows, std::vector<std::string> labels);
    DesignMatrix(int rows, std::vector<std::string> labels, std::vector<double> data);

    [[nodiscard]] int rows() const noexcept { return rows_; }
    [[nodiscard]] int cols() const noexcept { return static_cast<int>(labels_.size()); }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    [[nodiscard]] double operator()(int r, int c) const { return data_[index(r, c)]; }
    double& operator()(int r, int c) { return data_[index(r, c)]; }
    [[nodiscard]] std::span<const double> row(int r) const {
        return {data_.data() + index(r, 0), static_cast<std::size_t>(cols())};
    }
    [[nodiscard]] std::vector<double> column(int c) const;

    /// Rows [first, first + count).
    [[nodiscard]] DesignMatrix row_slice(int first, int count) const;
    /// Copy with one extra column appended.
    [[nodiscard]] DesignMatrix with_column(std::string label, std::span<const double> values) const;

private:
    [[nodiscard]] std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * labels_.size() + static_cast<std::size_t>(c);
    }

    int rows_ = 0;
    std::vector<std::string> labels_;
    std::vector<double> data_;
};

/// Row-major square matrix.
struct SquareMatrix {
    int n = 0;
    std::vector<double> data;
    [[nodiscard]] double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * n + c]; }
};

struct RegressionFit {
    bool intercept = false;
    std::vector<std::string> labels;   ///< "const" first when an intercept is present
    std::vector<double> coefficients;  ///< same order as labels
    std::vector<double> residuals;
    std::vector<double> fitted;
    double ssr = 0.0;
    double sigma2 = 0.0;  ///< SSR / (n - p), p counting the intercept
    SquareMatrix covariance;
    double r2 = 0.0;

    [[nodiscard]] int nobs() const noexcept { return static_cast<int>(residuals.size()); }
    [[nodiscard]] int nparams() const noexcept { return static_cast<int>(coefficients.size()); }
    /// Coefficient on a regressor label (or "const").
    [[nodiscard]] double coefficient(const std::string& label) const;
    [[nodiscard]] double std_error(int k) const;
};

/// Least squares through Householder QR. Throws RankDeficient when the
/// smallest |R_ii| falls below 1e-10 times the largest.
[[nodiscard]] RegressionFit ols_fit(const DesignMatrix& x, std::span<const double> y, bool intercept);

/// Residual sums of squares of the regressions of y on the first 1, 2, ...,
/// cols(X) columns of X (no implicit intercept), from a single factorisation.
[[nodiscard]] std::vector<double> prefix_ssr(const DesignMatrix& x, std::span<const double> y);

/// alpha + x_row . beta; `x_row` excludes the intercept.
[[nodiscard]] double predict(const RegressionFit& fit, std::span<const double> x_row);

/// Normalised exponential Almon lag weights, k = 0..K.
[[nodiscard]] std::vector<double> exp_almon_weights(std::array<double, 2> theta, int K);

/// Normalised Beta lag weights on u_k = (k+1)/(K+2), k = 0..K.
[[nodiscard]] std::vector<double> beta_weights(double theta1, double theta2, int K);

}  // namespace mfx
