#include "mfx/regression.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "mfx/error.hpp"

namespace mfx {

DesignMatrix::DesignMatrix(int rows, std::vector<std::string> labels)
    : DesignMatrix(rows, labels, std::vector<double>(static_cast<std::size_t>(rows) * labels.size(), 0.0)) {}

DesignMatrix::DesignMatrix(int rows, std::vector<std::string> labels, std::vector<double> data)
    : rows_(rows), labels_(std::move(labels)), data_(std::move(data)) {
    if (rows_ < 0 || data_.size() != static_cast<std::size_t>(rows_) * labels_.size()) {
        throw Error(ErrorCode::DimensionMismatch, "design data does not match rows x labels");
    }
    if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
        throw Error(ErrorCode::InvalidArgument, "duplicate column label");
    }
}

std::vector<double> DesignMatrix::column(int c) const {
    std::vector<double> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) out[static_cast<std::size_t>(r)] = (*this)(r, c);
    return out;
}

DesignMatrix DesignMatrix::row_slice(int first, int count) const {
    if (first < 0 || count < 0 || first + count > rows_) throw Error(ErrorCode::DimensionMismatch, "row_slice");
    const auto begin = data_.begin() + static_cast<std::ptrdiff_t>(index(first, 0));
    const auto end = begin + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(count) * labels_.size());
    return {count, labels_, std::vector<double>(begin, end)};
}

DesignMatrix DesignMatrix::with_column(std::string label, std::span<const double> values) const {
    if (values.size() != static_cast<std::size_t>(rows_)) throw Error(ErrorCode::DimensionMismatch, "with_column");
    auto labels = labels_;
    labels.push_back(std::move(label));
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(rows_) * labels.size());
    for (int r = 0; r < rows_; ++r) {
        const auto src = row(r);
        data.insert(data.end(), src.begin(), src.end());
        data.push_back(values[static_cast<std::size_t>(r)]);
    }
    return {rows_, std::move(labels), std::move(data)};
}

double RegressionFit::coefficient(const std::string& label) const {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw Error(ErrorCode::InvalidArgument, "no coefficient '" + label + "'");
    return coefficients[static_cast<std::size_t>(it - labels.begin())];
}

double RegressionFit::std_error(int k) const { return std::sqrt(covariance(k, k)); }

namespace {

// Householder triangularisation of a column-major n x p matrix. On return the
// upper triangle of `a` holds R and `qty` holds Q'y.
struct QrWork {
    int n = 0;
    int p = 0;
    std::vector<double> a;
    std::vector<double> qty;

    double* col(int c) { return a.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(n); }
    [[nodiscard]] double r(int i, int j) const { return a[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)]; }
};

QrWork make_work(const DesignMatrix& x, std::span<const double> y, bool intercept) {
    QrWork w;
    w.n = x.rows();
    w.p = x.cols() + (intercept ? 1 : 0);
    w.a.assign(static_cast<std::size_t>(w.n) * static_cast<std::size_t>(w.p), 0.0);
    for (int r = 0; r < w.n; ++r) {
        if (intercept) w.col(0)[r] = 1.0;
        for (int c = 0; c < x.cols(); ++c) w.col(c + (intercept ? 1 : 0))[r] = x(r, c);
    }
    w.qty.assign(y.begin(), y.end());
    return w;
}

void triangularize(QrWork& w) {
    const int n = w.n;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 0; k < w.p; ++k) {
        double* ck = w.col(k);
        double norm = 0.0;
        for (int i = k; i < n; ++i) norm = std::hypot(norm, ck[i]);
        if (norm == 0.0) continue;
        const double alpha = ck[k] > 0.0 ? -norm : norm;
        double vnorm2 = 0.0;
        for (int i = k; i < n; ++i) {
            v[static_cast<std::size_t>(i)] = ck[i];
            if (i == k) v[static_cast<std::size_t>(i)] -= alpha;
            vnorm2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        }
        auto reflect = [&](double* target) {
            double dot = 0.0;
            for (int i = k; i < n; ++i) dot += v[static_cast<std::size_t>(i)] * target[i];
            const double scale = 2.0 * dot / vnorm2;
            for (int i = k; i < n; ++i) target[i] -= scale * v[static_cast<std::size_t>(i)];
        };
        for (int c = k + 1; c < w.p; ++c) reflect(w.col(c));
        reflect(w.qty.data());
        ck[k] = alpha;
        for (int i = k + 1; i < n; ++i) ck[i] = 0.0;
    }
}

void check_shape(const DesignMatrix& x, std::span<const double> y, int p) {
    const int n = x.rows();
    if (y.size() != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::DimensionMismatch,
                    std::to_string(n) + " design rows vs " + std::to_string(y.size()) + " targets");
    }
    if (p == 0) throw Error(ErrorCode::DimensionMismatch, "no regressors");
    if (n < p) {
        throw Error(ErrorCode::DimensionMismatch, std::to_string(n) + " rows for " + std::to_string(p) + " parameters");
    }
}

}  // namespace

std::vector<double> prefix_ssr(const DesignMatrix& x, std::span<const double> y) {
    check_shape(x, y, x.cols());
    QrWork w = make_work(x, y, false);
    triangularize(w);
    // SSR with the first j+1 columns is the squared tail of Q'y from j+1 on.
    std::vector<double> out(static_cast<std::size_t>(w.p));
    double tail = 0.0;
    for (int i = w.n - 1; i >= 0; --i) {
        if (i < w.p) out[static_cast<std::size_t>(i)] = tail;
        tail += w.qty[static_cast<std::size_t>(i)] * w.qty[static_cast<std::size_t>(i)];
    }
    return out;
}

RegressionFit ols_fit(const DesignMatrix& x, std::span<const double> y, bool intercept) {
    const int n = x.rows();
    const int p = x.cols() + (intercept ? 1 : 0);
    check_shape(x, y, p);
    QrWork w = make_work(x, y, intercept);
    triangularize(w);
    const auto un = static_cast<std::size_t>(n);
    auto& qty = w.qty;

    double rmax = 0.0;
    double rmin = INFINITY;
    for (int k = 0; k < p; ++k) {
        rmax = std::max(rmax, std::abs(w.r(k, k)));
        rmin = std::min(rmin, std::abs(w.r(k, k)));
    }
    if (!(rmin >= 1e-10 * rmax) || rmax == 0.0) {
        const double cond = rmin > 0.0 ? rmax / rmin : INFINITY;
        throw Error(ErrorCode::RankDeficient, "condition estimate " + std::to_string(cond));
    }

    RegressionFit fit;
    fit.intercept = intercept;
    if (intercept) fit.labels.push_back("const");
    fit.labels.insert(fit.labels.end(), x.labels().begin(), x.labels().end());

    auto r_at = [&](int i, int j) { return w.r(i, j); };
    fit.coefficients.assign(static_cast<std::size_t>(p), 0.0);
    for (int i = p - 1; i >= 0; --i) {
        double s = qty[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < p; ++j) s -= r_at(i, j) * fit.coefficients[static_cast<std::size_t>(j)];
        fit.coefficients[static_cast<std::size_t>(i)] = s / r_at(i, i);
    }

    fit.fitted.resize(un);
    fit.residuals.resize(un);
    for (int r = 0; r < n; ++r) {
        const auto ur = static_cast<std::size_t>(r);
        fit.fitted[ur] = predict(fit, x.row(r));
        fit.residuals[ur] = y[ur] - fit.fitted[ur];
    }
    fit.ssr = std::inner_product(fit.residuals.begin(), fit.residuals.end(), fit.residuals.begin(), 0.0);
    fit.sigma2 = n > p ? fit.ssr / (n - p) : std::nan("");

    const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sst = 0.0;
    for (double yi : y) sst += (yi - ybar) * (yi - ybar);
    fit.r2 = sst > 0.0 ? 1.0 - fit.ssr / sst : (fit.ssr == 0.0 ? 1.0 : 0.0);

    // (X'X)^-1 = R^-1 R^-T.
    const auto up = static_cast<std::size_t>(p);
    std::vector<double> rinv(up * up, 0.0);  // row-major upper triangular
    for (int j = 0; j < p; ++j) {
        rinv[static_cast<std::size_t>(j) * up + static_cast<std::size_t>(j)] = 1.0 / r_at(j, j);
        for (int i = j - 1; i >= 0; --i) {
            double s = 0.0;
            for (int k = i + 1; k <= j; ++k) s += r_at(i, k) * rinv[static_cast<std::size_t>(k) * up + static_cast<std::size_t>(j)];
            rinv[static_cast<std::size_t>(i) * up + static_cast<std::size_t>(j)] = -s / r_at(i, i);
        }
    }
    fit.covariance.n = p;
    fit.covariance.data.assign(up * up, 0.0);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            double s = 0.0;
            for (int k = std::max(i, j); k < p; ++k) {
                s += rinv[static_cast<std::size_t>(i) * up + static_cast<std::size_t>(k)] *
                     rinv[static_cast<std::size_t>(j) * up + static_cast<std::size_t>(k)];
            }
            fit.covariance.data[static_cast<std::size_t>(i) * up + static_cast<std::size_t>(j)] = fit.sigma2 * s;
        }
    }
    return fit;
}

double predict(const RegressionFit& fit, std::span<const double> x_row) {
    const std::size_t offset = fit.intercept ? 1 : 0;
    if (x_row.size() + offset != fit.coefficients.size()) {
        throw Error(ErrorCode::DimensionMismatch,
                    "row of " + std::to_string(x_row.size()) + " for " + std::to_string(fit.coefficients.size()) + " coefficients");
    }
    double value = fit.intercept ? fit.coefficients[0] : 0.0;
    for (std::size_t k = 0; k < x_row.size(); ++k) value += fit.coefficients[k + offset] * x_row[k];
    return value;
}

std::vector<double> exp_almon_weights(std::array<double, 2> theta, int K) {
    if (K < 0) throw Error(ErrorCode::InvalidArgument, "K must be >= 0");
    std::vector<double> w(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) w[static_cast<std::size_t>(k)] = theta[0] * k + theta[1] * k * k;
    const double top = *std::max_element(w.begin(), w.end());
    double total = 0.0;
    for (double& wk : w) total += (wk = std::exp(wk - top));
    for (double& wk : w) wk /= total;
    return w;
}

std::vector<double> beta_weights(double theta1, double theta2, int K) {
    if (!(theta1 > 0.0) || !(theta2 > 0.0)) throw Error(ErrorCode::InvalidShape, "Beta weights need theta > 0");
    if (K < 0) throw Error(ErrorCode::InvalidArgument, "K must be >= 0");
    std::vector<double> w(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) {
        const double u = static_cast<double>(k + 1) / (K + 2);
        w[static_cast<std::size_t>(k)] = (theta1 - 1.0) * std::log(u) + (theta2 - 1.0) * std::log1p(-u);
    }
    const double top = *std::max_element(w.begin(), w.end());
    double total = 0.0;
    for (double& wk : w) total += (wk = std::exp(wk - top));
    for (double& wk : w) wk /= total;
    return w;
}

}  // namespace mfx
