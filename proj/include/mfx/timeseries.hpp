#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mfx {

enum class Frequency { Monthly, Quarterly };

[[nodiscard]] constexpr int periods_per_year(Frequency f) noexcept {
    return f == Frequency::Monthly ? 12 : 4;
}

/// High-frequency observations per low-frequency period (months per quarter).
inline constexpr int kMonthsPerQuarter = 3;

/// A calendar slot (month or quarter) of a given frequency.
class Period {
public:
    Period(int year, int index, Frequency freq);

    static Period month(int year, int month) { return {year, month, Frequency::Monthly}; }
    static Period quarter(int year, int quarter) { return {year, quarter, Frequency::Quarterly}; }
    static Period from_ordinal(long ordinal, Frequency freq);

    /// Accepts "YYYYQn", "YYYY-Qn", "YYYY-MM" and "YYYY-MM-DD". Dates are mapped
    /// onto `freq` (a quarterly period for 1994-04-01 is 1994Q2).
    static Period parse(std::string_view text, Frequency freq);

    [[nodiscard]] int year() const noexcept { return year_; }
    [[nodiscard]] int index() const noexcept { return index_; }
    [[nodiscard]] Frequency freq() const noexcept { return freq_; }

    /// Periods elapsed since year 0, index 1.
    [[nodiscard]] long ordinal() const noexcept {
        return static_cast<long>(year_) * periods_per_year(freq_) + (index_ - 1);
    }

    [[nodiscard]] std::string to_string() const;

    Period operator+(long n) const { return from_ordinal(ordinal() + n, freq_); }
    Period operator-(long n) const { return from_ordinal(ordinal() - n, freq_); }
    /// Signed distance in periods; both operands must share a frequency.
    long operator-(const Period& other) const;

    friend bool operator==(const Period&, const Period&) = default;
    friend std::strong_ordering operator<=>(const Period& a, const Period& b) {
        return a.ordinal() <=> b.ordinal();
    }

private:
    int year_;
    int index_;
    Frequency freq_;
};

[[nodiscard]] Period quarter_of(const Period& month);
[[nodiscard]] Period first_month(const Period& quarter);
[[nodiscard]] Period last_month(const Period& quarter);

/// Gap-free, immutable series on a regular calendar.
class TimeSeries {
public:
    TimeSeries(Period start, std::vector<double> values);

    [[nodiscard]] Period start() const noexcept { return start_; }
    [[nodiscard]] Period end() const { return start_ + static_cast<long>(values_.size()) - 1; }
    [[nodiscard]] Frequency freq() const noexcept { return start_.freq(); }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t k) const { return values_[k]; }

    [[nodiscard]] Period period_at(std::size_t k) const { return start_ + static_cast<long>(k); }
    [[nodiscard]] bool contains(const Period& p) const;
    /// Value observed at `p`; throws InsufficientSpan when outside the series.
    [[nodiscard]] double at(const Period& p) const;
    /// Inclusive sub-range; throws InsufficientSpan unless [from, to] lies inside.
    [[nodiscard]] TimeSeries slice(const Period& from, const Period& to) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    Period start_;
    std::vector<double> values_;
};

enum class Aggregation { LastOfQuarter, QuarterMean };

[[nodiscard]] TimeSeries log_transform(const TimeSeries& series);
[[nodiscard]] TimeSeries exp_transform(const TimeSeries& series);
[[nodiscard]] TimeSeries diff(const TimeSeries& series, int order = 1);
/// domestic - foreign on the common span.
[[nodiscard]] TimeSeries differential(const TimeSeries& domestic, const TimeSeries& foreign);
/// Partial quarters at either edge are dropped.
[[nodiscard]] TimeSeries aggregate_to_quarterly(const TimeSeries& monthly, Aggregation method);
/// Trims every input to the common span; order preserved.
[[nodiscard]] std::vector<TimeSeries> align_span(const std::vector<TimeSeries>& series);

[[nodiscard]] std::string_view to_string(Frequency f) noexcept;
[[nodiscard]] std::string_view to_string(Aggregation a) noexcept;
[[nodiscard]] Frequency parse_frequency(std::string_view text);
[[nodiscard]] Aggregation parse_aggregation(std::string_view text);

}  // namespace mfx
