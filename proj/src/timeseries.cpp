#include "mfx/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "mfx/error.hpp"

namespace mfx {

namespace {

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

int parse_int(std::string_view text, std::string_view whole) {
    int value = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw Error(ErrorCode::ParseError, "bad period '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Period::Period(int year, int index, Frequency freq) : year_(year), index_(index), freq_(freq) {
    if (index < 1 || index > periods_per_year(freq)) {
        throw Error(ErrorCode::InvalidArgument,
                    "period index " + std::to_string(index) + " out of range");
    }
}

Period Period::from_ordinal(long ordinal, Frequency freq) {
    const long ppy = periods_per_year(freq);
    const long year = floor_div(ordinal, ppy);
    return {static_cast<int>(year), static_cast<int>(ordinal - year * ppy) + 1, freq};
}

Period Period::parse(std::string_view text, Frequency freq) {
    if (text.size() < 6) throw Error(ErrorCode::ParseError, "bad period '" + std::string(text) + "'");
    const int year = parse_int(text.substr(0, 4), text);
    auto rest = text.substr(4);
    if (!rest.empty() && rest.front() == '-') rest.remove_prefix(1);
    if (!rest.empty() && (rest.front() == 'Q' || rest.front() == 'q')) {
        const int q = parse_int(rest.substr(1), text);
        if (q < 1 || q > 4) throw Error(ErrorCode::ParseError, "bad quarter in '" + std::string(text) + "'");
        if (freq == Frequency::Quarterly) return quarter(year, q);
        // A quarter label read at monthly frequency means its first month.
        return month(year, 3 * (q - 1) + 1);
    }
    const auto dash = rest.find('-');
    const int mon = parse_int(rest.substr(0, dash), text);
    if (dash != std::string_view::npos) {
        const int day = parse_int(rest.substr(dash + 1), text);
        if (day < 1 || day > 31) throw Error(ErrorCode::ParseError, "bad day in '" + std::string(text) + "'");
    }
    if (mon < 1 || mon > 12) throw Error(ErrorCode::ParseError, "bad month in '" + std::string(text) + "'");
    if (freq == Frequency::Monthly) return month(year, mon);
    return quarter(year, (mon - 1) / 3 + 1);
}

std::string Period::to_string() const {
    char buf[16];
    if (freq_ == Frequency::Monthly) {
        std::snprintf(buf, sizeof buf, "%04d-%02d", year_, index_);
    } else {
        std::snprintf(buf, sizeof buf, "%04dQ%d", year_, index_);
    }
    return buf;
}

long Period::operator-(const Period& other) const {
    if (freq_ != other.freq_) throw Error(ErrorCode::FrequencyMismatch, "period distance");
    return ordinal() - other.ordinal();
}

Period quarter_of(const Period& month) {
    if (month.freq() != Frequency::Monthly) throw Error(ErrorCode::WrongFrequency, "expected a month");
    return Period::quarter(month.year(), (month.index() - 1) / 3 + 1);
}

Period first_month(const Period& quarter) {
    if (quarter.freq() != Frequency::Quarterly) throw Error(ErrorCode::WrongFrequency, "expected a quarter");
    return Period::month(quarter.year(), 3 * (quarter.index() - 1) + 1);
}

Period last_month(const Period& quarter) { return first_month(quarter) + 2; }

TimeSeries::TimeSeries(Period start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
    if (values_.empty()) throw Error(ErrorCode::SeriesTooShort, "empty series");
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw Error(ErrorCode::MissingValue, "non-finite observation at " + period_at(k).to_string());
        }
    }
}

bool TimeSeries::contains(const Period& p) const {
    return p.freq() == freq() && p >= start_ && p <= end();
}

double TimeSeries::at(const Period& p) const {
    if (!contains(p)) throw Error(ErrorCode::InsufficientSpan, "no observation at " + p.to_string());
    return values_[static_cast<std::size_t>(p - start_)];
}

TimeSeries TimeSeries::slice(const Period& from, const Period& to) const {
    if (!contains(from) || !contains(to) || to < from) {
        throw Error(ErrorCode::InsufficientSpan,
                    "slice " + from.to_string() + ".." + to.to_string() + " outside " +
                        start_.to_string() + ".." + end().to_string());
    }
    const auto first = values_.begin() + (from - start_);
    const auto last = values_.begin() + (to - start_) + 1;
    return {from, std::vector<double>(first, last)};
}

TimeSeries log_transform(const TimeSeries& series) {
    std::vector<double> out(series.size());
    for (std::size_t k = 0; k < series.size(); ++k) {
        if (!(series[k] > 0.0)) {
            throw Error(ErrorCode::NonPositiveValue, "index " + std::to_string(k));
        }
        out[k] = std::log(series[k]);
    }
    return {series.start(), std::move(out)};
}

TimeSeries exp_transform(const TimeSeries& series) {
    std::vector<double> out(series.size());
    std::transform(series.values().begin(), series.values().end(), out.begin(),
                   [](double v) { return std::exp(v); });
    return {series.start(), std::move(out)};
}

TimeSeries diff(const TimeSeries& series, int order) {
    if (order < 1) throw Error(ErrorCode::InvalidArgument, "difference order must be >= 1");
    if (series.size() <= static_cast<std::size_t>(order)) {
        throw Error(ErrorCode::SeriesTooShort,
                    "length " + std::to_string(series.size()) + " with order " + std::to_string(order));
    }
    std::vector<double> v(series.values().begin(), series.values().end());
    for (int r = 0; r < order; ++r) {
        for (std::size_t k = 0; k + 1 < v.size(); ++k) v[k] = v[k + 1] - v[k];
        v.pop_back();
    }
    return {series.start() + order, std::move(v)};
}

TimeSeries differential(const TimeSeries& domestic, const TimeSeries& foreign) {
    if (domestic.freq() != foreign.freq()) throw Error(ErrorCode::FrequencyMismatch, "differential");
    const Period from = std::max(domestic.start(), foreign.start());
    const Period to = std::min(domestic.end(), foreign.end());
    if (to < from) throw Error(ErrorCode::EmptyOverlap, "differential");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(to - from) + 1);
    for (Period p = from; p <= to; p = p + 1) out.push_back(domestic.at(p) - foreign.at(p));
    return {from, std::move(out)};
}

TimeSeries aggregate_to_quarterly(const TimeSeries& monthly, Aggregation method) {
    if (monthly.freq() != Frequency::Monthly) {
        throw Error(ErrorCode::WrongFrequency, "aggregate_to_quarterly needs a monthly series");
    }
    Period q = quarter_of(monthly.start());
    if (first_month(q) < monthly.start()) q = q + 1;
    std::vector<double> out;
    const Period q0 = q;
    for (; last_month(q) <= monthly.end(); q = q + 1) {
        const Period m0 = first_month(q);
        if (method == Aggregation::LastOfQuarter) {
            out.push_back(monthly.at(m0 + 2));
        } else {
            out.push_back((monthly.at(m0) + monthly.at(m0 + 1) + monthly.at(m0 + 2)) / 3.0);
        }
    }
    if (out.empty()) throw Error(ErrorCode::NoCompleteQuarter, "span " + monthly.start().to_string() + ".." + monthly.end().to_string());
    return {q0, std::move(out)};
}

std::vector<TimeSeries> align_span(const std::vector<TimeSeries>& series) {
    if (series.empty()) return {};
    Period from = series.front().start();
    Period to = series.front().end();
    for (const auto& s : series) {
        if (s.freq() != series.front().freq()) throw Error(ErrorCode::FrequencyMismatch, "align_span");
        from = std::max(from, s.start());
        to = std::min(to, s.end());
    }
    if (to < from) throw Error(ErrorCode::EmptyOverlap, "align_span");
    std::vector<TimeSeries> out;
    out.reserve(series.size());
    for (const auto& s : series) out.push_back(s.slice(from, to));
    return out;
}

std::string_view to_string(Frequency f) noexcept {
    return f == Frequency::Monthly ? "monthly" : "quarterly";
}

std::string_view to_string(Aggregation a) noexcept {
    return a == Aggregation::LastOfQuarter ? "last" : "mean";
}

Frequency parse_frequency(std::string_view text) {
    if (text == "monthly" || text == "M") return Frequency::Monthly;
    if (text == "quarterly" || text == "Q") return Frequency::Quarterly;
    throw Error(ErrorCode::ParseError, "unknown frequency '" + std::string(text) + "'");
}

Aggregation parse_aggregation(std::string_view text) {
    if (text == "last" || text == "LastOfQuarter") return Aggregation::LastOfQuarter;
    if (text == "mean" || text == "QuarterMean") return Aggregation::QuarterMean;
    throw Error(ErrorCode::ParseError, "unknown aggregation '" + std::string(text) + "'");
}

}  // namespace mfx
