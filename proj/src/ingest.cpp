#include "mfx/ingest.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mfx/error.hpp"

namespace mfx {

using json = nlohmann::json;

namespace {

constexpr std::string_view kSnapshotFormat = "mfx-dataset-snapshot";

struct RoleInfo {
    Role role;
    std::string_view name;
};

constexpr std::array<RoleInfo, 9> kRoleNames = {{
    {Role::ExchangeRate, "ExchangeRate"},
    {Role::InterestDomestic, "InterestDomestic"},
    {Role::InterestForeign, "InterestForeign"},
    {Role::CpiDomestic, "CpiDomestic"},
    {Role::CpiForeign, "CpiForeign"},
    {Role::MoneyDomestic, "MoneyDomestic"},
    {Role::MoneyForeign, "MoneyForeign"},
    {Role::GdpDomestic, "GdpDomestic"},
    {Role::GdpForeign, "GdpForeign"},
}};

std::string line_tag(std::size_t line) { return "row " + std::to_string(line); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t begin = 0;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (line[k] == '"') quoted = !quoted;
        if (line[k] == ',' && !quoted) {
            cells.push_back(trim(line.substr(begin, k - begin)));
            begin = k + 1;
        }
    }
    cells.push_back(trim(line.substr(begin)));
    return cells;
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error(ErrorCode::IoError, "SHA-256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int k = 0; k < len; ++k) {
        out.push_back(kHex[digest[k] >> 4]);
        out.push_back(kHex[digest[k] & 0xF]);
    }
    return out;
}

std::string encode_values(std::span<const double> values) {
    std::vector<unsigned char> bytes;
    bytes.reserve(values.size() * 8);
    for (double v : values) {
        const auto bits = std::bit_cast<std::uint64_t>(v);
        for (int b = 0; b < 8; ++b) bytes.push_back(static_cast<unsigned char>(bits >> (8 * b)));
    }
    std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(), static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::vector<double> decode_values(const std::string& b64, std::size_t count) {
    std::vector<unsigned char> bytes(3 * (b64.size() / 4) + 3);
    const int n = EVP_DecodeBlock(bytes.data(), reinterpret_cast<const unsigned char*>(b64.data()), static_cast<int>(b64.size()));
    if (n < 0 || static_cast<std::size_t>(n) < count * 8) throw Error(ErrorCode::ChecksumFailure, "corrupt value array");
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[8 * k + static_cast<std::size_t>(b)]) << (8 * b);
        out[k] = std::bit_cast<double>(bits);
    }
    return out;
}

json series_json(const TimeSeries& s) {
    return {{"start", s.start().to_string()},
            {"frequency", std::string(to_string(s.freq()))},
            {"length", s.size()},
            {"values", encode_values(s.values())}};
}

TimeSeries series_from_json(const json& j) {
    const Frequency f = parse_frequency(j.at("frequency").get<std::string>());
    const Period start = Period::parse(j.at("start").get<std::string>(), f);
    return {start, decode_values(j.at("values").get<std::string>(), j.at("length").get<std::size_t>())};
}

// Member order of Dataset, shared by writer and reader.
constexpr std::array<std::string_view, 16> kSeriesKeys = {
    "ds",       "log_fx",   "i_diff_m", "p_diff_m",    "m_diff_m",         "pi_diff_m",
    "i_diff_q", "p_diff_q", "m_diff_q", "pi_diff_q",   "y_diff_q",         "ygap_diff_q",
    "log_gdp_domestic", "log_gdp_foreign", "log_cpi_domestic", "log_cpi_foreign",
};

std::array<const TimeSeries*, 16> series_members(const Dataset& d) {
    return {&d.ds,       &d.log_fx,   &d.i_diff_m,  &d.p_diff_m, &d.m_diff_m,    &d.pi_diff_m,
            &d.i_diff_q, &d.p_diff_q, &d.m_diff_q,  &d.pi_diff_q, &d.y_diff_q,   &d.ygap_diff_q,
            &d.log_gdp_domestic, &d.log_gdp_foreign, &d.log_cpi_domestic, &d.log_cpi_foreign};
}

}  // namespace

std::string_view to_string(Role role) noexcept {
    for (const auto& r : kRoleNames) {
        if (r.role == role) return r.name;
    }
    return "?";
}

std::string_view to_string(Transform t) noexcept {
    switch (t) {
        case Transform::None: return "none";
        case Transform::Log: return "log";
        case Transform::PercentToDecimal: return "percent_to_decimal";
    }
    return "?";
}

Role parse_role(std::string_view text) {
    for (const auto& r : kRoleNames) {
        if (r.name == text) return r.role;
    }
    throw Error(ErrorCode::ParseError, "unknown role '" + std::string(text) + "'");
}

Transform parse_transform(std::string_view text) {
    if (text == "none" || text == "None") return Transform::None;
    if (text == "log" || text == "Log") return Transform::Log;
    if (text == "percent_to_decimal" || text == "PercentToDecimal") return Transform::PercentToDecimal;
    throw Error(ErrorCode::ParseError, "unknown transform '" + std::string(text) + "'");
}

Frequency expected_frequency(Role role) noexcept {
    return role == Role::GdpDomestic || role == Role::GdpForeign ? Frequency::Quarterly : Frequency::Monthly;
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open manifest " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }

    Manifest m;
    try {
        if (j.contains("span")) {
            m.span_first = Period::parse(j["span"].at("start").get<std::string>(), Frequency::Quarterly);
            m.span_last = Period::parse(j["span"].at("end").get<std::string>(), Frequency::Quarterly);
        }
        if (j.contains("config")) {
            const auto& c = j["config"];
            if (c.contains("aggregation")) m.config.aggregation = parse_aggregation(c["aggregation"].get<std::string>());
            if (c.contains("hp_lambda")) m.config.hp_lambda = c["hp_lambda"].get<double>();
        }
        const auto base = path.parent_path();
        for (const auto& s : j.at("series")) {
            SeriesSource src;
            src.role = parse_role(s.at("role").get<std::string>());
            src.path = s.at("path").get<std::string>();
            if (src.path.is_relative()) src.path = base / src.path;
            src.column_date = s.value("date_column", std::string("DATE"));
            src.column_value = s.at("value_column").get<std::string>();
            src.frequency = s.contains("frequency") ? parse_frequency(s["frequency"].get<std::string>())
                                                    : expected_frequency(src.role);
            src.transform = parse_transform(s.value("transform", std::string("none")));
            m.sources.push_back(std::move(src));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
    return m;
}

TimeSeries read_csv(const SeriesSource& source) {
    std::ifstream in(source.path);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + source.path.string());

    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::ParseError, source.path.string() + ": missing header");
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    const auto header = split_csv(line);
    const auto find_col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw Error(ErrorCode::ParseError, source.path.string() + ": no column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t date_col = find_col(source.column_date);
    const std::size_t value_col = find_col(source.column_value);

    std::optional<Period> start;
    std::optional<Period> previous;
    std::vector<double> values;
    for (std::size_t line_no = 2; std::getline(in, line); ++line_no) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        const auto where = source.path.string() + " " + line_tag(line_no);
        if (cells.size() <= std::max(date_col, value_col)) throw Error(ErrorCode::ParseError, where + ": too few cells");

        Period period = Period::month(1970, 1);
        try {
            period = Period::parse(cells[date_col], source.frequency);
        } catch (const Error&) {
            throw Error(ErrorCode::ParseError, where + ": bad date '" + std::string(cells[date_col]) + "'");
        }
        if (previous && period <= *previous) throw Error(ErrorCode::NonMonotonicDates, where);
        if (previous && period != *previous + 1) {
            throw Error(ErrorCode::MissingValue, where + ": gap after " + previous->to_string());
        }

        const auto cell = cells[value_col];
        if (cell.empty() || cell == ".") throw Error(ErrorCode::MissingValue, where);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
            throw Error(ErrorCode::ParseError, where + ": bad number '" + std::string(cell) + "'");
        }
        switch (source.transform) {
            case Transform::None: break;
            case Transform::PercentToDecimal: v /= 100.0; break;
            case Transform::Log:
                if (!(v > 0.0)) throw Error(ErrorCode::NonPositiveValue, where);
                v = std::log(v);
                break;
        }
        if (!start) start = period;
        previous = period;
        values.push_back(v);
    }
    if (!start) throw Error(ErrorCode::SeriesTooShort, source.path.string() + ": no data rows");
    return {*start, std::move(values)};
}

Dataset assemble_dataset(const std::vector<SeriesSource>& sources, const Period& first, const Period& last,
                         const DatasetConfig& config) {
    std::map<Role, const SeriesSource*> by_role;
    for (const auto& s : sources) {
        if (!by_role.emplace(s.role, &s).second) {
            throw Error(ErrorCode::InvalidArgument, "role " + std::string(to_string(s.role)) + " listed twice");
        }
        if (s.frequency != expected_frequency(s.role)) {
            throw Error(ErrorCode::WrongFrequency, std::string(to_string(s.role)) + " must be " +
                                                       std::string(to_string(expected_frequency(s.role))));
        }
    }
    for (Role r : kAllRoles) {
        if (!by_role.contains(r)) throw Error(ErrorCode::MissingRole, std::string(to_string(r)));
    }
    auto load = [&](Role r) { return read_csv(*by_role.at(r)); };

    const DatasetInputs inputs{
        aggregate_to_quarterly(load(Role::ExchangeRate), config.aggregation),
        load(Role::InterestDomestic),
        load(Role::InterestForeign),
        load(Role::CpiDomestic),
        load(Role::CpiForeign),
        load(Role::MoneyDomestic),
        load(Role::MoneyForeign),
        load(Role::GdpDomestic),
        load(Role::GdpForeign),
    };
    Dataset data = build_dataset(inputs, config, first, last);
    for (const auto& s : sources) {
        data.metadata["source." + std::string(to_string(s.role))] =
            s.path.filename().string() + ":" + s.column_value + ":" + std::string(to_string(s.transform));
    }
    data.metadata["span.requested"] = first.to_string() + ".." + last.to_string();
    data.metadata["span"] = data.first_quarter().to_string() + ".." + data.last_quarter().to_string();
    data.metadata["aggregation"] = std::string(to_string(config.aggregation));
    return data;
}

Dataset assemble_dataset(const Manifest& manifest) {
    return assemble_dataset(manifest.sources, manifest.span_first, manifest.span_last, manifest.config);
}

std::string snapshot_json(const Dataset& data) {
    json payload;
    payload["config"] = {{"aggregation", std::string(to_string(data.config.aggregation))},
                         {"hp_lambda", data.config.hp_lambda}};
    payload["metadata"] = data.metadata;
    const auto members = series_members(data);
    for (std::size_t k = 0; k < members.size(); ++k) payload["series"][std::string(kSeriesKeys[k])] = series_json(*members[k]);

    const std::string body = payload.dump();
    json doc;
    doc["format"] = kSnapshotFormat;
    doc["version"] = kSnapshotVersion;
    doc["checksum"] = "sha256:" + sha256_hex(body);
    doc["payload"] = payload;
    return doc.dump(1);
}

Dataset parse_snapshot(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ChecksumFailure, std::string("unreadable snapshot: ") + e.what());
    }
    try {
        if (doc.at("format").get<std::string>() != kSnapshotFormat) {
            throw Error(ErrorCode::VersionMismatch, "not a dataset snapshot");
        }
        const int version = doc.at("version").get<int>();
        if (version != kSnapshotVersion) {
            throw Error(ErrorCode::VersionMismatch, "snapshot version " + std::to_string(version) + ", expected " +
                                                        std::to_string(kSnapshotVersion));
        }
        const json& payload = doc.at("payload");
        if (doc.at("checksum").get<std::string>() != "sha256:" + sha256_hex(payload.dump())) {
            throw Error(ErrorCode::ChecksumFailure, "payload digest mismatch");
        }

        const json& s = payload.at("series");
        auto get = [&](std::size_t k) { return series_from_json(s.at(std::string(kSeriesKeys[k]))); };
        Dataset d{get(0),  get(1),  get(2),  get(3),  get(4),  get(5),  get(6),  get(7),
                  get(8),  get(9),  get(10), get(11), get(12), get(13), get(14), get(15),
                  DatasetConfig{parse_aggregation(payload.at("config").at("aggregation").get<std::string>()),
                                payload.at("config").at("hp_lambda").get<double>()},
                  payload.at("metadata").get<std::map<std::string, std::string>>()};
        d.validate();
        return d;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ChecksumFailure, std::string("malformed snapshot: ") + e.what());
    }
}

void snapshot(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << snapshot_json(data);
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

Dataset load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_snapshot(buf.str());
}

}  // namespace mfx
