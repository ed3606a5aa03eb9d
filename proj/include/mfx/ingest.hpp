#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfx/models.hpp"
#include "mfx/timeseries.hpp"

namespace mfx {

enum class Role {
    ExchangeRate,
    InterestDomestic,
    InterestForeign,
    CpiDomestic,
    CpiForeign,
    MoneyDomestic,
    MoneyForeign,
    GdpDomestic,
    GdpForeign,
};

inline constexpr std::array<Role, 9> kAllRoles = {
    Role::ExchangeRate, Role::InterestDomestic, Role::InterestForeign, Role::CpiDomestic, Role::CpiForeign,
    Role::MoneyDomestic, Role::MoneyForeign, Role::GdpDomestic, Role::GdpForeign,
};

enum class Transform { None, Log, PercentToDecimal };

[[nodiscard]] std::string_view to_string(Role role) noexcept;
[[nodiscard]] std::string_view to_string(Transform t) noexcept;
[[nodiscard]] Role parse_role(std::string_view text);
[[nodiscard]] Transform parse_transform(std::string_view text);
/// GDP is quarterly, everything else monthly.
[[nodiscard]] Frequency expected_frequency(Role role) noexcept;

/// One column of one CSV file.
struct SeriesSource {
    std::filesystem::path path;
    std::string column_date = "DATE";
    std::string column_value;
    Frequency frequency = Frequency::Monthly;
    Transform transform = Transform::None;
    Role role = Role::ExchangeRate;
};

struct Manifest {
    std::vector<SeriesSource> sources;
    Period span_first = Period::quarter(1985, 1);
    Period span_last = Period::quarter(2019, 1);
    DatasetConfig config;
};

/// Reads a JSON manifest; relative source paths resolve against the
/// manifest's directory.
[[nodiscard]] Manifest load_manifest(const std::filesystem::path& path);

/// Reads one series. Dates may be ISO dates or period labels; rows must be
/// strictly consecutive periods. "." or an empty cell raises MissingValue.
/// Errors carry the 1-based file line.
[[nodiscard]] TimeSeries read_csv(const SeriesSource& source);

/// Reads every role, forms domestic-minus-foreign differentials and trims to
/// the common quarterly span clipped to [first, last].
[[nodiscard]] Dataset assemble_dataset(const std::vector<SeriesSource>& sources, const Period& first,
                                       const Period& last, const DatasetConfig& config);
[[nodiscard]] Dataset assemble_dataset(const Manifest& manifest);

inline constexpr int kSnapshotVersion = 1;

/// Self-describing JSON snapshot: little-endian float64 arrays in base64,
/// guarded by a SHA-256 checksum of the payload.
[[nodiscard]] std::string snapshot_json(const Dataset& data);
[[nodiscard]] Dataset parse_snapshot(std::string_view text);
void snapshot(const Dataset& data, const std::filesystem::path& path);
[[nodiscard]] Dataset load_snapshot(const std::filesystem::path& path);

}  // namespace mfx
