#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mfx/error.hpp"
#include "mfx/timeseries.hpp"

namespace mfx::test {

/// Code of the mfx::Error thrown by f, or nullopt if nothing was thrown.
template <class F>
std::optional<ErrorCode> error_code(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

inline std::vector<double> normals(std::mt19937_64& rng, std::size_t n, double sd = 1.0) {
    std::normal_distribution<double> z(0.0, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = z(rng);
    return v;
}

inline std::vector<double> random_walk(std::mt19937_64& rng, std::size_t n, double sd = 1.0) {
    auto v = normals(rng, n, sd);
    for (std::size_t k = 1; k < n; ++k) v[k] += v[k - 1];
    return v;
}

inline TimeSeries monthly(std::vector<double> v, Period start = Period::month(1985, 1)) {
    return {start, std::move(v)};
}

inline TimeSeries quarterly(std::vector<double> v, Period start = Period::quarter(1985, 1)) {
    return {start, std::move(v)};
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("mfx_" + tag + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    [[nodiscard]] const std::filesystem::path& path() const { return path_; }
    [[nodiscard]] std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace mfx::test
