#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fdd2d/channel.hpp"
#include "fdd2d/popularity.hpp"

namespace fdd2d {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every knob of one experiment. Defaults are the reference simulation
/// parameters; `seed` has no default and must be set before running.
struct ScenarioConfig {
    std::size_t n = 500;
    std::size_t h = 1;
    std::size_t m = 1000;
    double gamma_r = 1.0;
    double beta_db = -70.0;
    std::size_t tau = 1;
    double W_hz = 1.2e6;
    double noise_dbm_hz = -174.0;
    double alpha = 2.6;
    double pt_dbm = 23.0;
    double a_km = 1.0;
    double shadow_db = 4.0;
    double file_min_mb = 5.0;
    double file_max_mb = 50.0;
    std::size_t drops = 1000;
    std::optional<std::uint64_t> seed;

    double l_km = 0.2;
    std::size_t fading_samples = 200;

    /// Parameter swept by `custom` runs; empty means a single point at the current values.
    std::string sweep_var;
    std::vector<double> sweep_grid;

    /// Assigns one key from its textual value. Throws ConfigError on an
    /// unknown key or a malformed value.
    void set(std::string_view key, std::string_view value);

    /// Same key space as set(), for sweeping numeric parameters.
    void set_numeric(std::string_view key, double value);

    /// Throws ConfigError when a parameter is out of its valid domain.
    void validate() const;

    ChannelEnv channel() const;
    FileSizeRange file_sizes() const { return {file_min_mb, file_max_mb}; }
};

/// Keys accepted by ScenarioConfig::set, in documentation order.
const std::vector<std::string>& config_keys();

/// Applies `key=value` lines from a file onto `config`. Blank lines and
/// `#` comments are ignored.
void load_config_file(const std::filesystem::path& path, ScenarioConfig& config);

/// Applies `key=value` strings (command-line overrides).
void apply_assignments(const std::vector<std::string>& assignments, ScenarioConfig& config);

}  // namespace fdd2d
