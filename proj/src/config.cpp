#include "fdd2d/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fdd2d {
namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text)
{
    const std::string s(trim(text));
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
        throw ConfigError("bad numeric value for '" + std::string(key) + "': '" + s + "'");
    }
    return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text)
{
    const std::string_view s = trim(text);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ConfigError("bad integer value for '" + std::string(key) + "': '" + std::string(s) + "'");
    }
    return v;
}

std::size_t count_from(std::string_view key, double v)
{
    if (v < 0.0 || v != std::floor(v)) {
        throw ConfigError("'" + std::string(key) + "' must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_grid(std::string_view key, std::string_view text)
{
    std::vector<double> grid;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (!trim(piece).empty()) {
            grid.push_back(parse_double(key, piece));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return grid;
}

}  // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = {
        "n",           "h",           "m",        "gamma_r",      "beta_db",        "tau",
        "W_hz",        "alpha",       "pt_dbm",   "a_km",         "shadow_db",      "file_min_mb",
        "file_max_mb", "drops",       "seed",     "l_km",         "noise_dbm_hz",   "fading_samples",
        "sweep_var",   "sweep_grid",
    };
    return keys;
}

void ScenarioConfig::set(std::string_view key, std::string_view value)
{
    if (key == "seed") {
        seed = parse_unsigned(key, value);
    } else if (key == "sweep_var") {
        sweep_var = std::string(trim(value));
    } else if (key == "sweep_grid") {
        sweep_grid = parse_grid(key, value);
    } else {
        set_numeric(key, parse_double(key, value));
    }
}

void ScenarioConfig::set_numeric(std::string_view key, double v)
{
    if (key == "n") n = count_from(key, v);
    else if (key == "h") h = count_from(key, v);
    else if (key == "m") m = count_from(key, v);
    else if (key == "gamma_r") gamma_r = v;
    else if (key == "beta_db") beta_db = v;
    else if (key == "tau") tau = count_from(key, v);
    else if (key == "W_hz") W_hz = v;
    else if (key == "alpha") alpha = v;
    else if (key == "pt_dbm") pt_dbm = v;
    else if (key == "a_km") a_km = v;
    else if (key == "shadow_db") shadow_db = v;
    else if (key == "file_min_mb") file_min_mb = v;
    else if (key == "file_max_mb") file_max_mb = v;
    else if (key == "drops") drops = count_from(key, v);
    else if (key == "seed") seed = count_from(key, v);
    else if (key == "l_km") l_km = v;
    else if (key == "noise_dbm_hz") noise_dbm_hz = v;
    else if (key == "fading_samples") fading_samples = count_from(key, v);
    else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void ScenarioConfig::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok) {
            throw ConfigError(what);
        }
    };
    require(seed.has_value(), "seed is mandatory");
    require(h >= 1, "h must be at least 1");
    require(m >= 1, "m must be at least 1");
    require(h <= m, "h must not exceed m");
    require(gamma_r >= 0.0, "gamma_r must be non-negative");
    require(beta_db <= 0.0, "beta_db must be <= 0 dB");
    require(tau >= 1, "tau must be at least 1");
    require(W_hz > 0.0, "W_hz must be positive");
    require(alpha >= 2.0, "alpha must be at least 2");
    require(a_km > 0.0, "a_km must be positive");
    require(shadow_db >= 0.0, "shadow_db must be non-negative");
    require(file_min_mb > 0.0 && file_max_mb >= file_min_mb, "file size range must satisfy 0 < min <= max");
    require(drops >= 1, "drops must be at least 1");
    require(fading_samples >= 1, "fading_samples must be at least 1");
    require(l_km > 0.0 && l_km <= a_km * std::sqrt(2.0) * (1.0 + 1e-9), "l_km must lie in (0, a*sqrt(2)]");
    require(sweep_var.empty() || !sweep_grid.empty(), "sweep_grid must be non-empty when sweep_var is set");
}

ChannelEnv ScenarioConfig::channel() const
{
    try {
        return ChannelEnv::from_link_budget(pt_dbm, noise_dbm_hz, W_hz, alpha, beta_db, shadow_db);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

void load_config_file(const std::filesystem::path& path, ScenarioConfig& config)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path.string() + "'");
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
        }
        try {
            config.set(trim(view.substr(0, eq)), view.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void apply_assignments(const std::vector<std::string>& assignments, ScenarioConfig& config)
{
    for (const std::string& a : assignments) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("override '" + a + "' is not key=value");
        }
        config.set(trim(std::string_view(a).substr(0, eq)), std::string_view(a).substr(eq + 1));
    }
}

}  // namespace fdd2d
