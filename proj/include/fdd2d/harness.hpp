#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fdd2d/config.hpp"
#include "fdd2d/delivery_graph.hpp"
#include "fdd2d/metrics.hpp"
#include "fdd2d/placement.hpp"
#include "fdd2d/popularity.hpp"
#include "fdd2d/results.hpp"
#include "fdd2d/topology.hpp"

namespace fdd2d {

enum class Metric {
    PFd,
    PHd,
    PSelf,
    AvgRateFd,
    AvgRateHd,
    AvgDownloadFd,
    AvgDownloadHd,
    OutageFrac,
};

std::string_view metric_name(Metric metric);

/// One established transmitter of a drop.
struct NodeRecord {
    UserId user = 0;
    ClusterId cluster = 0;
    NodeMode mode = NodeMode::HdTx;  // FD-BFD / FD-TNFD when it also receives, else HD-TX
    DeliveryScenario scenario = DeliveryScenario::HalfDuplexOnly;
    double capacity_fd_bps = 0.0;  // in-link (if FD) plus out-links, with self-interference
    double capacity_hd_bps = 0.0;  // out-links only, no self-interference
    DownloadTimes download;
};

struct DropRecord {
    std::size_t users = 0;

    /// Collaboration frequencies of a representative cluster: the average over
    /// full-size clusters of the fraction of members in each mode. An empty
    /// cluster contributes entirely to p_self, which is the complement of the
    /// other two.
    double p_fd = 0.0;
    double p_hd = 0.0;
    double p_self = 1.0;
    std::vector<std::size_t> full_cluster_occupancy;
    std::vector<std::size_t> mode_counts = std::vector<std::size_t>(6, 0);  // indexed by NodeMode

    /// Mean over every cluster of the cell (empty ones count as zero).
    double rate_fd_bps = 0.0;
    double rate_hd_bps = 0.0;
    std::vector<double> cluster_rate_fd_bps;
    std::vector<double> cluster_rate_hd_bps;

    std::vector<NodeRecord> nodes;
};

struct DropOptions {
    bool channel = true;  // false skips establishment, capacities and latency
};

ContentLibrary make_library(const ScenarioConfig& config);

/// Everything a drop decides before the channel: geometry, caches, requests and graph.
struct DropScene {
    CellDeployment cell;
    ClusterGrid grid;
    CacheAssignment caches;
    std::vector<FileId> requests;
    RequestGraph graph;
};

/// Draws a scene from `rng` in a fixed order (positions, caches, requests).
DropScene make_scene(const ScenarioConfig& config, const ContentLibrary& library, Rng& rng);

/// place users -> clusters -> caches -> requests -> graph -> modes -> establishment ->
/// capacities, throughput and download times. Fully determined by (config, library, seed).
DropRecord run_drop(const ScenarioConfig& config, const ContentLibrary& library, std::uint64_t drop_seed,
                    DropOptions options = {});
DropRecord run_drop(const ScenarioConfig& config, std::uint64_t drop_seed, DropOptions options = {});

/// Seed of drop `drop` at sweep point `point`.
std::uint64_t drop_seed(std::uint64_t master, std::size_t point, std::size_t drop);

/// Runs config.drops drops on `workers` threads; results are in drop order and
/// identical for any worker count.
std::vector<DropRecord> run_drops(const ScenarioConfig& config, const ContentLibrary& library,
                                  std::size_t point, std::size_t workers, DropOptions options = {});

/// Reduces the drops of one sweep point to result rows for `metrics`.
std::vector<ResultRow> summarize(std::string_view sweep_var, double sweep_value,
                                 const std::vector<DropRecord>& drops, const std::vector<Metric>& metrics);

struct ScenarioSpec {
    std::string name;
    std::string sweep_var;
    std::vector<double> grid;
    std::vector<Metric> metrics;
    bool needs_channel = true;
    std::vector<std::size_t> tau_series;  // one table per tau; empty -> single table at config.tau
};

/// Names accepted by run_scenario: fig2 .. fig6 and custom.
const std::vector<std::string>& scenario_names();

/// Applies the scenario's fixed parameters to `config` and returns its plan.
/// Throws ConfigError for an unknown name (the message lists the catalog).
ScenarioSpec prepare_scenario(std::string_view name, ScenarioConfig& config);

struct ScenarioResult {
    std::string scenario;
    std::vector<ResultTable> tables;
};

/// Runs a prepared scenario. Drops are parallelized over `workers`.
ScenarioResult run_scenario(const ScenarioSpec& spec, const ScenarioConfig& config, std::size_t workers);

/// Writes `<out>/<scenario>[_<label>].csv` per table, plus one SVG per metric when `plots` is set.
std::vector<std::filesystem::path> write_scenario(const ScenarioResult& result, const std::filesystem::path& out,
                                                  bool plots);

}  // namespace fdd2d
