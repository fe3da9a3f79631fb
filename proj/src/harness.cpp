#include "fdd2d/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "fdd2d/channel.hpp"
#include "fdd2d/placement.hpp"
#include "fdd2d/rng.hpp"

namespace fdd2d {
namespace {

constexpr std::uint64_t kLibraryStream = 0x6c6962ULL;

const std::vector<double> kLGrid = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50};
const std::vector<double> kNGrid = {10, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};

const std::vector<Metric> kProbabilityMetrics = {Metric::PFd, Metric::PHd, Metric::PSelf};
const std::vector<Metric> kRateMetrics = {Metric::AvgRateFd, Metric::AvgRateHd};
const std::vector<Metric> kLatencyMetrics = {Metric::AvgDownloadFd, Metric::AvgDownloadHd, Metric::OutageFrac};

// Mean and standard error of the mean, accumulated in a fixed order.
class Accumulator {
public:
    void add(double x)
    {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }
    std::size_t count() const { return count_; }
    double mean() const { return count_ ? mean_ : std::numeric_limits<double>::quiet_NaN(); }
    double std_error() const
    {
        if (count_ < 2) {
            return 0.0;
        }
        return std::sqrt(m2_ / static_cast<double>(count_ - 1) / static_cast<double>(count_));
    }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

void measure_collaboration(const ClusterGrid& grid, const std::vector<NodeMode>& modes, DropRecord& record)
{
    double fd = 0.0;
    double hd = 0.0;
    std::size_t full = 0;
    for (ClusterId c = 0; c < grid.cluster_count(); ++c) {
        if (!grid.is_full(c)) {
            continue;
        }
        ++full;
        const auto& members = grid.members(c);
        record.full_cluster_occupancy.push_back(members.size());
        if (members.empty()) {
            continue;
        }
        std::size_t fd_members = 0;
        std::size_t hd_members = 0;
        for (UserId u : members) {
            if (is_full_duplex(modes[u])) {
                ++fd_members;
            } else if (modes[u] == NodeMode::HdTx) {
                ++hd_members;
            }
        }
        const double k = static_cast<double>(members.size());
        fd += static_cast<double>(fd_members) / k;
        hd += static_cast<double>(hd_members) / k;
    }
    record.p_fd = fd / static_cast<double>(full);
    record.p_hd = hd / static_cast<double>(full);
    record.p_self = 1.0 - record.p_fd - record.p_hd;
}

void measure_delivery(const ScenarioConfig& config, const ContentLibrary& library, const CellDeployment& cell,
                      const ClusterGrid& grid, const CacheAssignment& caches, const RequestGraph& graph, Rng& rng,
                      DropRecord& record)
{
    const Establishment est = establish_nodes(graph, grid, caches, config.tau);
    const auto& edges = graph.edges();

    // Established nodes transmit on all their out-edges. The server of an
    // established node's in-edge transmits that single link as well.
    std::vector<char> transmitting(graph.node_count(), 0);
    std::vector<std::size_t> active_edges;
    for (UserId u = 0; u < graph.node_count(); ++u) {
        if (!est.is_established(u)) {
            continue;
        }
        transmitting[u] = 1;
        for (std::size_t e : graph.out_edges(u)) {
            active_edges.push_back(e);
        }
    }
    for (UserId u = 0; u < graph.node_count(); ++u) {
        if (!est.is_established(u)) {
            continue;
        }
        if (const auto in = graph.in_edge(u); in && !est.is_established(edges[*in].server)) {
            transmitting[edges[*in].server] = 1;
            active_edges.push_back(*in);
        }
    }
    std::sort(active_edges.begin(), active_edges.end());

    std::vector<Transmitter> transmitters;
    for (UserId u = 0; u < graph.node_count(); ++u) {
        if (transmitting[u]) {
            transmitters.push_back({u, cell.positions[u]});
        }
    }
    std::vector<ActiveLink> links;
    std::vector<std::size_t> link_of(edges.size(), static_cast<std::size_t>(-1));
    for (std::size_t e : active_edges) {
        const UserId rx = edges[e].requester;
        link_of[e] = links.size();
        links.push_back({edges[e].server, rx, cell.positions[rx], transmitting[rx] != 0});
    }
    const std::vector<LinkCapacity> caps =
        estimate_link_capacities(links, transmitters, config.channel(), config.fading_samples, rng);

    std::vector<std::vector<double>> node_rate_fd(grid.cluster_count());
    std::vector<std::vector<double>> node_rate_hd(grid.cluster_count());
    for (const Transmitter& t : transmitters) {
        const UserId u = t.id;
        if (!est.is_established(u)) {
            continue;
        }
        NodeRecord node;
        node.user = u;
        node.cluster = grid.cluster_of(u);

        const auto in = graph.in_edge(u);
        std::vector<double> out_fd;
        std::vector<double> out_hd;
        std::vector<double> served;
        bool mutual = false;
        for (std::size_t e : graph.out_edges(u)) {
            const LinkCapacity& c = caps[link_of[e]];
            out_fd.push_back(c.full_duplex.mean_bps);
            out_hd.push_back(c.half_duplex.mean_bps);
            served.push_back(transfer_time(library.size_bits(edges[e].file), c.full_duplex.mean_bps));
            if (in && edges[e].requester == edges[*in].server) {
                mutual = true;
            }
        }

        std::optional<double> in_bps;
        if (in) {
            in_bps = caps[link_of[*in]].full_duplex.mean_bps;
        }
        const bool fd = in.has_value();
        node.capacity_fd_bps = node_capacity(fd, in_bps, out_fd);
        node.capacity_hd_bps = node_capacity(false, std::nullopt, out_hd);

        if (fd) {
            const double theta_in = transfer_time(library.size_bits(graph.request(u)), *in_bps);
            node.mode = mutual ? NodeMode::FdBfd : NodeMode::FdTnfd;
            node.scenario = mutual ? DeliveryScenario::Bfd : DeliveryScenario::Tnfd;
            node.download = (mutual && served.size() == 1) ? download_times_bfd(theta_in, served.front())
                                                           : download_times_tnfd(theta_in, served);
        } else {
            node.mode = NodeMode::HdTx;
            node.scenario = DeliveryScenario::HalfDuplexOnly;
            const double slowest = *std::max_element(served.begin(), served.end());
            node.download = {slowest, slowest, std::isinf(slowest)};
        }

        // Realized mode: the node collaborates with probability one in this drop.
        node_rate_fd[node.cluster].push_back(node_throughput(1.0, node.capacity_fd_bps));
        node_rate_hd[node.cluster].push_back(node_throughput(1.0, node.capacity_hd_bps));
        record.nodes.push_back(node);
    }

    record.cluster_rate_fd_bps.resize(grid.cluster_count());
    record.cluster_rate_hd_bps.resize(grid.cluster_count());
    double fd_total = 0.0;
    double hd_total = 0.0;
    for (ClusterId c = 0; c < grid.cluster_count(); ++c) {
        record.cluster_rate_fd_bps[c] = cluster_sum_throughput(node_rate_fd[c]);
        record.cluster_rate_hd_bps[c] = cluster_sum_throughput(node_rate_hd[c]);
        fd_total += record.cluster_rate_fd_bps[c];
        hd_total += record.cluster_rate_hd_bps[c];
    }
    const double clusters = static_cast<double>(grid.cluster_count());
    record.rate_fd_bps = fd_total / clusters;
    record.rate_hd_bps = hd_total / clusters;
}

bool is_sweepable(std::string_view key)
{
    ScenarioConfig probe;
    try {
        probe.set_numeric(key, 1.0);
    } catch (const ConfigError&) {
        return false;
    }
    return key != "seed";
}

}  // namespace

std::string_view metric_name(Metric metric)
{
    switch (metric) {
    case Metric::PFd: return "P_FD";
    case Metric::PHd: return "P_HD";
    case Metric::PSelf: return "P_self";
    case Metric::AvgRateFd: return "avg_rate_FD";
    case Metric::AvgRateHd: return "avg_rate_HD";
    case Metric::AvgDownloadFd: return "avg_download_FD";
    case Metric::AvgDownloadHd: return "avg_download_HD";
    case Metric::OutageFrac: return "outage_frac";
    }
    return "?";
}

ContentLibrary make_library(const ScenarioConfig& config)
{
    if (!config.seed) {
        throw ConfigError("seed is mandatory");
    }
    Rng rng(split_seed(*config.seed, kLibraryStream, 0));
    return ContentLibrary(config.m, config.gamma_r, config.file_sizes(), rng);
}

DropScene make_scene(const ScenarioConfig& config, const ContentLibrary& library, Rng& rng)
{
    CellDeployment cell = place_users(config.n, config.a_km, rng);
    ClusterGrid grid = assign_clusters(cell, config.l_km);
    CacheAssignment caches = place_caches(grid, library, config.h, rng);
    std::vector<FileId> requests(config.n);
    for (FileId& r : requests) {
        r = library.sample_request(rng);
    }
    RequestGraph graph = build_request_graph(cell, grid, caches, requests);
    return {std::move(cell), std::move(grid), std::move(caches), std::move(requests), std::move(graph)};
}

DropRecord run_drop(const ScenarioConfig& config, const ContentLibrary& library, std::uint64_t seed,
                    DropOptions options)
{
    Rng rng(seed);
    DropRecord record;
    record.users = config.n;

    const DropScene scene = make_scene(config, library, rng);
    const auto& [cell, grid, caches, requests, graph] = scene;
    const std::vector<NodeMode> modes = classify_modes(graph);
    for (NodeMode mode : modes) {
        ++record.mode_counts[static_cast<std::size_t>(mode)];
    }
    measure_collaboration(grid, modes, record);

    if (options.channel) {
        measure_delivery(config, library, cell, grid, caches, graph, rng, record);
    }
    return record;
}

DropRecord run_drop(const ScenarioConfig& config, std::uint64_t seed, DropOptions options)
{
    return run_drop(config, make_library(config), seed, options);
}

std::uint64_t drop_seed(std::uint64_t master, std::size_t point, std::size_t drop)
{
    return split_seed(master, point + 1, drop);
}

std::vector<DropRecord> run_drops(const ScenarioConfig& config, const ContentLibrary& library, std::size_t point,
                                  std::size_t workers, DropOptions options)
{
    config.validate();
    const std::size_t drops = config.drops;
    std::vector<DropRecord> records(drops);
    std::vector<std::exception_ptr> errors(drops);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t d = next++; d < drops; d = next++) {
            try {
                records[d] = run_drop(config, library, drop_seed(*config.seed, point, d), options);
            } catch (...) {
                errors[d] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(workers, 1, drops);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return records;
}

std::vector<ResultRow> summarize(std::string_view sweep_var, double sweep_value,
                                 const std::vector<DropRecord>& drops, const std::vector<Metric>& metrics)
{
    Accumulator p_fd, p_hd, p_self, rate_fd, rate_hd, dl_fd, dl_hd;
    std::size_t nodes = 0;
    std::size_t outages = 0;
    std::size_t drops_with_nodes = 0;
    for (const DropRecord& d : drops) {
        p_fd.add(d.p_fd);
        p_hd.add(d.p_hd);
        p_self.add(d.p_self);
        rate_fd.add(d.rate_fd_bps);
        rate_hd.add(d.rate_hd_bps);
        bool counted = false;
        for (const NodeRecord& n : d.nodes) {
            ++nodes;
            if (n.download.outage) {
                ++outages;
                continue;
            }
            dl_fd.add(n.download.fd);
            dl_hd.add(n.download.hd);
            counted = true;
        }
        drops_with_nodes += counted ? 1 : 0;
    }

    std::vector<ResultRow> rows;
    const std::size_t total = drops.size();
    for (Metric m : metrics) {
        ResultRow r;
        r.sweep_var = std::string(sweep_var);
        r.sweep_value = sweep_value;
        r.metric = std::string(metric_name(m));
        r.drops = total;
        auto take = [&](const Accumulator& a) {
            r.value = a.mean();
            r.std_error = a.std_error();
        };
        switch (m) {
        case Metric::PFd: take(p_fd); break;
        case Metric::PHd: take(p_hd); break;
        case Metric::PSelf: take(p_self); break;
        case Metric::AvgRateFd: take(rate_fd); break;
        case Metric::AvgRateHd: take(rate_hd); break;
        case Metric::AvgDownloadFd:
            take(dl_fd);
            r.drops = drops_with_nodes;
            break;
        case Metric::AvgDownloadHd:
            take(dl_hd);
            r.drops = drops_with_nodes;
            break;
        case Metric::OutageFrac: {
            const double frac = nodes ? static_cast<double>(outages) / static_cast<double>(nodes) : 0.0;
            r.value = frac;
            r.std_error = nodes ? std::sqrt(frac * (1.0 - frac) / static_cast<double>(nodes)) : 0.0;
            break;
        }
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

const std::vector<std::string>& scenario_names()
{
    static const std::vector<std::string> names = {"fig2", "fig3", "fig4", "fig5", "fig6", "custom"};
    return names;
}

ScenarioSpec prepare_scenario(std::string_view name, ScenarioConfig& config)
{
    ScenarioSpec spec;
    spec.name = std::string(name);
    if (name == "fig2") {
        config.n = 500;
        config.h = 1;
        config.gamma_r = 1.0;
        spec.sweep_var = "l_km";
        spec.grid = kLGrid;
        spec.metrics = kProbabilityMetrics;
        spec.needs_channel = false;
    } else if (name == "fig3") {
        config.gamma_r = 1.6;
        config.h = 5;
        config.l_km = 0.2;
        spec.sweep_var = "n";
        spec.grid = kNGrid;
        spec.metrics = kProbabilityMetrics;
        spec.needs_channel = false;
    } else if (name == "fig4") {
        config.n = 500;
        config.h = 1;
        config.tau = 1;
        config.gamma_r = 1.0;
        spec.sweep_var = "l_km";
        spec.grid = kLGrid;
        spec.metrics = kRateMetrics;
    } else if (name == "fig5") {
        config.h = 3;
        config.gamma_r = 1.0;
        config.n = 1000;
        spec.sweep_var = "l_km";
        spec.grid = kLGrid;
        spec.metrics = kRateMetrics;
        spec.tau_series = {1, 2, 3};
    } else if (name == "fig6") {
        config.n = 500;
        config.h = 1;
        config.tau = 1;
        config.gamma_r = 1.0;
        spec.sweep_var = "l_km";
        spec.grid = kLGrid;
        spec.metrics = kLatencyMetrics;
    } else if (name == "custom") {
        if (config.sweep_var.empty()) {
            spec.sweep_var = "l_km";
            spec.grid = {config.l_km};
        } else {
            if (!is_sweepable(config.sweep_var)) {
                throw ConfigError("sweep_var '" + config.sweep_var + "' is not a numeric parameter");
            }
            spec.sweep_var = config.sweep_var;
            spec.grid = config.sweep_grid;
        }
        spec.metrics = {Metric::PFd,           Metric::PHd,           Metric::PSelf,
                        Metric::AvgRateFd,     Metric::AvgRateHd,     Metric::AvgDownloadFd,
                        Metric::AvgDownloadHd, Metric::OutageFrac};
    } else {
        std::string catalog;
        for (const auto& n : scenario_names()) {
            catalog += (catalog.empty() ? "" : ", ") + n;
        }
        throw ConfigError("unknown scenario '" + std::string(name) + "'; available: " + catalog);
    }
    if (spec.grid.empty()) {
        throw ConfigError("scenario grid is empty");
    }
    return spec;
}

ScenarioResult run_scenario(const ScenarioSpec& spec, const ScenarioConfig& config, std::size_t workers)
{
    ScenarioResult result;
    result.scenario = spec.name;
    const std::vector<std::size_t> series = spec.tau_series.empty() ? std::vector<std::size_t>{0} : spec.tau_series;
    for (std::size_t tau : series) {
        ResultTable table;
        ScenarioConfig base = config;
        if (tau != 0) {
            base.tau = tau;
            table.label = "tau" + std::to_string(tau);
        }
        for (std::size_t p = 0; p < spec.grid.size(); ++p) {
            ScenarioConfig point = base;
            point.set_numeric(spec.sweep_var, spec.grid[p]);
            point.validate();
            const ContentLibrary library = make_library(point);
            const auto drops = run_drops(point, library, p, workers, {spec.needs_channel});
            auto rows = summarize(spec.sweep_var, spec.grid[p], drops, spec.metrics);
            table.rows.insert(table.rows.end(), rows.begin(), rows.end());
        }
        result.tables.push_back(std::move(table));
    }
    return result;
}

std::vector<std::filesystem::path> write_scenario(const ScenarioResult& result, const std::filesystem::path& out,
                                                  bool plots)
{
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + out.string() + "': " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    for (const ResultTable& table : result.tables) {
        const std::string stem = result.scenario + (table.label.empty() ? "" : "_" + table.label);
        const auto csv = out / (stem + ".csv");
        write_results(table, csv);
        written.push_back(csv);
        if (plots) {
            std::vector<std::string> metrics;
            for (const ResultRow& r : table.rows) {
                if (std::find(metrics.begin(), metrics.end(), r.metric) == metrics.end()) {
                    metrics.push_back(r.metric);
                }
            }
            for (const auto& m : metrics) {
                const auto svg = out / (stem + "_" + m + ".svg");
                write_plot_svg(table, m, svg);
                written.push_back(svg);
            }
        }
    }
    return written;
}

}  // namespace fdd2d
