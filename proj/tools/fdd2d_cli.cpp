// Command-line front end: scenario runs, closed-form probabilities and graph export.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "fdd2d/analytic.hpp"
#include "fdd2d/config.hpp"
#include "fdd2d/delivery_graph.hpp"
#include "fdd2d/harness.hpp"
#include "fdd2d/placement.hpp"
#include "fdd2d/topology.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;

struct CommonOptions {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
};

fdd2d::ScenarioConfig load(const CommonOptions& opts)
{
    fdd2d::ScenarioConfig config;
    if (!opts.config_path.empty()) {
        fdd2d::load_config_file(opts.config_path, config);
    }
    return config;
}

void finish(const CommonOptions& opts, fdd2d::ScenarioConfig& config)
{
    fdd2d::apply_assignments(opts.overrides, config);
    if (opts.seed) {
        config.seed = opts.seed;
    }
}

int run_simulate(const CommonOptions& opts, const std::string& scenario, const std::string& out,
                 std::size_t workers, bool plots)
{
    fdd2d::ScenarioConfig config = load(opts);
    fdd2d::ScenarioSpec spec = fdd2d::prepare_scenario(scenario, config);
    finish(opts, config);
    if (spec.name == "custom") {
        // custom has no preset; its sweep comes from the final parameters
        spec = fdd2d::prepare_scenario(scenario, config);
    }
    config.validate();
    const auto result = fdd2d::run_scenario(spec, config, workers);
    for (const auto& path : fdd2d::write_scenario(result, out, plots)) {
        std::cout << path.string() << '\n';
    }
    return 0;
}

int run_analytic(const CommonOptions& opts)
{
    fdd2d::ScenarioConfig config = load(opts);
    finish(opts, config);
    if (!config.seed) {
        config.seed = 1;  // only used to sample partitions when h > 1
    }
    config.validate();

    std::vector<double> grid = {0.0};
    std::string var = config.sweep_var;
    if (!var.empty()) {
        grid = config.sweep_grid;
    }
    std::printf("n,l_km,a_km,h,gamma_r,P_FD,P_HD,P_self\n");
    for (double v : grid) {
        fdd2d::ScenarioConfig point = config;
        if (!var.empty()) {
            point.set_numeric(var, v);
            point.validate();
        }
        const auto profile = fdd2d::most_popular_profile(fdd2d::zipf_pmf(point.m, point.gamma_r), point.h, 64,
                                                         *point.seed);
        const auto p = fdd2d::collaboration_probabilities(point.n, fdd2d::cluster_ratio(point.l_km, point.a_km),
                                                          profile);
        std::printf("%zu,%.9g,%.9g,%zu,%.9g,%.9g,%.9g,%.9g\n", point.n, point.l_km, point.a_km, point.h,
                    point.gamma_r, p.fd, p.hd, p.self);
    }
    return 0;
}

int run_graph(const CommonOptions& opts, std::size_t drop, const std::string& out)
{
    fdd2d::ScenarioConfig config = load(opts);
    finish(opts, config);
    config.validate();
    const auto library = fdd2d::make_library(config);
    fdd2d::Rng rng(fdd2d::drop_seed(*config.seed, 0, drop));
    const auto scene = fdd2d::make_scene(config, library, rng);
    if (out.empty() || out == "-") {
        fdd2d::write_edge_list(std::cout, scene.graph);
    } else {
        std::ofstream file(out);
        if (!file) {
            throw std::runtime_error("cannot open '" + out + "' for writing");
        }
        fdd2d::write_edge_list(file, scene.graph);
    }
    return 0;
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool config_required)
{
    auto* cfg = cmd->add_option("--config", opts.config_path, "key=value parameter file");
    if (config_required) {
        cfg->required();
    }
    cmd->add_option("--set", opts.overrides, "override a parameter, key=value (repeatable)");
    cmd->add_option("--seed", opts.seed, "master seed (overrides the config)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Full-duplex D2D video delivery: closed-form collaboration probabilities and Monte-Carlo runs"};
    app.require_subcommand(1);

    CommonOptions sim_opts;
    std::string scenario;
    std::string out_dir;
    std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    bool plots = false;
    auto* simulate = app.add_subcommand("simulate", "run a scenario and write CSV results");
    add_common(simulate, sim_opts, true);
    simulate->add_option("--scenario", scenario, "fig2|fig3|fig4|fig5|fig6|custom")->required();
    simulate->add_option("--out", out_dir, "output directory")->required();
    simulate->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    simulate->add_flag("--plots", plots, "also write one SVG chart per metric");

    CommonOptions an_opts;
    auto* analytic = app.add_subcommand("analytic", "print closed-form FD/HD/self collaboration probabilities");
    add_common(analytic, an_opts, true);

    CommonOptions graph_opts;
    std::size_t drop = 0;
    std::string graph_out;
    auto* graph = app.add_subcommand("graph", "export one drop's request graph as an edge list");
    add_common(graph, graph_opts, true);
    graph->add_option("--drop", drop, "drop index");
    graph->add_option("--out", graph_out, "edge-list file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*simulate) {
            return run_simulate(sim_opts, scenario, out_dir, workers, plots);
        }
        if (*analytic) {
            return run_analytic(an_opts);
        }
        return run_graph(graph_opts, drop, graph_out);
    } catch (const fdd2d::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fdd2d::InfeasiblePlacement& e) {
        std::cerr << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
