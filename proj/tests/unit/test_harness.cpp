#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fdd2d/harness.hpp"

using namespace fdd2d;

namespace {

ScenarioConfig seeded(std::uint64_t seed = 7)
{
    ScenarioConfig c;
    c.seed = seed;
    return c;
}

std::filesystem::path scratch(const std::string& name)
{
    const auto dir = std::filesystem::temp_directory_path() / "fdd2d_unit";
    std::filesystem::create_directories(dir);
    return dir / name;
}

bool same_drop(const DropRecord& a, const DropRecord& b)
{
    if (a.users != b.users || a.p_fd != b.p_fd || a.p_hd != b.p_hd || a.p_self != b.p_self ||
        a.rate_fd_bps != b.rate_fd_bps || a.rate_hd_bps != b.rate_hd_bps || a.mode_counts != b.mode_counts ||
        a.nodes.size() != b.nodes.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        const NodeRecord& x = a.nodes[i];
        const NodeRecord& y = b.nodes[i];
        if (x.user != y.user || x.capacity_fd_bps != y.capacity_fd_bps || x.capacity_hd_bps != y.capacity_hd_bps ||
            x.download.fd != y.download.fd || x.download.hd != y.download.hd) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("config parsing")
{
    const auto path = scratch("good.cfg");
    {
        std::ofstream out(path);
        out << "# reference run\n\nn = 300\nh=2\n  gamma_r=1.6  # steeper\nseed=42\nl_km=0.25\n";
    }
    ScenarioConfig c;
    load_config_file(path, c);
    CHECK(c.n == 300);
    CHECK(c.h == 2);
    CHECK(c.gamma_r == 1.6);
    CHECK(c.l_km == 0.25);
    REQUIRE(c.seed.has_value());
    CHECK(*c.seed == 42);
    CHECK(c.m == 1000);

    apply_assignments({"n=50", "beta_db=-80"}, c);
    CHECK(c.n == 50);
    CHECK(c.beta_db == -80.0);
    CHECK_NOTHROW(c.validate());

    CHECK_THROWS_AS(apply_assignments({"nonsense=1"}, c), ConfigError);
    CHECK_THROWS_AS(apply_assignments({"n=ten"}, c), ConfigError);
    CHECK_THROWS_AS(apply_assignments({"n"}, c), ConfigError);
    CHECK_THROWS_AS(load_config_file(scratch("missing.cfg"), c), ConfigError);

    ScenarioConfig unseeded;
    CHECK_THROWS_AS(unseeded.validate(), ConfigError);
    auto bad = seeded();
    bad.l_km = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("empty cell")
{
    auto c = seeded();
    c.n = 0;
    const auto d = run_drop(c, 1);
    CHECK(d.users == 0);
    CHECK(d.nodes.empty());
    CHECK(d.rate_fd_bps == 0.0);
    CHECK(d.rate_hd_bps == 0.0);
    CHECK(d.p_self == 1.0);
}

TEST_CASE("a drop is fully determined by its seed")
{
    auto c = seeded();
    c.n = 300;
    c.fading_samples = 20;
    const auto a = run_drop(c, 123);
    const auto b = run_drop(c, 123);
    CHECK(same_drop(a, b));
    const auto other = run_drop(c, 124);
    CHECK_FALSE(same_drop(a, other));
}

TEST_CASE("worker count does not change results")
{
    auto c = seeded(11);
    c.n = 300;
    c.drops = 12;
    c.fading_samples = 10;
    const auto lib = make_library(c);
    const auto serial = run_drops(c, lib, 0, 1);
    const auto parallel = run_drops(c, lib, 0, 4);
    REQUIRE(serial.size() == 12);
    REQUIRE(parallel.size() == 12);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(same_drop(serial[i], parallel[i]));
    }
}

TEST_CASE("probability rows sum to one")
{
    auto c = seeded(3);
    c.drops = 50;
    const auto lib = make_library(c);
    const auto drops = run_drops(c, lib, 0, 1, {.channel = false});
    const auto rows = summarize("l_km", c.l_km, drops, {Metric::PFd, Metric::PHd, Metric::PSelf});
    REQUIRE(rows.size() == 3);
    const double combined = std::sqrt(rows[0].std_error * rows[0].std_error + rows[1].std_error * rows[1].std_error +
                                      rows[2].std_error * rows[2].std_error);
    CHECK(std::abs(rows[0].value + rows[1].value + rows[2].value - 1.0) <= 2.0 * combined + 1e-12);
}

TEST_CASE("standard error shrinks with the square root of the drop count")
{
    auto c = seeded(5);
    c.n = 300;
    c.l_km = 0.3;
    const auto lib = make_library(c);
    c.drops = 400;
    const auto small = summarize("l_km", 0.3, run_drops(c, lib, 0, 1, {.channel = false}), {Metric::PFd});
    c.drops = 1600;
    const auto large = summarize("l_km", 0.3, run_drops(c, lib, 1, 1, {.channel = false}), {Metric::PFd});
    const double ratio = small[0].std_error / large[0].std_error;
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("results CSV")
{
    SUBCASE("empty table is header only")
    {
        const auto path = scratch("empty.csv");
        write_results(ResultTable{}, path);
        std::ifstream in(path);
        std::stringstream text;
        text << in.rdbuf();
        CHECK(text.str() == std::string(kCsvHeader) + "\n");
    }
    SUBCASE("round trip")
    {
        ResultTable t;
        t.rows.push_back({"l_km", 0.05, "P_FD", 0.123456789, 0.00123, 1000});
        t.rows.push_back({"l_km", 0.5, "avg_rate_HD", 1.25e6, 3.5e3, 999});
        const auto path = scratch("round.csv");
        write_results(t, path);
        CHECK(read_results(path).rows == t.rows);
    }
    SUBCASE("unwritable path")
    {
        CHECK_THROWS_AS(write_results(ResultTable{}, "/nonexistent_dir/x.csv"), std::runtime_error);
    }
}

TEST_CASE("scenario catalog")
{
    auto c = seeded();
    CHECK_THROWS_AS(prepare_scenario("fig9", c), ConfigError);
    for (const std::string& name : scenario_names()) {
        auto cfg = seeded();
        const auto spec = prepare_scenario(name, cfg);
        CHECK(spec.name == name);
        CHECK_FALSE(spec.grid.empty());
    }
}

TEST_CASE("fig4 writes two rate rows per grid point")
{
    auto c = seeded(2);
    const auto spec = prepare_scenario("fig4", c);
    c.drops = 2;
    c.fading_samples = 2;
    const auto result = run_scenario(spec, c, 1);
    REQUIRE(result.tables.size() == 1);
    CHECK(result.tables[0].rows.size() == 2 * spec.grid.size());
    CHECK(result.tables[0].metric_rows("avg_rate_FD").size() == spec.grid.size());
    CHECK(result.tables[0].metric_rows("avg_rate_HD").size() == spec.grid.size());

    const auto out = scratch("fig4_out");
    std::filesystem::remove_all(out);
    const auto files = write_scenario(result, out, true);
    CHECK(files.size() == 3);
    CHECK(std::filesystem::exists(out / "fig4.csv"));
}

TEST_CASE("infeasible placement is reported")
{
    auto c = seeded();
    c.m = 10;
    c.h = 5;
    c.n = 500;
    CHECK_THROWS_AS(run_drop(c, 1), InfeasiblePlacement);
}

TEST_CASE("download times of every established node")
{
    auto c = seeded(9);
    c.beta_db = -300.0;  // self-interference negligible
    c.n = 500;
    c.fading_samples = 20;
    c.drops = 6;
    const auto lib = make_library(c);
    std::size_t checked = 0;
    for (const DropRecord& d : run_drops(c, lib, 0, 1)) {
        for (const NodeRecord& node : d.nodes) {
            if (node.download.outage) {
                continue;
            }
            ++checked;
            REQUIRE(node.download.fd <= node.download.hd);
            REQUIRE(node.download.hd <= 2.0 * node.download.fd);
            if (is_full_duplex(node.mode)) {
                REQUIRE(node.download.fd < node.download.hd);
                REQUIRE(node.capacity_fd_bps > 0.0);
            }
            else {
                REQUIRE(node.download.fd == node.download.hd);
            }
        }
    }
    CHECK(checked > 0);
}
