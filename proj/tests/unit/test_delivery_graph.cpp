#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fdd2d/delivery_graph.hpp"

using namespace fdd2d;

namespace {

ContentLibrary zipf_library(std::size_t m, double gamma)
{
    return ContentLibrary(zipf_pmf(m, gamma), std::vector<double>(m, 8e6), gamma);
}

// Users packed near the origin so that every pair is closer than l = 0.5.
struct Cluster {
    CellDeployment cell;
    ClusterGrid grid;
    CacheAssignment caches;

    explicit Cluster(std::size_t users, std::size_t m = 20, std::size_t h = 1)
        : cell(make_cell(users)), grid(cell, 0.5), caches(make_caches(grid, m, h))
    {
    }

    FileId file_of(UserId u) const { return caches.cache(u).front(); }

    RequestGraph graph(const std::vector<FileId>& requests) const
    {
        return build_request_graph(cell, grid, caches, requests);
    }

    static CellDeployment make_cell(std::size_t users)
    {
        CellDeployment c;
        c.a_km = 1.0;
        for (std::size_t i = 0; i < users; ++i) {
            c.positions.push_back({0.1 + 0.01 * static_cast<double>(i), 0.1});
        }
        return c;
    }

    static CacheAssignment make_caches(const ClusterGrid& grid, std::size_t m, std::size_t h)
    {
        Rng rng(17);
        return place_caches(grid, zipf_library(m, 1.0), h, rng);
    }
};

}  // namespace

TEST_CASE("all users self-requesting produce no edges")
{
    const Cluster c(4);
    std::vector<FileId> req;
    for (UserId u = 0; u < 4; ++u) {
        req.push_back(c.file_of(u));
    }
    const auto g = c.graph(req);
    CHECK(g.edges().empty());
    for (NodeMode m : classify_modes(g)) {
        CHECK(m == NodeMode::Self);
    }
}

TEST_CASE("mutual exchange forms a BFD pair")
{
    const Cluster c(2);
    const auto g = c.graph({c.file_of(1), c.file_of(0)});
    CHECK(g.edges().size() == 2);
    const auto modes = classify_modes(g);
    CHECK(modes[0] == NodeMode::FdBfd);
    CHECK(modes[1] == NodeMode::FdBfd);
}

TEST_CASE("intermediate node receives from one node and serves a set Z")
{
    // u0 serves u1; u1 serves Z = {u2, u3, u4}, all of whom want u1's file.
    const Cluster c(6);
    const FileId f0 = c.file_of(0);
    const FileId f1 = c.file_of(1);
    const auto g = c.graph({c.file_of(0), f0, f1, f1, f1, c.file_of(5)});
    const auto modes = classify_modes(g);
    CHECK(modes[1] == NodeMode::FdTnfd);
    CHECK(g.out_edges(1).size() == 3);
    CHECK(modes[0] == NodeMode::HdTx);  // self-requesting server still transmits
    CHECK(modes[2] == NodeMode::RxOnly);
    CHECK(modes[5] == NodeMode::Self);
}

TEST_CASE("requester without an in-cluster server is idle")
{
    const Cluster c(3, 20);
    // File 19 is beyond the top k*h = 3 files cached by the cluster.
    const auto g = c.graph({19, c.file_of(1), c.file_of(2)});
    CHECK(classify_modes(g)[0] == NodeMode::Idle);
}

TEST_CASE("node with three requesters and no incoming link is HD-TX")
{
    const Cluster c(4, 20);
    const FileId f0 = c.file_of(0);
    const auto g = c.graph({19, f0, f0, f0});
    const auto modes = classify_modes(g);
    CHECK(modes[0] == NodeMode::HdTx);
    CHECK(g.out_edges(0).size() == 3);
}

TEST_CASE("distance threshold blocks far pairs in the same cluster")
{
    CellDeployment cell;
    cell.a_km = 1.0;
    cell.positions = {{0.01, 0.01}, {0.49, 0.49}};  // same 0.5 cluster, ~0.68 km apart
    const ClusterGrid grid(cell, 0.5);
    Rng rng(1);
    const auto caches = place_caches(grid, zipf_library(10, 1.0), 1, rng);
    REQUIRE(grid.cluster_of(0) == grid.cluster_of(1));
    const auto g = build_request_graph(cell, grid, caches,
                                       std::vector<FileId>{caches.cache(1).front(), caches.cache(0).front()});
    CHECK(g.edges().empty());
}

TEST_CASE("establishment picks the largest cached masses")
{
    SUBCASE("no candidates")
    {
        const Cluster c(3);
        const auto g = c.graph({c.file_of(0), c.file_of(1), c.file_of(2)});
        const auto est = establish_nodes(g, c.grid, c.caches, 2);
        for (const auto& psi : est.per_cluster) {
            CHECK(psi.empty());
        }
    }
    SUBCASE("three candidates, tau = 2")
    {
        const Cluster c(6);
        // u3, u4, u5 each request the file of u0, u1, u2 respectively.
        const auto g = c.graph({19, 19, 19, c.file_of(0), c.file_of(1), c.file_of(2)});
        const auto est = establish_nodes(g, c.grid, c.caches, 2);
        std::vector<UserId> by_mass = {0, 1, 2};
        std::sort(by_mass.begin(), by_mass.end(),
                  [&](UserId a, UserId b) { return c.caches.rho_user(a) > c.caches.rho_user(b); });
        const auto& psi = est.per_cluster[c.grid.cluster_of(0)];
        REQUIRE(psi.size() == 2);
        CHECK(psi[0] == by_mass[0]);
        CHECK(psi[1] == by_mass[1]);
        CHECK_FALSE(est.is_established(by_mass[2]));
    }
    CHECK_THROWS_AS(establish_nodes(RequestGraph{}, Cluster(1).grid, Cluster(1).caches, 0), std::invalid_argument);
}

TEST_CASE("edge list export")
{
    const Cluster c(2);
    const auto g = c.graph({c.file_of(1), c.file_of(0)});
    std::ostringstream out;
    write_edge_list(out, g);
    const ClusterId cl = c.grid.cluster_of(0);
    std::ostringstream expected;
    expected << cl << " 1 0 " << c.file_of(1) << '\n' << cl << " 0 1 " << c.file_of(0) << '\n';
    CHECK(out.str() == expected.str());
}

TEST_CASE("graph invariants over random drops")
{
    const auto lib = zipf_library(1000, 1.0);
    Rng rng(99);
    for (int drop = 0; drop < 30; ++drop) {
        const auto cell = place_users(400, 1.0, rng);
        const ClusterGrid grid(cell, 0.25);
        const auto caches = place_caches(grid, lib, 1 + drop % 2, rng);
        std::vector<FileId> req(cell.user_count());
        for (auto& r : req) {
            r = lib.sample_request(rng);
        }
        const auto g = build_request_graph(cell, grid, caches, req);

        std::vector<int> in_degree(g.node_count(), 0);
        for (const RequestEdge& e : g.edges()) {
            in_degree[e.requester]++;
            REQUIRE(grid.cluster_of(e.server) == grid.cluster_of(e.requester));
            REQUIRE(distance_km(cell.positions[e.server], cell.positions[e.requester]) < grid.l_km());
            REQUIRE(caches.caches(e.server, req[e.requester]));
            REQUIRE_FALSE(caches.caches(e.requester, req[e.requester]));
            REQUIRE(e.file == req[e.requester]);
        }
        REQUIRE(std::all_of(in_degree.begin(), in_degree.end(), [](int d) { return d <= 1; }));

        // Server uniqueness: each requested file cached in-cluster has exactly one holder.
        for (UserId u = 0; u < g.node_count(); ++u) {
            const ClusterId c = grid.cluster_of(u);
            int holders = 0;
            for (UserId v : grid.members(c)) {
                holders += caches.caches(v, req[u]) ? 1 : 0;
            }
            REQUIRE(holders <= 1);
        }

        const auto modes = classify_modes(g);
        for (UserId u = 0; u < g.node_count(); ++u) {
            const bool tx = !g.out_edges(u).empty();
            const bool rx = g.in_edge(u).has_value();
            if (is_full_duplex(modes[u])) {
                REQUIRE(tx);
                REQUIRE(rx);
                const UserId server = g.edges()[*g.in_edge(u)].server;
                const auto& outs = g.out_edges(u);
                const bool mutual = std::any_of(outs.begin(), outs.end(),
                                                [&](std::size_t e) { return g.edges()[e].requester == server; });
                REQUIRE(mutual == (modes[u] == NodeMode::FdBfd));
            }
            if (modes[u] == NodeMode::HdTx) {
                REQUIRE(tx);
                REQUIRE_FALSE(rx);
            }
            if (modes[u] == NodeMode::Self) {
                REQUIRE(g.self_request(u));
                REQUIRE_FALSE(tx);
            }
        }
    }
}
