#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "fdd2d/placement.hpp"

using namespace fdd2d;

namespace {

ContentLibrary zipf_library(std::size_t m, double gamma)
{
    return ContentLibrary(zipf_pmf(m, gamma), std::vector<double>(m, 8e6), gamma);
}

CellDeployment cell_with(std::vector<Point> points)
{
    CellDeployment cell;
    cell.a_km = 1.0;
    cell.positions = std::move(points);
    return cell;
}

}  // namespace

TEST_CASE("single user caching the whole library")
{
    const auto lib = zipf_library(6, 1.0);
    const auto cell = cell_with({{0.3, 0.3}});
    const ClusterGrid grid(cell, 1.0);
    Rng rng(1);
    const auto caches = place_caches(grid, lib, 6, rng);
    CHECK(caches.rho_user(0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(caches.rho_cluster(grid.cluster_of(0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two users, m=4, h=1, gamma=1")
{
    const auto lib = zipf_library(4, 1.0);
    const auto cell = cell_with({{0.05, 0.05}, {0.1, 0.1}});
    const ClusterGrid grid(cell, 0.2);
    Rng rng(3);
    const auto caches = place_caches(grid, lib, 1, rng);

    std::set<FileId> held = {caches.cache(0).front(), caches.cache(1).front()};
    CHECK(held == std::set<FileId>{0, 1});

    const double h4 = 1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4;
    CHECK(caches.rho_cluster(grid.cluster_of(0)) == doctest::Approx((1.0 + 0.5) / h4).epsilon(1e-14));
    CHECK(caches.holder(grid.cluster_of(0), caches.cache(1).front()) == 1);
    CHECK(caches.holder(grid.cluster_of(0), 3) == CacheAssignment::kNoHolder);

    // The empty clusters of the grid hold nothing.
    for (ClusterId c = 0; c < grid.cluster_count(); ++c) {
        if (grid.members(c).empty()) {
            CHECK(caches.rho_cluster(c) == 0.0);
        }
    }
}

TEST_CASE("rho_user")
{
    const auto two = zipf_library(2, 1.0);
    CHECK(rho_user(std::vector<FileId>{}, two) == 0.0);
    CHECK(rho_user(std::vector<FileId>{0, 1}, two) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rho_user(std::vector<FileId>{0}, two) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK_THROWS_AS(rho_user(std::vector<FileId>{2}, two), std::invalid_argument);
}

TEST_CASE("overfull cluster is rejected with its index")
{
    const auto lib = zipf_library(3, 1.0);
    const auto cell = cell_with({{0.1, 0.1}, {0.12, 0.1}, {0.9, 0.9}});
    const ClusterGrid grid(cell, 0.5);
    Rng rng(1);
    try {
        place_caches(grid, lib, 2, rng);
        FAIL("expected InfeasiblePlacement");
    } catch (const InfeasiblePlacement& e) {
        CHECK(e.cluster() == grid.cluster_of(0));
        CHECK(e.occupants() == 2);
    }
}

TEST_CASE("random placements: disjoint, h per user, rho_c is the member sum")
{
    const auto lib = zipf_library(1000, 1.0);
    Rng rng(8);
    for (int drop = 0; drop < 20; ++drop) {
        const auto cell = place_users(300, 1.0, rng);
        const ClusterGrid grid(cell, 0.3);
        const std::size_t h = 1 + drop % 3;
        const auto caches = place_caches(grid, lib, h, rng);
        for (ClusterId c = 0; c < grid.cluster_count(); ++c) {
            std::set<FileId> seen;
            double sum = 0.0;
            for (UserId u : grid.members(c)) {
                REQUIRE(caches.cache(u).size() == h);
                for (FileId f : caches.cache(u)) {
                    REQUIRE(seen.insert(f).second);
                    REQUIRE(caches.holder(c, f) == u);
                }
                REQUIRE(caches.rho_user(u) <= caches.rho_cluster(c) + 1e-15);
                sum += caches.rho_user(u);
            }
            REQUIRE(std::abs(sum - caches.rho_cluster(c)) < 1e-12);
            REQUIRE(caches.rho_cluster(c) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("most-popular-first mass is the best k*h-subset mass")
{
    const auto lib = zipf_library(8, 0.8);
    const auto cell = cell_with({{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.1}});
    const ClusterGrid grid(cell, 1.0);
    Rng rng(4);
    const auto caches = place_caches(grid, lib, 2, rng);
    const double mass = caches.rho_cluster(grid.cluster_of(0));

    // Brute force over all 6-subsets of 8 files.
    double best = 0.0;
    for (unsigned mask = 0; mask < (1u << 8); ++mask) {
        if (std::popcount(mask) != 6) {
            continue;
        }
        double m = 0.0;
        for (FileId f = 0; f < 8; ++f) {
            if (mask & (1u << f)) {
                m += lib.popularity(f);
            }
        }
        best = std::max(best, m);
    }
    CHECK(mass == doctest::Approx(best).epsilon(1e-14));
}
