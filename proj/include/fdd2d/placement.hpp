#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdd2d/popularity.hpp"
#include "fdd2d/topology.hpp"

namespace fdd2d {

/// Raised when a cluster holds more users than the library can fill without overlap.
class InfeasiblePlacement : public std::runtime_error {
public:
    InfeasiblePlacement(ClusterId cluster, std::size_t occupants, std::size_t h, std::size_t m);

    ClusterId cluster() const { return cluster_; }
    std::size_t occupants() const { return occupants_; }

private:
    ClusterId cluster_;
    std::size_t occupants_;
};

/// Per-user caches with no overlap inside any cluster.
///
/// A cluster with k members caches exactly the k*h most popular files, so a
/// file f is cached in cluster c iff f < k_c * h, and its holder is
/// `holder(c, f)`. Users in different clusters may hold the same files.
class CacheAssignment {
public:
    CacheAssignment() = default;

    std::size_t files_per_user() const { return h_; }
    const std::vector<FileId>& cache(UserId user) const { return caches_[user]; }
    bool caches(UserId user, FileId file) const;

    /// Holder of `file` within `cluster`, or kNoHolder if the cluster does not cache it.
    UserId holder(ClusterId cluster, FileId file) const;
    static constexpr UserId kNoHolder = static_cast<UserId>(-1);

    double rho_user(UserId user) const { return rho_user_[user]; }
    double rho_cluster(ClusterId cluster) const { return rho_cluster_[cluster]; }

private:
    friend CacheAssignment place_caches(const ClusterGrid&, const ContentLibrary&, std::size_t, Rng&);

    std::size_t h_ = 0;
    std::vector<std::vector<FileId>> caches_;
    std::vector<std::vector<UserId>> holders_;  // per cluster, indexed by file rank
    std::vector<double> rho_user_;
    std::vector<double> rho_cluster_;
};

/// Most-popular-first placement: each cluster's top k*h files are shuffled and
/// handed out h per member. Throws InfeasiblePlacement if k*h > m anywhere.
CacheAssignment place_caches(const ClusterGrid& grid, const ContentLibrary& library, std::size_t h,
                             Rng& rng);

/// Popularity mass of a set of cached files.
double rho_user(std::span<const FileId> cache, const ContentLibrary& library);

}  // namespace fdd2d
