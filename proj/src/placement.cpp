#include "fdd2d/placement.hpp"

#include <algorithm>
#include <numeric>

namespace fdd2d {

InfeasiblePlacement::InfeasiblePlacement(ClusterId cluster, std::size_t occupants, std::size_t h,
                                         std::size_t m)
    : std::runtime_error("infeasible placement in cluster " + std::to_string(cluster) + ": " +
                         std::to_string(occupants) + " users x " + std::to_string(h) +
                         " files exceeds library size " + std::to_string(m)),
      cluster_(cluster),
      occupants_(occupants)
{
}

bool CacheAssignment::caches(UserId user, FileId file) const
{
    const auto& c = caches_[user];
    return std::find(c.begin(), c.end(), file) != c.end();
}

UserId CacheAssignment::holder(ClusterId cluster, FileId file) const
{
    const auto& h = holders_[cluster];
    return file < h.size() ? h[file] : kNoHolder;
}

CacheAssignment place_caches(const ClusterGrid& grid, const ContentLibrary& library, std::size_t h,
                             Rng& rng)
{
    const std::size_t m = library.size();
    if (h > m) {
        throw std::invalid_argument("place_caches: h exceeds library size");
    }
    std::size_t users = 0;
    for (ClusterId c = 0; c < grid.cluster_count(); ++c) {
        const std::size_t k = grid.members(c).size();
        if (k * h > m) {
            throw InfeasiblePlacement(c, k, h, m);
        }
        users += k;
    }

    CacheAssignment out;
    out.h_ = h;
    out.caches_.resize(users);
    out.rho_user_.assign(users, 0.0);
    out.holders_.resize(grid.cluster_count());
    out.rho_cluster_.assign(grid.cluster_count(), 0.0);

    std::vector<FileId> files;
    for (ClusterId c = 0; c < grid.cluster_count(); ++c) {
        const auto& members = grid.members(c);
        const std::size_t slots = members.size() * h;
        files.resize(slots);
        std::iota(files.begin(), files.end(), FileId{0});
        std::shuffle(files.begin(), files.end(), rng);

        auto& holders = out.holders_[c];
        holders.assign(slots, CacheAssignment::kNoHolder);
        for (std::size_t i = 0; i < members.size(); ++i) {
            const UserId u = members[i];
            auto& cache = out.caches_[u];
            cache.assign(files.begin() + static_cast<std::ptrdiff_t>(i * h),
                         files.begin() + static_cast<std::ptrdiff_t>((i + 1) * h));
            std::sort(cache.begin(), cache.end());
            for (FileId f : cache) {
                holders[f] = u;
            }
            out.rho_user_[u] = rho_user(cache, library);
            out.rho_cluster_[c] += out.rho_user_[u];
        }
    }
    return out;
}

double rho_user(std::span<const FileId> cache, const ContentLibrary& library)
{
    double mass = 0.0;
    for (FileId f : cache) {
        mass += library.popularity(f);
    }
    return mass;
}

}  // namespace fdd2d
