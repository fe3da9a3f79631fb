#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fdd2d/rng.hpp"

namespace fdd2d {

using UserId = std::uint32_t;
using ClusterId = std::uint32_t;

/// Position in kilometres, origin at the lower-left corner of the cell.
struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance_km(Point a, Point b);

/// Users dropped uniformly over a square cell of area 2a^2 (side a*sqrt(2)).
struct CellDeployment {
    double a_km = 1.0;
    std::vector<Point> positions;

    double side_km() const;
    double area_km2() const { return 2.0 * a_km * a_km; }
    std::size_t user_count() const { return positions.size(); }
};

CellDeployment place_users(std::size_t n, double a_km, Rng& rng);

/// Square grid of clusters of side l anchored at the cell origin. When the cell
/// side is not a multiple of l, the last row and column are truncated rectangles.
class ClusterGrid {
public:
    ClusterGrid(const CellDeployment& cell, double l_km);

    double l_km() const { return l_km_; }
    std::size_t columns() const { return columns_; }
    std::size_t cluster_count() const { return columns_ * columns_; }
    ClusterId cluster_of(UserId user) const { return cluster_of_[user]; }
    const std::vector<UserId>& members(ClusterId cluster) const { return members_[cluster]; }

    /// True when the cluster is a full l-by-l square (not truncated by the cell edge).
    bool is_full(ClusterId cluster) const;
    std::size_t full_columns() const { return full_columns_; }

private:
    double l_km_;
    std::size_t columns_ = 0;
    std::size_t full_columns_ = 0;
    std::vector<ClusterId> cluster_of_;
    std::vector<std::vector<UserId>> members_;
};

/// Throws std::invalid_argument if l <= 0 or l exceeds the cell side.
ClusterGrid assign_clusters(const CellDeployment& cell, double l_km);

/// Cluster-to-cell area ratio l^2 / (2 a^2).
double cluster_ratio(double l_km, double a_km);

/// Binomial pmf over k = 0..n, evaluated in log space.
std::vector<double> binomial_pmf(std::size_t n, double p);

/// Pr[K = k] for the number of users inside one cluster, k = 0..n.
/// Throws std::invalid_argument when the area ratio is outside (0, 1].
std::vector<double> occupancy_pmf(std::size_t n, double l_km, double a_km);

}  // namespace fdd2d
