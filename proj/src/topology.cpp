#include "fdd2d/topology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fdd2d {
namespace {

// Absorbs rounding when the cell side is an exact multiple of l.
constexpr double kGridSlack = 1e-9;

}  // namespace

double distance_km(Point a, Point b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

double CellDeployment::side_km() const
{
    return a_km * std::sqrt(2.0);
}

CellDeployment place_users(std::size_t n, double a_km, Rng& rng)
{
    if (!(a_km > 0.0)) {
        throw std::invalid_argument("place_users: cell size must be positive");
    }
    CellDeployment cell;
    cell.a_km = a_km;
    std::uniform_real_distribution<double> coord(0.0, cell.side_km());
    cell.positions.resize(n);
    for (Point& p : cell.positions) {
        p.x = coord(rng);
        p.y = coord(rng);
    }
    return cell;
}

ClusterGrid::ClusterGrid(const CellDeployment& cell, double l_km) : l_km_(l_km)
{
    const double side = cell.side_km();
    if (!(l_km > 0.0)) {
        throw std::invalid_argument("assign_clusters: cluster side must be positive");
    }
    if (l_km > side * (1.0 + kGridSlack)) {
        throw std::invalid_argument("assign_clusters: cluster side exceeds the cell side");
    }
    const double cells_per_side = side / l_km;
    columns_ = static_cast<std::size_t>(std::ceil(cells_per_side - kGridSlack));
    columns_ = std::max<std::size_t>(columns_, 1);
    full_columns_ = static_cast<std::size_t>(std::floor(cells_per_side + kGridSlack));

    members_.resize(columns_ * columns_);
    cluster_of_.resize(cell.positions.size());
    const auto last = static_cast<long>(columns_) - 1;
    for (std::size_t u = 0; u < cell.positions.size(); ++u) {
        const Point p = cell.positions[u];
        const long cx = std::clamp(static_cast<long>(std::floor(p.x / l_km)), 0L, last);
        const long cy = std::clamp(static_cast<long>(std::floor(p.y / l_km)), 0L, last);
        const auto id = static_cast<ClusterId>(cy * static_cast<long>(columns_) + cx);
        cluster_of_[u] = id;
        members_[id].push_back(static_cast<UserId>(u));
    }
}

bool ClusterGrid::is_full(ClusterId cluster) const
{
    const std::size_t cx = cluster % columns_;
    const std::size_t cy = cluster / columns_;
    return cx < full_columns_ && cy < full_columns_;
}

ClusterGrid assign_clusters(const CellDeployment& cell, double l_km)
{
    return ClusterGrid(cell, l_km);
}

double cluster_ratio(double l_km, double a_km)
{
    return (l_km * l_km) / (2.0 * a_km * a_km);
}

std::vector<double> binomial_pmf(std::size_t n, double p)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("binomial_pmf: probability outside [0, 1]");
    }
    std::vector<double> pmf(n + 1, 0.0);
    if (p == 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    if (p == 1.0) {
        pmf[n] = 1.0;
        return pmf;
    }
    const double nd = static_cast<double>(n);
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    const double log_n_fact = std::lgamma(nd + 1.0);
    for (std::size_t k = 0; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        const double log_choose = log_n_fact - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
        pmf[k] = std::exp(log_choose + kd * log_p + (nd - kd) * log_q);
    }
    return pmf;
}

std::vector<double> occupancy_pmf(std::size_t n, double l_km, double a_km)
{
    if (!(l_km > 0.0) || !(a_km > 0.0)) {
        throw std::invalid_argument("occupancy_pmf: l and a must be positive");
    }
    const double ratio = cluster_ratio(l_km, a_km);
    if (ratio > 1.0 + 1e-12) {
        throw std::invalid_argument("occupancy_pmf: cluster larger than the cell");
    }
    return binomial_pmf(n, std::min(ratio, 1.0));
}

}  // namespace fdd2d
