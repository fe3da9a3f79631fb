#include "fdd2d/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fdd2d {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_time(double t)
{
    if (std::isnan(t) || !(t > 0.0)) {
        throw std::invalid_argument("download time must be strictly positive");
    }
}

DownloadTimes outage()
{
    return {kInf, kInf, true};
}

}  // namespace

double node_capacity(bool full_duplex, std::optional<double> in_link_bps,
                     std::span<const double> out_link_bps)
{
    if (full_duplex && out_link_bps.empty()) {
        throw std::invalid_argument("node_capacity: an FD node must serve at least one link");
    }
    if (full_duplex && !in_link_bps) {
        throw std::invalid_argument("node_capacity: an FD node needs its incoming link");
    }
    double total = std::accumulate(out_link_bps.begin(), out_link_bps.end(), 0.0);
    if (full_duplex) {
        total += *in_link_bps;
    }
    return total;
}

double node_throughput(double probability, double capacity_bps)
{
    if (!(probability >= 0.0 && probability <= 1.0)) {
        throw std::invalid_argument("node_throughput: probability outside [0, 1]");
    }
    return probability * capacity_bps;
}

double cluster_sum_throughput(std::span<const double> node_throughput_bps)
{
    return std::accumulate(node_throughput_bps.begin(), node_throughput_bps.end(), 0.0);
}

double transfer_time(double bits, double capacity_bps)
{
    if (!(capacity_bps > 0.0)) {
        return kInf;
    }
    return bits / capacity_bps;
}

std::string_view to_string(DeliveryScenario scenario)
{
    switch (scenario) {
    case DeliveryScenario::Tnfd: return "TNFD";
    case DeliveryScenario::Bfd: return "BFD";
    case DeliveryScenario::HalfDuplexOnly: return "HD";
    }
    return "?";
}

DownloadTimes download_times_tnfd(double theta_in, std::span<const double> served)
{
    if (served.empty()) {
        throw std::invalid_argument("download_times_tnfd: served set must not be empty");
    }
    if (std::isinf(theta_in) || std::any_of(served.begin(), served.end(), [](double t) { return std::isinf(t); })) {
        return outage();
    }
    check_time(theta_in);
    for (double t : served) {
        check_time(t);
    }
    const double slowest = *std::max_element(served.begin(), served.end());
    return {theta_in + slowest, std::max(theta_in, slowest), false};
}

DownloadTimes download_times_bfd(double theta_ji, double theta_ij)
{
    if (std::isinf(theta_ji) || std::isinf(theta_ij)) {
        return outage();
    }
    check_time(theta_ji);
    check_time(theta_ij);
    return {theta_ji + theta_ij, std::max(theta_ji, theta_ij), false};
}

}  // namespace fdd2d
