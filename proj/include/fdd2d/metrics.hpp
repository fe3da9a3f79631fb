#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace fdd2d {

/// Capacity credited to an established node. HD nodes only deliver on their
/// out-links; FD nodes add the link they receive on. An FD node without
/// out-links cannot exist and is rejected with std::invalid_argument.
double node_capacity(bool full_duplex, std::optional<double> in_link_bps,
                     std::span<const double> out_link_bps);

/// Expected throughput of a node: collaboration probability times capacity.
double node_throughput(double probability, double capacity_bps);

/// Sum throughput of the established nodes of one cluster.
double cluster_sum_throughput(std::span<const double> node_throughput_bps);

/// Time to move `bits` over a link of capacity `capacity_bps`; +inf when the
/// capacity is not positive.
double transfer_time(double bits, double capacity_bps);

enum class DeliveryScenario { Tnfd, Bfd, HalfDuplexOnly };
std::string_view to_string(DeliveryScenario scenario);

struct DownloadTimes {
    double hd = 0.0;
    double fd = 0.0;
    /// Set when some involved link has zero capacity; both times are +inf then.
    bool outage = false;
};

/// Node that receives over `theta_in` while serving the set `served`:
/// HD serializes (theta_in + max served), FD overlaps (max of the two).
/// Times must be positive; an empty served set is rejected.
DownloadTimes download_times_tnfd(double theta_in, std::span<const double> served);

/// Two nodes swapping files.
DownloadTimes download_times_bfd(double theta_ji, double theta_ij);

}  // namespace fdd2d
