#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "fdd2d/rng.hpp"
#include "fdd2d/topology.hpp"

namespace fdd2d {

double dbm_to_watts(double dbm);
double db_to_linear(double db);

enum class FadingModel {
    Rayleigh,  // exponential power coefficients of mean one
    None,      // h = 1 on every link
};

/// Radio environment shared by every D2D link in the cell.
struct ChannelEnv {
    double pt_w = 0.0;             // transmit power
    double noise_w = 0.0;          // noise power over the whole bandwidth
    double alpha = 2.6;            // path-loss exponent
    double beta = 0.0;             // residual self-interference ratio, linear
    double shadow_sigma_db = 0.0;  // log-normal shadowing spread
    double bandwidth_hz = 0.0;
    FadingModel fading = FadingModel::Rayleigh;

    /// Builds the environment from link-budget figures: noise density in
    /// dBm/Hz is integrated over the bandwidth, beta is given in dB.
    static ChannelEnv from_link_budget(double pt_dbm, double noise_dbm_per_hz, double bandwidth_hz,
                                       double alpha, double beta_db, double shadow_sigma_db);

    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;
};

/// Power gain d^-alpha with d in metres.
double path_gain(double distance_m, double alpha);

class DegenerateGeometry : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Transmitter {
    UserId id;
    Point position;
    /// Counted as interference in the half-duplex estimate.
    bool in_half_duplex_schedule = true;
};

/// A receiving end of the concurrent transmitter set. `rx_transmitting` marks
/// a receiver that is itself in the transmitter set and so sees beta*Pt of its
/// own signal.
struct ActiveLink {
    UserId tx;
    UserId rx;
    Point rx_position;
    bool rx_transmitting = false;
};

/// SINR of `link` for one channel realization. `draw[z]` is the combined
/// fading-times-shadowing power coefficient from transmitters[z] to the link's
/// receiver. The receiver's own transmission never counts as interference.
/// Throws DegenerateGeometry if any contributing distance is zero.
double sinr(const ActiveLink& link, std::span<const Transmitter> transmitters, const ChannelEnv& env,
            std::span<const double> draw);

struct CapacityEstimate {
    double mean_bps = 0.0;
    double stderr_bps = 0.0;
    std::size_t samples = 0;
};

/// W * E[log2(1 + SINR)] for one link, averaged over `n_samples` independent
/// fading and shadowing draws with positions held fixed.
CapacityEstimate ergodic_capacity(const ActiveLink& link, std::span<const Transmitter> transmitters,
                                  const ChannelEnv& env, std::size_t n_samples, Rng& rng);

/// Capacity of one link in both schedules, estimated from the same draws.
/// `full_duplex`: every transmitter interferes and a transmitting receiver
/// sees beta*Pt. `half_duplex`: only half-duplex-schedule transmitters
/// interfere and there is no self-interference.
struct LinkCapacity {
    CapacityEstimate full_duplex;
    CapacityEstimate half_duplex;
};

/// Estimates every link of the concurrent set from common random numbers.
/// For each sample, one coefficient per (link, transmitter) pair is drawn in
/// link-major order, so the result depends only on the inputs and the stream.
std::vector<LinkCapacity> estimate_link_capacities(std::span<const ActiveLink> links,
                                                   std::span<const Transmitter> transmitters,
                                                   const ChannelEnv& env, std::size_t n_samples,
                                                   Rng& rng);

}  // namespace fdd2d
