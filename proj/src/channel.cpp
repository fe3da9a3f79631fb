#include "fdd2d/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace fdd2d {
namespace {

constexpr double kMetresPerKm = 1000.0;

std::size_t transmitter_index(std::span<const Transmitter> transmitters, UserId id)
{
    for (std::size_t z = 0; z < transmitters.size(); ++z) {
        if (transmitters[z].id == id) {
            return z;
        }
    }
    throw std::invalid_argument("link transmitter is not in the concurrent transmitter set");
}

// Path gains from every transmitter to one receiver; the receiver's own entry is zero.
struct ReceiverGeometry {
    std::size_t serving = 0;
    std::vector<double> gain;
};

ReceiverGeometry receiver_geometry(const ActiveLink& link, std::span<const Transmitter> transmitters,
                                   double alpha)
{
    ReceiverGeometry geo;
    geo.serving = transmitter_index(transmitters, link.tx);
    geo.gain.resize(transmitters.size(), 0.0);
    for (std::size_t z = 0; z < transmitters.size(); ++z) {
        if (transmitters[z].id == link.rx) {
            continue;
        }
        const double d_m = distance_km(transmitters[z].position, link.rx_position) * kMetresPerKm;
        if (!(d_m > 0.0)) {
            throw DegenerateGeometry(z == geo.serving ? "zero transmitter-receiver distance"
                                                      : "interferer co-located with receiver");
        }
        geo.gain[z] = path_gain(d_m, alpha);
    }
    return geo;
}

struct SinrPair {
    double full_duplex;
    double half_duplex;
};

SinrPair evaluate(const ReceiverGeometry& geo, bool rx_transmitting, std::span<const Transmitter> transmitters,
                  const ChannelEnv& env, std::span<const double> draw)
{
    double interference = 0.0;
    double hd_interference = 0.0;
    for (std::size_t z = 0; z < geo.gain.size(); ++z) {
        if (z != geo.serving) {
            const double p = env.pt_w * draw[z] * geo.gain[z];
            interference += p;
            if (transmitters[z].in_half_duplex_schedule) {
                hd_interference += p;
            }
        }
    }
    const double signal = env.pt_w * draw[geo.serving] * geo.gain[geo.serving];
    const double si = rx_transmitting ? env.beta * env.pt_w : 0.0;
    return {signal / (env.noise_w + interference + si), signal / (env.noise_w + hd_interference)};
}

class DrawSource {
public:
    explicit DrawSource(const ChannelEnv& env)
        : fading_(env.fading), shadowed_(env.shadow_sigma_db > 0.0)
    {
        // g = 10^(X/10), X ~ N(0, sigma_dB), written as exp(s*Z - s^2/2) with
        // s = sigma_dB ln10 / 10 so that E[g] = 1.
        scale_ = env.shadow_sigma_db * std::numbers::ln10 / 10.0;
        offset_ = -0.5 * scale_ * scale_;
    }

    double next(Rng& rng)
    {
        double h = 1.0;
        if (fading_ == FadingModel::Rayleigh) {
            h = exp_(rng);
        }
        if (shadowed_) {
            h *= std::exp(scale_ * normal_(rng) + offset_);
        }
        return h;
    }

private:
    FadingModel fading_;
    // Ziggurat samplers: this loop runs once per (sample, link, transmitter).
    boost::random::exponential_distribution<double> exp_{1.0};
    boost::random::normal_distribution<double> normal_{0.0, 1.0};
    bool shadowed_;
    double scale_ = 0.0;
    double offset_ = 0.0;
};

class RunningMean {
public:
    void add(double x)
    {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    CapacityEstimate estimate() const
    {
        CapacityEstimate e;
        e.samples = count_;
        e.mean_bps = mean_;
        if (count_ > 1) {
            const double var = m2_ / static_cast<double>(count_ - 1);
            e.stderr_bps = std::sqrt(var / static_cast<double>(count_));
        }
        return e;
    }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

ChannelEnv ChannelEnv::from_link_budget(double pt_dbm, double noise_dbm_per_hz, double bandwidth_hz,
                                        double alpha, double beta_db, double shadow_sigma_db)
{
    ChannelEnv env;
    env.pt_w = dbm_to_watts(pt_dbm);
    env.noise_w = dbm_to_watts(noise_dbm_per_hz + 10.0 * std::log10(bandwidth_hz));
    env.alpha = alpha;
    env.beta = db_to_linear(beta_db);
    env.shadow_sigma_db = shadow_sigma_db;
    env.bandwidth_hz = bandwidth_hz;
    env.validate();
    return env;
}

void ChannelEnv::validate() const
{
    if (!(pt_w > 0.0)) throw std::invalid_argument("ChannelEnv: transmit power must be positive");
    if (!(noise_w > 0.0)) throw std::invalid_argument("ChannelEnv: noise power must be positive");
    if (!(alpha >= 2.0)) throw std::invalid_argument("ChannelEnv: path-loss exponent must be >= 2");
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("ChannelEnv: beta must lie in [0, 1]");
    if (!(shadow_sigma_db >= 0.0)) throw std::invalid_argument("ChannelEnv: shadowing spread must be >= 0");
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("ChannelEnv: bandwidth must be positive");
}

double path_gain(double distance_m, double alpha)
{
    return std::pow(distance_m, -alpha);
}

double sinr(const ActiveLink& link, std::span<const Transmitter> transmitters, const ChannelEnv& env,
            std::span<const double> draw)
{
    if (draw.size() != transmitters.size()) {
        throw std::invalid_argument("sinr: one draw per transmitter required");
    }
    const ReceiverGeometry geo = receiver_geometry(link, transmitters, env.alpha);
    return evaluate(geo, link.rx_transmitting, transmitters, env, draw).full_duplex;
}

CapacityEstimate ergodic_capacity(const ActiveLink& link, std::span<const Transmitter> transmitters,
                                  const ChannelEnv& env, std::size_t n_samples, Rng& rng)
{
    const auto caps = estimate_link_capacities(std::span(&link, 1), transmitters, env, n_samples, rng);
    return caps.front().full_duplex;
}

std::vector<LinkCapacity> estimate_link_capacities(std::span<const ActiveLink> links,
                                                   std::span<const Transmitter> transmitters,
                                                   const ChannelEnv& env, std::size_t n_samples,
                                                   Rng& rng)
{
    if (n_samples == 0) {
        throw std::invalid_argument("estimate_link_capacities: at least one sample required");
    }
    env.validate();
    std::vector<ReceiverGeometry> geometry;
    geometry.reserve(links.size());
    for (const ActiveLink& link : links) {
        geometry.push_back(receiver_geometry(link, transmitters, env.alpha));
    }

    std::vector<RunningMean> fd(links.size());
    std::vector<RunningMean> hd(links.size());
    std::vector<double> draw(transmitters.size());
    DrawSource source(env);
    for (std::size_t s = 0; s < n_samples; ++s) {
        for (std::size_t r = 0; r < links.size(); ++r) {
            for (double& d : draw) {
                d = source.next(rng);
            }
            const SinrPair g = evaluate(geometry[r], links[r].rx_transmitting, transmitters, env, draw);
            fd[r].add(env.bandwidth_hz * std::log2(1.0 + g.full_duplex));
            hd[r].add(env.bandwidth_hz * std::log2(1.0 + g.half_duplex));
        }
    }

    std::vector<LinkCapacity> out(links.size());
    for (std::size_t r = 0; r < links.size(); ++r) {
        out[r].full_duplex = fd[r].estimate();
        out[r].half_duplex = hd[r].estimate();
    }
    return out;
}

}  // namespace fdd2d
