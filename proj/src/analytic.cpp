#include "fdd2d/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fdd2d/rng.hpp"
#include "fdd2d/topology.hpp"

namespace fdd2d {
namespace {

constexpr double kMassSlack = 1e-12;

// Occupancies whose binomial weight is below this contribute nothing measurable.
constexpr double kNegligibleWeight = 1e-18;

// Binomial terms below this fraction of the running sum are dropped.
constexpr double kNegligibleTerm = 1e-20;

void check_probability(double p, const char* what)
{
    if (!(p >= -kMassSlack && p <= 1.0 + kMassSlack)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    }
}

}  // namespace

double p_find(double rho_c, double rho_u)
{
    check_probability(rho_c, "p_find: rho_c");
    check_probability(rho_u, "p_find: rho_u");
    if (rho_u > rho_c + kMassSlack) {
        throw std::invalid_argument("p_find: user mass exceeds cluster mass");
    }
    return std::max(0.0, rho_c - rho_u);
}

double q_serve(std::size_t x, std::size_t k, double rho_u)
{
    check_probability(rho_u, "q_serve: rho_u");
    if (k < 2) {
        return 0.0;
    }
    const std::size_t trials = k - 1;
    if (x > trials) {
        throw std::invalid_argument("q_serve: x exceeds k - 1");
    }
    const double rho = std::clamp(rho_u, 0.0, 1.0);
    if (rho == 0.0) {
        return x == 0 ? 1.0 : 0.0;
    }
    if (rho == 1.0) {
        return x == trials ? 1.0 : 0.0;
    }
    const double t = static_cast<double>(trials);
    const double xd = static_cast<double>(x);
    const double log_choose = std::lgamma(t + 1.0) - std::lgamma(xd + 1.0) - std::lgamma(t - xd + 1.0);
    return std::exp(log_choose + xd * std::log(rho) + (t - xd) * std::log1p(-rho));
}

double p_serve(std::size_t k, double rho_u)
{
    check_probability(rho_u, "p_serve: rho_u");
    if (k < 2) {
        return 0.0;
    }
    const std::size_t trials = k - 1;
    const double rho = std::clamp(rho_u, 0.0, 1.0);
    if (rho == 0.0) {
        return 0.0;
    }
    if (rho == 1.0) {
        return 1.0;
    }
    // Sum of q_serve over x = 1..k-1, walking outward from the mode with the
    // term ratio q(x+1)/q(x) and stopping once terms no longer register.
    const double t = static_cast<double>(trials);
    const double odds = rho / (1.0 - rho);
    const std::size_t mode = std::min(trials, static_cast<std::size_t>((t + 1.0) * rho));
    const double peak = q_serve(mode, k, rho);
    double total = 0.0;
    double q = peak;
    for (std::size_t x = mode; x >= 1; --x) {
        total += q;
        q *= static_cast<double>(x) / ((t - static_cast<double>(x) + 1.0) * odds);
        if (q < kNegligibleTerm * total) {
            break;
        }
    }
    q = peak;
    for (std::size_t x = mode; x < trials; ++x) {
        q *= (t - static_cast<double>(x)) / static_cast<double>(x + 1) * odds;
        total += q;
        if (q < kNegligibleTerm * total) {
            break;
        }
    }
    return total;
}

CollaborationProbabilities collaboration_probabilities(std::size_t n, double ratio,
                                                       const RhoProfile& profile)
{
    if (!(ratio > 0.0 && ratio <= 1.0 + kMassSlack)) {
        throw std::invalid_argument("collaboration_probabilities: area ratio must lie in (0, 1]");
    }
    const std::vector<double> occupancy = binomial_pmf(n, std::min(ratio, 1.0));
    CollaborationProbabilities out;
    double fd = 0.0;
    double hd = 0.0;
    for (std::size_t k = 2; k <= n; ++k) {
        if (occupancy[k] < kNegligibleWeight) {
            continue;
        }
        const ClusterMass mass = profile(k);
        if (mass.rho_user.empty()) {
            throw std::invalid_argument("collaboration_probabilities: profile returned no users");
        }
        double fd_k = 0.0;
        double hd_k = 0.0;
        for (double rho_u : mass.rho_user) {
            const double find = p_find(mass.rho_cluster, rho_u);
            const double serve = p_serve(k, rho_u);
            fd_k += find * serve;
            hd_k += (1.0 - find) * serve;
        }
        const double users = static_cast<double>(mass.rho_user.size());
        fd += occupancy[k] * fd_k / users;
        hd += occupancy[k] * hd_k / users;
    }
    out.fd = fd;
    out.hd = hd;
    out.self = 1.0 - fd - hd;
    return out;
}

double p_hd(std::size_t n, double ratio, const RhoProfile& profile)
{
    return collaboration_probabilities(n, ratio, profile).hd;
}

double p_fd(std::size_t n, double ratio, const RhoProfile& profile)
{
    return collaboration_probabilities(n, ratio, profile).fd;
}

double p_self(std::size_t n, double ratio, const RhoProfile& profile)
{
    return collaboration_probabilities(n, ratio, profile).self;
}

RhoProfile most_popular_profile(std::vector<double> pmf, std::size_t h, std::size_t partitions,
                                std::uint64_t seed)
{
    if (h == 0 || partitions == 0) {
        throw std::invalid_argument("most_popular_profile: h and partitions must be positive");
    }
    return [pmf = std::move(pmf), h, partitions, seed](std::size_t k) {
        const std::size_t slots = k * h;
        if (slots > pmf.size()) {
            throw std::invalid_argument("most_popular_profile: k*h exceeds library size");
        }
        ClusterMass mass;
        mass.rho_cluster = std::accumulate(pmf.begin(), pmf.begin() + static_cast<std::ptrdiff_t>(slots), 0.0);
        if (h == 1) {
            mass.rho_user.assign(pmf.begin(), pmf.begin() + static_cast<std::ptrdiff_t>(k));
            return mass;
        }
        Rng rng(split_seed(seed, 0x70726f66ULL, k));
        std::vector<double> top(pmf.begin(), pmf.begin() + static_cast<std::ptrdiff_t>(slots));
        mass.rho_user.reserve(partitions * k);
        for (std::size_t r = 0; r < partitions; ++r) {
            std::shuffle(top.begin(), top.end(), rng);
            for (std::size_t u = 0; u < k; ++u) {
                const auto first = top.begin() + static_cast<std::ptrdiff_t>(u * h);
                mass.rho_user.push_back(std::accumulate(first, first + static_cast<std::ptrdiff_t>(h), 0.0));
            }
        }
        return mass;
    };
}

}  // namespace fdd2d
