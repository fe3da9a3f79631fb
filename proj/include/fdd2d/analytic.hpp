#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace fdd2d {

/// Probability that a user's request is cached by another member of its
/// cluster: rho_c - rho_u. Throws std::invalid_argument if rho_u > rho_c.
double p_find(double rho_c, double rho_u);

/// Probability that exactly x of the other k-1 members request one of the
/// user's files. Zero for k < 2; throws if x > k-1 otherwise.
double q_serve(std::size_t x, std::size_t k, double rho_u);

/// Probability that the user serves at least one request: sum of q_serve over x = 1..k-1.
double p_serve(std::size_t k, double rho_u);

/// Cached-mass picture of a cluster with a given occupancy: the cluster mass
/// and the mass held by each member. A typical user is any entry of `rho_user`
/// with equal weight.
struct ClusterMass {
    double rho_cluster = 0.0;
    std::vector<double> rho_user;
};

/// Occupancy k -> cluster mass. Supplied by the caller so that rho may depend on k.
using RhoProfile = std::function<ClusterMass(std::size_t k)>;

struct CollaborationProbabilities {
    double fd = 0.0;
    double hd = 0.0;
    double self = 1.0;
};

/// Closed-form FD / HD / self collaboration probabilities of a user in a
/// representative cluster under binomial occupancy with n users and area
/// ratio `ratio`. `self` is the normalization complement, so the three sum to one.
CollaborationProbabilities collaboration_probabilities(std::size_t n, double ratio,
                                                       const RhoProfile& profile);

double p_hd(std::size_t n, double ratio, const RhoProfile& profile);
double p_fd(std::size_t n, double ratio, const RhoProfile& profile);
double p_self(std::size_t n, double ratio, const RhoProfile& profile);

/// Profile of the most-popular-first placement: a cluster of k users caches the
/// top k*h files of `pmf`, each user a uniformly random h of them. For h == 1 the
/// members hold exactly f_1..f_k. For h > 1 the per-user masses are
/// `partitions` random partitions drawn from a stream seeded by (`seed`, k).
RhoProfile most_popular_profile(std::vector<double> pmf, std::size_t h,
                                std::size_t partitions = 64, std::uint64_t seed = 1);

}  // namespace fdd2d
