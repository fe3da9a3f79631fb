#include "fdd2d/delivery_graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace fdd2d {

std::string_view to_string(NodeMode mode)
{
    switch (mode) {
    case NodeMode::Self: return "SELF";
    case NodeMode::HdTx: return "HD-TX";
    case NodeMode::FdBfd: return "FD-BFD";
    case NodeMode::FdTnfd: return "FD-TNFD";
    case NodeMode::Idle: return "IDLE";
    case NodeMode::RxOnly: return "RX-ONLY";
    }
    return "?";
}

bool is_full_duplex(NodeMode mode)
{
    return mode == NodeMode::FdBfd || mode == NodeMode::FdTnfd;
}

std::optional<std::size_t> RequestGraph::in_edge(UserId user) const
{
    const std::size_t e = in_edge_[user];
    if (e == kNoEdge) {
        return std::nullopt;
    }
    return e;
}

RequestGraph build_request_graph(const CellDeployment& cell, const ClusterGrid& grid,
                                 const CacheAssignment& caches, std::span<const FileId> requests)
{
    const std::size_t n = cell.user_count();
    if (requests.size() != n) {
        throw std::invalid_argument("build_request_graph: one request per user required");
    }
    RequestGraph g;
    g.requests_.assign(requests.begin(), requests.end());
    g.self_request_.assign(n, false);
    g.in_edge_.assign(n, RequestGraph::kNoEdge);
    g.out_edges_.resize(n);

    for (UserId j = 0; j < n; ++j) {
        const FileId want = requests[j];
        if (caches.caches(j, want)) {
            g.self_request_[j] = true;
            continue;
        }
        const ClusterId c = grid.cluster_of(j);
        const UserId i = caches.holder(c, want);
        if (i == CacheAssignment::kNoHolder) {
            continue;
        }
        if (!(distance_km(cell.positions[i], cell.positions[j]) < grid.l_km())) {
            continue;
        }
        g.in_edge_[j] = g.edges_.size();
        g.out_edges_[i].push_back(g.edges_.size());
        g.edges_.push_back({c, i, j, want});
    }
    return g;
}

std::vector<NodeMode> classify_modes(const RequestGraph& graph)
{
    std::vector<NodeMode> modes(graph.node_count(), NodeMode::Idle);
    for (UserId u = 0; u < graph.node_count(); ++u) {
        const bool transmits = !graph.out_edges(u).empty();
        const auto in = graph.in_edge(u);
        if (transmits && in) {
            const UserId server = graph.edges()[*in].server;
            const auto& outs = graph.out_edges(u);
            const bool mutual = std::any_of(outs.begin(), outs.end(), [&](std::size_t e) {
                return graph.edges()[e].requester == server;
            });
            modes[u] = mutual ? NodeMode::FdBfd : NodeMode::FdTnfd;
        } else if (transmits) {
            modes[u] = NodeMode::HdTx;
        } else if (graph.self_request(u)) {
            modes[u] = NodeMode::Self;
        } else if (in) {
            modes[u] = NodeMode::RxOnly;
        }
    }
    return modes;
}

Establishment establish_nodes(const RequestGraph& graph, const ClusterGrid& grid,
                              const CacheAssignment& caches, std::size_t tau)
{
    if (tau == 0) {
        throw std::invalid_argument("establish_nodes: tau must be at least 1");
    }
    Establishment est;
    est.per_cluster.resize(grid.cluster_count());
    est.established.assign(graph.node_count(), false);

    std::vector<UserId> candidates;
    for (ClusterId c = 0; c < grid.cluster_count(); ++c) {
        candidates.clear();
        for (UserId u : grid.members(c)) {
            if (!graph.out_edges(u).empty()) {
                candidates.push_back(u);
            }
        }
        const std::size_t keep = std::min(tau, candidates.size());
        std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                          candidates.end(), [&](UserId a, UserId b) {
                              const double ra = caches.rho_user(a);
                              const double rb = caches.rho_user(b);
                              return ra != rb ? ra > rb : a < b;
                          });
        candidates.resize(keep);
        for (UserId u : candidates) {
            est.established[u] = true;
        }
        est.per_cluster[c] = candidates;
    }
    return est;
}

void write_edge_list(std::ostream& out, const RequestGraph& graph)
{
    for (const RequestEdge& e : graph.edges()) {
        out << e.cluster << ' ' << e.server << ' ' << e.requester << ' ' << e.file << '\n';
    }
}

}  // namespace fdd2d
