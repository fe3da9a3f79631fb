#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fdd2d/placement.hpp"
#include "fdd2d/popularity.hpp"
#include "fdd2d/topology.hpp"

namespace fdd2d {

enum class NodeMode {
    Self,    // request in own cache, serves nobody
    HdTx,    // serves others, own request not served in-cluster
    FdBfd,   // serves others and receives from one of them
    FdTnfd,  // serves others and receives from a third node
    Idle,    // nothing in or out
    RxOnly,  // only receives
};

std::string_view to_string(NodeMode mode);
bool is_full_duplex(NodeMode mode);

/// Directed edge: `server` holds the file that `requester` asked for.
struct RequestEdge {
    ClusterId cluster;
    UserId server;
    UserId requester;
    FileId file;
};

/// Intra-cluster request graph for one drop. Every node has in-degree <= 1.
class RequestGraph {
public:
    std::size_t node_count() const { return requests_.size(); }
    const std::vector<RequestEdge>& edges() const { return edges_; }

    FileId request(UserId user) const { return requests_[user]; }
    bool self_request(UserId user) const { return self_request_[user]; }

    /// Index into edges() of the user's incoming edge, if any.
    std::optional<std::size_t> in_edge(UserId user) const;
    const std::vector<std::size_t>& out_edges(UserId user) const { return out_edges_[user]; }

private:
    friend RequestGraph build_request_graph(const CellDeployment&, const ClusterGrid&,
                                            const CacheAssignment&, std::span<const FileId>);

    static constexpr std::size_t kNoEdge = static_cast<std::size_t>(-1);

    std::vector<RequestEdge> edges_;
    std::vector<FileId> requests_;
    std::vector<bool> self_request_;
    std::vector<std::size_t> in_edge_;
    std::vector<std::vector<std::size_t>> out_edges_;
};

/// Adds u_i -> u_j whenever u_j's request is cached by u_i, both share a
/// cluster and their distance is below the cluster side l.
RequestGraph build_request_graph(const CellDeployment& cell, const ClusterGrid& grid,
                                 const CacheAssignment& caches, std::span<const FileId> requests);

/// One tag per node; the tags partition the node set.
std::vector<NodeMode> classify_modes(const RequestGraph& graph);

/// Transmitters chosen by the base station: per cluster, up to tau nodes with
/// at least one outgoing edge, largest cached mass first (ties: lower id).
struct Establishment {
    std::vector<std::vector<UserId>> per_cluster;
    std::vector<bool> established;  // indexed by user

    bool is_established(UserId user) const { return established[user]; }
};

Establishment establish_nodes(const RequestGraph& graph, const ClusterGrid& grid,
                              const CacheAssignment& caches, std::size_t tau);

/// One `cluster_id src dst file_id` row per edge, zero-based ids.
void write_edge_list(std::ostream& out, const RequestGraph& graph);

}  // namespace fdd2d
