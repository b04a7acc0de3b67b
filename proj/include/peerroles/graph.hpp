#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "peerroles/error.hpp"

namespace peerroles {

using NodeIndex = std::uint32_t;

// Opaque identifier of a student or synthetic node. Never empty.
class NodeId {
public:
    explicit NodeId(std::string value);

    const std::string& str() const noexcept { return value_; }

    friend bool operator==(const NodeId&, const NodeId&) = default;
    friend auto operator<=>(const NodeId&, const NodeId&) = default;

private:
    std::string value_;
};

struct Edge {
    NodeIndex from;
    NodeIndex to;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class DegreeMode { Total, In, Out };

const char* to_string(DegreeMode mode) noexcept;

// Immutable simple network over an indexed node set.
//
// Nodes keep the order they were supplied in; every per-node vector returned
// by the library is indexed the same way. Undirected edges are stored once
// with from < to. Edges are kept sorted, so two networks with the same nodes
// and edge set compare equal regardless of insertion order.
class Network {
public:
    Network() = default;

    // Throws Error(InvalidInput) on empty/duplicate ids, self-loops,
    // duplicate edges or out-of-range endpoints.
    Network(std::vector<NodeId> nodes, std::vector<Edge> edges, bool directed);

    // Convenience constructor keyed by label; labels must already be in `nodes`.
    static Network from_labels(const std::vector<std::string>& nodes,
                               const std::vector<std::pair<std::string, std::string>>& edges,
                               bool directed);

    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    bool directed() const noexcept { return directed_; }

    const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const NodeId& node(NodeIndex i) const { return nodes_.at(i); }

    // Throws Error(InvalidInput) for unknown labels.
    NodeIndex index_of(std::string_view label) const;
    bool contains(std::string_view label) const;

    // Neighbours ignoring direction, sorted and unique.
    std::span<const NodeIndex> neighbors(NodeIndex i) const { return undirected_adj_[i]; }
    std::span<const NodeIndex> successors(NodeIndex i) const { return out_adj_[i]; }
    std::span<const NodeIndex> predecessors(NodeIndex i) const { return in_adj_[i]; }

    bool has_edge(NodeIndex from, NodeIndex to) const;
    // Adjacent in either direction.
    bool adjacent(NodeIndex a, NodeIndex b) const;

    // Same node set and edges, with a new edge list (validated).
    Network with_edges(std::vector<Edge> edges) const;

    friend bool operator==(const Network& a, const Network& b) {
        return a.directed_ == b.directed_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

private:
    std::vector<NodeId> nodes_;
    std::vector<Edge> edges_;
    bool directed_ = false;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<std::vector<NodeIndex>> out_adj_;
    std::vector<std::vector<NodeIndex>> in_adj_;
    std::vector<std::vector<NodeIndex>> undirected_adj_;
};

struct NetworkSummary {
    std::size_t size = 0;
    std::size_t edges = 0;
    bool directed = false;
    int diameter = 0;
    // False for edgeless networks, whose diameter is reported as 0.
    bool diameter_defined = false;
    double avg_degree = 0.0;
    double avg_degree_pct = 0.0;
    int max_degree = 0;
    double avg_in_degree = 0.0;
    double avg_out_degree = 0.0;
    int max_in_degree = 0;
    int max_out_degree = 0;
    double density = 0.0;
};

struct HistogramBin {
    int degree;
    std::size_t count;

    friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

// Per-node degree, indexed like net.nodes(). In/Out require a directed
// network (ErrorKind::InvalidMode otherwise). Total is in+out for directed.
std::vector<int> degrees(const Network& net, DegreeMode mode = DegreeMode::Total);

// 2|E|/(N(N-1)) measured on the undirected collapse. Requires N >= 2.
double density(const Network& net);

// Longest finite shortest-path length, ignoring direction; 0 when edgeless.
int diameter(const Network& net);

NetworkSummary summarize(const Network& net);

// Bins 0..max degree inclusive, zero-count bins kept.
std::vector<HistogramBin> degree_histogram(const Network& net, DegreeMode mode = DegreeMode::Total);

// Symmetrised copy of a directed network.
Network undirected_collapse(const Network& net);

// Undirected networks are returned as-is, directed ones collapsed.
Network undirected_view(const Network& net);

}  // namespace peerroles
