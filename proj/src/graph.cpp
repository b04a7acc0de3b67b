#include "peerroles/graph.hpp"

#include <algorithm>
#include <deque>
#include <fmt/format.h>

namespace peerroles {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidMode: return "invalid-mode";
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::DegenerateNetwork: return "degenerate-network";
    case ErrorKind::UndefinedCorrelation: return "undefined-correlation";
    case ErrorKind::DataIntegrity: return "data-integrity";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Referential: return "referential";
    case ErrorKind::Validity: return "validity";
    case ErrorKind::Config: return "config";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

const char* to_string(DegreeMode mode) noexcept {
    switch (mode) {
    case DegreeMode::Total: return "total";
    case DegreeMode::In: return "in";
    case DegreeMode::Out: return "out";
    }
    return "unknown";
}

NodeId::NodeId(std::string value) : value_(std::move(value)) {
    if (value_.empty()) throw Error(ErrorKind::InvalidInput, "node id must not be empty");
}

Network::Network(std::vector<NodeId> nodes, std::vector<Edge> edges, bool directed)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), directed_(directed) {
    const auto n = nodes_.size();
    index_.reserve(n);
    for (NodeIndex i = 0; i < n; ++i) {
        if (!index_.emplace(nodes_[i].str(), i).second)
            throw Error(ErrorKind::InvalidInput, fmt::format("duplicate node id '{}'", nodes_[i].str()));
    }
    for (auto& e : edges_) {
        if (e.from >= n || e.to >= n)
            throw Error(ErrorKind::InvalidInput, "edge endpoint not in node set");
        if (e.from == e.to)
            throw Error(ErrorKind::InvalidInput,
                        fmt::format("self-loop on '{}'", nodes_[e.from].str()));
        if (!directed_ && e.from > e.to) std::swap(e.from, e.to);
    }
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
        throw Error(ErrorKind::InvalidInput, fmt::format("duplicate edge '{}'-'{}'",
                                                         nodes_[dup->from].str(), nodes_[dup->to].str()));

    out_adj_.assign(n, {});
    in_adj_.assign(n, {});
    undirected_adj_.assign(n, {});
    for (const auto& e : edges_) {
        out_adj_[e.from].push_back(e.to);
        in_adj_[e.to].push_back(e.from);
        undirected_adj_[e.from].push_back(e.to);
        undirected_adj_[e.to].push_back(e.from);
        if (!directed_) {
            out_adj_[e.to].push_back(e.from);
            in_adj_[e.from].push_back(e.to);
        }
    }
    auto normalize = [](std::vector<NodeIndex>& v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    };
    for (NodeIndex i = 0; i < n; ++i) {
        normalize(out_adj_[i]);
        normalize(in_adj_[i]);
        normalize(undirected_adj_[i]);
    }
}

Network Network::from_labels(const std::vector<std::string>& nodes,
                             const std::vector<std::pair<std::string, std::string>>& edges,
                             bool directed) {
    std::vector<NodeId> ids;
    ids.reserve(nodes.size());
    std::unordered_map<std::string, NodeIndex> lookup;
    for (const auto& label : nodes) {
        lookup.emplace(label, static_cast<NodeIndex>(ids.size()));
        ids.emplace_back(label);
    }
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        auto ia = lookup.find(a);
        auto ib = lookup.find(b);
        if (ia == lookup.end() || ib == lookup.end())
            throw Error(ErrorKind::InvalidInput, fmt::format("edge '{}'-'{}' references unknown node", a, b));
        out.push_back({ia->second, ib->second});
    }
    return Network(std::move(ids), std::move(out), directed);
}

NodeIndex Network::index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) throw Error(ErrorKind::InvalidInput, fmt::format("unknown node '{}'", label));
    return it->second;
}

bool Network::contains(std::string_view label) const {
    return index_.count(std::string(label)) != 0;
}

bool Network::has_edge(NodeIndex from, NodeIndex to) const {
    const auto& succ = out_adj_.at(from);
    return std::binary_search(succ.begin(), succ.end(), to);
}

bool Network::adjacent(NodeIndex a, NodeIndex b) const {
    const auto& nb = undirected_adj_.at(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

Network Network::with_edges(std::vector<Edge> edges) const {
    return Network(nodes_, std::move(edges), directed_);
}

std::vector<int> degrees(const Network& net, DegreeMode mode) {
    if (mode != DegreeMode::Total && !net.directed())
        throw Error(ErrorKind::InvalidMode,
                    fmt::format("{}-degree requested on an undirected network", to_string(mode)));
    std::vector<int> deg(net.node_count(), 0);
    for (const auto& e : net.edges()) {
        if (mode != DegreeMode::In) ++deg[e.from];
        if (mode != DegreeMode::Out) ++deg[e.to];
    }
    return deg;
}

Network undirected_collapse(const Network& net) {
    if (!net.directed())
        throw Error(ErrorKind::InvalidInput, "undirected_collapse requires a directed network");
    std::vector<Edge> edges;
    edges.reserve(net.edge_count());
    for (const auto& e : net.edges()) {
        if (e.from < e.to || !net.has_edge(e.to, e.from))
            edges.push_back({std::min(e.from, e.to), std::max(e.from, e.to)});
    }
    return Network(net.nodes(), std::move(edges), false);
}

Network undirected_view(const Network& net) {
    return net.directed() ? undirected_collapse(net) : net;
}

double density(const Network& net) {
    const auto n = net.node_count();
    if (n < 2) throw Error(ErrorKind::DegenerateNetwork, "density needs at least 2 nodes");
    std::size_t undirected_edges = 0;
    for (NodeIndex i = 0; i < n; ++i) undirected_edges += net.neighbors(i).size();
    undirected_edges /= 2;
    return 2.0 * static_cast<double>(undirected_edges) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

int diameter(const Network& net) {
    const auto n = net.node_count();
    int best = 0;
    std::vector<int> dist(n);
    std::deque<NodeIndex> queue;
    for (NodeIndex s = 0; s < n; ++s) {
        if (net.neighbors(s).empty()) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.assign(1, s);
        while (!queue.empty()) {
            auto u = queue.front();
            queue.pop_front();
            for (auto v : net.neighbors(u)) {
                if (dist[v] >= 0) continue;
                dist[v] = dist[u] + 1;
                best = std::max(best, dist[v]);
                queue.push_back(v);
            }
        }
    }
    return best;
}

NetworkSummary summarize(const Network& net) {
    NetworkSummary s;
    s.size = net.node_count();
    s.edges = net.edge_count();
    s.directed = net.directed();
    s.density = density(net);
    s.diameter = diameter(net);
    s.diameter_defined = net.edge_count() > 0;

    const auto total = degrees(net, DegreeMode::Total);
    const double n = static_cast<double>(s.size);
    s.avg_degree = 2.0 * static_cast<double>(s.edges) / n;
    s.avg_degree_pct = 100.0 * s.avg_degree / n;
    s.max_degree = *std::max_element(total.begin(), total.end());
    if (net.directed()) {
        const auto in = degrees(net, DegreeMode::In);
        const auto out = degrees(net, DegreeMode::Out);
        s.avg_in_degree = static_cast<double>(s.edges) / n;
        s.avg_out_degree = s.avg_in_degree;
        s.max_in_degree = *std::max_element(in.begin(), in.end());
        s.max_out_degree = *std::max_element(out.begin(), out.end());
    } else {
        s.avg_in_degree = s.avg_out_degree = s.avg_degree;
        s.max_in_degree = s.max_out_degree = s.max_degree;
    }
    return s;
}

std::vector<HistogramBin> degree_histogram(const Network& net, DegreeMode mode) {
    const auto deg = degrees(net, mode);
    int top = 0;
    for (int d : deg) top = std::max(top, d);
    std::vector<HistogramBin> bins;
    bins.reserve(static_cast<std::size_t>(top) + 1);
    for (int d = 0; d <= top; ++d) bins.push_back({d, 0});
    for (int d : deg) ++bins[static_cast<std::size_t>(d)].count;
    return bins;
}

}  // namespace peerroles
