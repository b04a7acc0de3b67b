#include "peerroles/randomize.hpp"

#include <numeric>
#include <unordered_set>

namespace peerroles {

const char* to_string(Backend backend) noexcept {
    switch (backend) {
    case Backend::LabelPermutation: return "label";
    case Backend::EdgeRewiring: return "rewire";
    }
    return "unknown";
}

void RandomizerConfig::validate() const {
    if (swap_multiplier < 1) throw Error(ErrorKind::InvalidParameter, "swap_multiplier must be >= 1");
}

std::vector<NodeIndex> permute_labels(const Network& net, Rng& rng) {
    std::vector<NodeIndex> perm(net.node_count());
    std::iota(perm.begin(), perm.end(), NodeIndex{0});
    for (std::size_t i = perm.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

Network apply_relabeling(const Network& net, const std::vector<NodeIndex>& perm) {
    if (perm.size() != net.node_count())
        throw Error(ErrorKind::InvalidInput, "relabeling size does not match node count");
    std::vector<Edge> edges;
    edges.reserve(net.edge_count());
    for (const auto& e : net.edges()) edges.push_back({perm[e.from], perm[e.to]});
    return net.with_edges(std::move(edges));
}

namespace {

std::uint64_t edge_key(NodeIndex a, NodeIndex b, bool directed) {
    if (!directed && a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

Network rewire_degree_preserving(const Network& net, const RandomizerConfig& cfg, Rng& rng) {
    cfg.validate();
    const bool directed = net.directed();
    std::vector<Edge> edges = net.edges();
    const auto m = edges.size();
    if (m < 2) return net;

    std::unordered_set<std::uint64_t> present;
    present.reserve(m * 2);
    for (const auto& e : edges) present.insert(edge_key(e.from, e.to, directed));

    const auto attempts = static_cast<std::uint64_t>(cfg.swap_multiplier) * m;
    for (std::uint64_t t = 0; t < attempts; ++t) {
        const auto i = static_cast<std::size_t>(rng.below(m));
        auto j = static_cast<std::size_t>(rng.below(m - 1));
        if (j >= i) ++j;
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        // An undirected edge can be read either way round, so both pairings are reachable.
        if (!directed && rng.below(2) == 1) std::swap(c, d);
        if (a == d || c == b) continue;
        const auto k1 = edge_key(a, d, directed);
        const auto k2 = edge_key(c, b, directed);
        if (k1 == k2 || present.count(k1) || present.count(k2)) continue;
        present.erase(edge_key(a, b, directed));
        present.erase(edge_key(c, d, directed));
        present.insert(k1);
        present.insert(k2);
        edges[i] = {a, d};
        edges[j] = {c, b};
    }
    return net.with_edges(std::move(edges));
}

}  // namespace peerroles
