#include "peerroles/roles.hpp"

#include <algorithm>
#include <fmt/format.h>

namespace peerroles {

void RoleParams::validate() const {
    if (member_clique_size < 3)
        throw Error(ErrorKind::InvalidParameter,
                    fmt::format("member_clique_size must be >= 3 (got {})", member_clique_size));
    for (int s : liaison_clique_sizes) {
        if (s < 3)
            throw Error(ErrorKind::InvalidParameter,
                        fmt::format("liaison clique sizes must be >= 3 (got {})", s));
    }
    if (!(ratio_threshold > 0.0))
        throw Error(ErrorKind::InvalidParameter, "ratio_threshold must be > 0");
    if (min_connections_for_liaison < 1)
        throw Error(ErrorKind::InvalidParameter, "min_connections_for_liaison must be >= 1");
    if (max_liaison_rounds < 0)
        throw Error(ErrorKind::InvalidParameter, "max_liaison_rounds must be >= 0");
}

namespace {

void extend_clique(const Network& g, std::size_t k, std::vector<NodeIndex>& current,
                   const std::vector<NodeIndex>& candidates, std::vector<Clique>& out) {
    if (current.size() == k) {
        out.push_back({current});
        return;
    }
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (current.size() + (candidates.size() - i) < k) return;
        const auto c = candidates[i];
        std::vector<NodeIndex> next;
        const auto nb = g.neighbors(c);
        std::set_intersection(candidates.begin() + static_cast<std::ptrdiff_t>(i) + 1, candidates.end(),
                              nb.begin(), nb.end(), std::back_inserter(next));
        current.push_back(c);
        extend_clique(g, k, current, next, out);
        current.pop_back();
    }
}

std::vector<Clique> cliques_of_view(const Network& g, int size) {
    if (size < 3)
        throw Error(ErrorKind::InvalidParameter, fmt::format("clique size must be >= 3 (got {})", size));
    const auto k = static_cast<std::size_t>(size);
    std::vector<Clique> out;
    std::vector<NodeIndex> current;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const auto nb = g.neighbors(v);
        std::vector<NodeIndex> higher(std::upper_bound(nb.begin(), nb.end(), v), nb.end());
        if (higher.size() + 1 < k) continue;
        current.assign(1, v);
        extend_clique(g, k, current, higher, out);
    }
    return out;
}

std::vector<NodeIndex> flagged(const std::vector<char>& flags) {
    std::vector<NodeIndex> out;
    for (NodeIndex i = 0; i < flags.size(); ++i)
        if (flags[i]) out.push_back(i);
    return out;
}

std::vector<char> clique_member_flags(const Network& g, const std::vector<Clique>& cliques,
                                      const RoleParams& params) {
    const auto n = g.node_count();
    std::vector<std::vector<NodeIndex>> comembers(n);
    std::vector<char> in_clique(n, 0);
    for (const auto& c : cliques) {
        for (auto v : c.members) {
            in_clique[v] = 1;
            for (auto w : c.members)
                if (w != v) comembers[v].push_back(w);
        }
    }
    std::vector<char> member(n, 0);
    for (NodeIndex v = 0; v < n; ++v) {
        if (!in_clique[v]) continue;
        if (!params.ratio_filter_enabled) {
            member[v] = 1;
            continue;
        }
        auto& w = comembers[v];
        std::sort(w.begin(), w.end());
        w.erase(std::unique(w.begin(), w.end()), w.end());
        const double within = static_cast<double>(w.size());
        const double outside = static_cast<double>(g.neighbors(v).size()) - within;
        bool qualifies = false;
        if (params.ratio_direction == RatioDirection::OutsideOverWithin) {
            qualifies = outside / within < params.ratio_threshold;
        } else {
            // zero outside ties make the literal ratio unbounded
            qualifies = outside > 0.0 && within / outside < params.ratio_threshold;
        }
        member[v] = qualifies ? 1 : 0;
    }
    return member;
}

std::vector<char> liaison_flags(const Network& g, const std::vector<char>& members,
                                const RoleParams& params) {
    const auto n = g.node_count();
    std::vector<char> anchor = members;
    std::vector<char> eligible(n, 1);
    for (int size : params.liaison_clique_sizes) {
        for (const auto& c : cliques_of_view(g, size)) {
            for (auto v : c.members) {
                anchor[v] = 1;
                eligible[v] = 0;
            }
        }
    }
    for (NodeIndex v = 0; v < n; ++v)
        if (members[v]) eligible[v] = 0;

    std::vector<char> liaison(n, 0);
    for (int round = 1;; ++round) {
        std::vector<NodeIndex> admitted;
        for (NodeIndex v = 0; v < n; ++v) {
            if (!eligible[v] || liaison[v]) continue;
            int ties = 0;
            for (auto w : g.neighbors(v))
                if (anchor[w] || liaison[w]) ++ties;
            if (ties >= params.min_connections_for_liaison) admitted.push_back(v);
        }
        for (auto v : admitted) liaison[v] = 1;
        if (admitted.empty()) break;
        if (params.max_liaison_rounds > 0 && round >= params.max_liaison_rounds) break;
    }
    return liaison;
}

}  // namespace

std::vector<Clique> enumerate_cliques(const Network& net, int size) {
    return cliques_of_view(undirected_view(net), size);
}

std::vector<NodeIndex> clique_members(const Network& net, const RoleParams& params) {
    params.validate();
    const auto g = undirected_view(net);
    return flagged(clique_member_flags(g, cliques_of_view(g, params.member_clique_size), params));
}

std::vector<NodeIndex> liaisons(const Network& net, const RoleParams& params) {
    params.validate();
    const auto g = undirected_view(net);
    const auto members = clique_member_flags(g, cliques_of_view(g, params.member_clique_size), params);
    return flagged(liaison_flags(g, members, params));
}

std::vector<NodeIndex> isolators(const Network& net) {
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < net.node_count(); ++v)
        if (net.neighbors(v).empty()) out.push_back(v);
    return out;
}

std::vector<NodeIndex> kcore(const Network& net, int k) {
    if (k < 1) throw Error(ErrorKind::InvalidParameter, fmt::format("k must be >= 1 (got {})", k));
    const auto g = undirected_view(net);
    const auto n = g.node_count();
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    std::vector<NodeIndex> stack;
    for (NodeIndex v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(g.neighbors(v).size());
        if (deg[v] < k) {
            removed[v] = 1;
            stack.push_back(v);
        }
    }
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        for (auto w : g.neighbors(v)) {
            if (removed[w]) continue;
            if (--deg[w] < k) {
                removed[w] = 1;
                stack.push_back(w);
            }
        }
    }
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < n; ++v)
        if (!removed[v]) out.push_back(v);
    return out;
}

RoleAssignment assign_roles(const Network& net, const RoleParams& params) {
    params.validate();
    const auto g = undirected_view(net);
    const auto n = g.node_count();
    RoleAssignment ra;
    ra.nodes.resize(n);

    const auto deg = degrees(net, DegreeMode::Total);
    for (NodeIndex v = 0; v < n; ++v) {
        ra.nodes[v].degree_score = deg[v];
        ra.nodes[v].is_isolator = g.neighbors(v).empty();
    }

    auto cliques = cliques_of_view(g, params.member_clique_size);
    const auto members = clique_member_flags(g, cliques, params);
    const auto liaison = liaison_flags(g, members, params);
    for (NodeIndex v = 0; v < n; ++v) {
        ra.nodes[v].is_clique_member = members[v] != 0;
        ra.nodes[v].is_liaison = liaison[v] != 0;
    }
    for (std::size_t id = 0; id < cliques.size(); ++id)
        for (auto v : cliques[id].members)
            if (members[v]) ra.nodes[v].clique_ids.push_back(id);
    ra.member_cliques = std::move(cliques);
    return ra;
}

std::vector<NodeIndex> RoleAssignment::clique_members() const {
    std::vector<NodeIndex> out;
    for (NodeIndex i = 0; i < nodes.size(); ++i)
        if (nodes[i].is_clique_member) out.push_back(i);
    return out;
}

std::vector<NodeIndex> RoleAssignment::liaisons() const {
    std::vector<NodeIndex> out;
    for (NodeIndex i = 0; i < nodes.size(); ++i)
        if (nodes[i].is_liaison) out.push_back(i);
    return out;
}

std::vector<NodeIndex> RoleAssignment::isolators() const {
    std::vector<NodeIndex> out;
    for (NodeIndex i = 0; i < nodes.size(); ++i)
        if (nodes[i].is_isolator) out.push_back(i);
    return out;
}

std::vector<NodeIndex> RoleAssignment::central_members() const {
    std::vector<NodeIndex> out;
    int best = -1;
    for (const auto& r : nodes) best = std::max(best, r.degree_score);
    for (NodeIndex i = 0; i < nodes.size(); ++i)
        if (nodes[i].degree_score == best) out.push_back(i);
    return out;
}

}  // namespace peerroles
