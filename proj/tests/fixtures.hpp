#pragma once

// Shared networks and brute-force oracles for the unit and acceptance suites.
// The oracles deliberately avoid the library's algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "peerroles/graph.hpp"
#include "peerroles/random.hpp"
#include "peerroles/roles.hpp"

namespace fixtures {

using peerroles::Edge;
using peerroles::Network;
using peerroles::NodeIndex;

inline std::vector<std::string> letters(const std::string& s) {
    std::vector<std::string> out;
    for (char c : s) out.emplace_back(1, c);
    return out;
}

// Eleven students: 4-clique ABCD, triangle FHI, E bridging B and F, G and J
// hanging off F, K alone.
inline Network eleven_students() {
    return Network::from_labels(letters("ABCDEFGHIJK"),
                                {{"A", "B"}, {"A", "C"}, {"A", "D"}, {"B", "C"}, {"B", "D"}, {"C", "D"},
                                 {"F", "H"}, {"F", "I"}, {"H", "I"},
                                 {"E", "B"}, {"E", "F"},
                                 {"F", "G"}, {"F", "J"}},
                                false);
}

// A->B, B->D, A->C, C->A.
inline Network four_students() {
    return Network::from_labels(letters("ABCD"), {{"A", "B"}, {"B", "D"}, {"A", "C"}, {"C", "A"}}, true);
}

inline std::vector<std::string> labels(std::size_t n, const std::string& prefix = "n") {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

inline std::vector<peerroles::NodeId> ids(std::size_t n) {
    std::vector<peerroles::NodeId> out;
    for (const auto& l : labels(n)) out.emplace_back(l);
    return out;
}

inline Network complete(std::size_t n) {
    std::vector<Edge> e;
    for (NodeIndex a = 0; a < n; ++a)
        for (NodeIndex b = a + 1; b < n; ++b) e.push_back({a, b});
    return Network(ids(n), e, false);
}

inline Network path(std::size_t n) {
    std::vector<Edge> e;
    for (NodeIndex a = 1; a < n; ++a) e.push_back({a - 1, a});
    return Network(ids(n), e, false);
}

inline Network cycle(std::size_t n) {
    std::vector<Edge> e;
    for (NodeIndex a = 0; a < n; ++a) e.push_back({a, static_cast<NodeIndex>((a + 1) % n)});
    return Network(ids(n), e, false);
}

// Node 0 is the centre.
inline Network star(std::size_t leaves) {
    std::vector<Edge> e;
    for (NodeIndex a = 1; a <= leaves; ++a) e.push_back({0, a});
    return Network(ids(leaves + 1), e, false);
}

inline Network edgeless(std::size_t n, bool directed = false) { return Network(ids(n), {}, directed); }

inline Network random_network(peerroles::Rng& rng, std::size_t n, double p, bool directed = false) {
    std::vector<Edge> e;
    for (NodeIndex a = 0; a < n; ++a)
        for (NodeIndex b = 0; b < n; ++b) {
            if (a == b || (!directed && b < a)) continue;
            if (rng.uniform() < p) e.push_back({a, b});
        }
    return Network(ids(n), e, directed);
}

// Plain adjacency matrix, used by the oracles instead of Network queries.
inline std::vector<std::vector<char>> adjacency_matrix(const Network& net) {
    std::vector<std::vector<char>> m(net.node_count(), std::vector<char>(net.node_count(), 0));
    for (const auto& e : net.edges()) m[e.from][e.to] = m[e.to][e.from] = 1;
    return m;
}

// Every k-subset checked pairwise.
inline std::set<std::vector<NodeIndex>> brute_force_cliques(const Network& net, int k) {
    const auto m = adjacency_matrix(net);
    const auto n = net.node_count();
    std::set<std::vector<NodeIndex>> out;
    std::vector<char> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + std::min<std::size_t>(k, n), 1);
    if (static_cast<std::size_t>(k) > n) return out;
    do {
        std::vector<NodeIndex> s;
        for (NodeIndex i = 0; i < n; ++i)
            if (pick[i]) s.push_back(i);
        bool ok = true;
        for (std::size_t i = 0; i < s.size() && ok; ++i)
            for (std::size_t j = i + 1; j < s.size() && ok; ++j) ok = m[s[i]][s[j]];
        if (ok) out.insert(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

// Largest subset (by bitmask enumeration) where each member has >= k
// neighbours in the subset. Qualifying sets are closed under union, so the
// largest is the unique maximal one.
inline std::vector<NodeIndex> brute_force_kcore(const Network& net, int k) {
    const auto m = adjacency_matrix(net);
    const auto n = net.node_count();
    std::uint32_t best = 0;
    int best_size = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) {
            if (!(mask >> v & 1u)) continue;
            int inside = 0;
            for (std::size_t w = 0; w < n; ++w)
                if ((mask >> w & 1u) && m[v][w]) ++inside;
            ok = inside >= k;
        }
        const int size = __builtin_popcount(mask);
        if (ok && size > best_size) {
            best = mask;
            best_size = size;
        }
    }
    std::vector<NodeIndex> out;
    for (NodeIndex v = 0; v < n; ++v)
        if (best >> v & 1u) out.push_back(v);
    return out;
}

// Exact permutation p-value: enumerate every assignment of the attribute
// values to nodes and count statistics >= the observed one (with the same
// rounding slack as the engine).
inline double exact_permutation_pvalue(const std::vector<double>& attrs,
                                       const std::function<double(const std::vector<double>&)>& statistic) {
    const double observed = statistic(attrs);
    std::vector<std::size_t> order(attrs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::size_t total = 0, hits = 0;
    std::vector<double> shuffled(attrs.size());
    do {
        for (std::size_t i = 0; i < order.size(); ++i) shuffled[i] = attrs[order[i]];
        const double t = statistic(shuffled);
        ++total;
        if (t >= observed - 1e-9 * std::max(1.0, std::abs(observed))) ++hits;
    } while (std::next_permutation(order.begin(), order.end()));
    return static_cast<double>(hits) / static_cast<double>(total);
}

// Textbook correlation written independently of the library.
inline double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        syy += y[i] * y[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

inline double oracle_mean_diff(const std::vector<double>& attrs, const std::vector<char>& in_group) {
    double a = 0, b = 0;
    int na = 0, nb = 0;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (in_group[i]) {
            a += attrs[i];
            ++na;
        } else {
            b += attrs[i];
            ++nb;
        }
    }
    return a / na - b / nb;
}

// Seven students used for the Monte Carlo vs exact p-value check.
inline Network seven_node_fixture() {
    return Network::from_labels(letters("ABCDEFG"),
                                {{"A", "B"}, {"A", "C"}, {"A", "D"}, {"B", "C"}, {"B", "D"}, {"C", "D"},
                                 {"D", "E"}, {"E", "F"}, {"A", "F"}},
                                false);
}

inline std::vector<double> seven_node_gpax() { return {3.10, 2.85, 3.40, 3.55, 2.40, 2.95, 2.20}; }

inline std::set<std::string> names(const Network& net, const std::vector<NodeIndex>& idx) {
    std::set<std::string> out;
    for (auto i : idx) out.insert(net.node(i).str());
    return out;
}

// Splits an aligned table row on runs of two or more spaces.
inline std::vector<std::string> cells(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == ' ' && i + 1 < line.size() && line[i + 1] == ' ') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
            while (i + 1 < line.size() && line[i + 1] == ' ') ++i;
        } else {
            cur += line[i];
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline std::vector<std::vector<std::string>> rows_for(const std::string& text, const std::string& school) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(school + "  ", 0) == 0) out.push_back(cells(line));
    return out;
}

// Hypothesis-battery fixture: a 4-clique with below-average GPAX joined to a tree whose
// GPAX rises with degree, plus one isolated student (1 of 21, under 5%).
// Helper arcs point from child to parent in the tree.
struct BatteryFixture {
    Network friend_net;
    Network helper_net;
    std::vector<double> gpax;
};

inline BatteryFixture battery_fixture() {
    std::vector<std::string> id;
    for (int i = 0; i <= 20; ++i) id.push_back((i < 10 ? "s0" : "s") + std::to_string(i));
    const std::vector<std::pair<int, int>> tree{{4, 5},  {4, 6},  {4, 7},  {4, 8},  {4, 9},  {5, 10}, {5, 11},
                                                {5, 12}, {5, 13}, {6, 14}, {6, 15}, {6, 16}, {7, 17}, {7, 18},
                                                {8, 19}};
    std::vector<std::pair<std::string, std::string>> friends{{"s00", "s01"}, {"s00", "s02"}, {"s00", "s03"},
                                                             {"s01", "s02"}, {"s01", "s03"}, {"s02", "s03"},
                                                             {"s03", "s04"}};
    std::vector<std::pair<std::string, std::string>> helpers{
        {"s00", "s01"}, {"s01", "s02"}, {"s02", "s03"}, {"s03", "s00"}};
    for (auto [parent, child] : tree) {
        friends.emplace_back(id[parent], id[child]);
        helpers.emplace_back(id[child], id[parent]);
    }
    return {Network::from_labels(id, friends, false), Network::from_labels(id, helpers, true),
            {2.60, 2.65, 2.70, 2.75, 3.90, 3.70, 3.50, 3.30, 3.10, 2.90, 2.40,
             2.55, 2.30, 2.60, 2.45, 2.35, 2.50, 2.40, 2.25, 2.45, 2.20}};
}

}  // namespace fixtures
