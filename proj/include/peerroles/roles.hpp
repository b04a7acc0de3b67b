#pragma once

#include <set>
#include <vector>

#include "peerroles/graph.hpp"

namespace peerroles {

// Sorted member indices of one complete subgraph.
struct Clique {
    std::vector<NodeIndex> members;

    std::size_t size() const noexcept { return members.size(); }
    friend bool operator==(const Clique&, const Clique&) = default;
    friend auto operator<=>(const Clique&, const Clique&) = default;
};

enum class RatioDirection {
    // outside-clique ties / within-clique ties
    OutsideOverWithin,
    // within-clique ties / outside-clique ties (literal reading of the rule)
    WithinOverOutside,
};

struct RoleParams {
    int member_clique_size = 4;
    std::set<int> liaison_clique_sizes{3, 4};
    double ratio_threshold = 0.5;
    bool ratio_filter_enabled = true;
    RatioDirection ratio_direction = RatioDirection::OutsideOverWithin;
    int min_connections_for_liaison = 2;
    // 0 iterates the liaison rule to its fixed point; 1 is a single pass.
    int max_liaison_rounds = 0;

    // Throws Error(InvalidParameter).
    void validate() const;
};

struct NodeRole {
    int degree_score = 0;
    bool is_clique_member = false;
    // Indices into RoleAssignment::member_cliques.
    std::vector<std::size_t> clique_ids;
    bool is_liaison = false;
    bool is_isolator = false;
};

struct RoleAssignment {
    std::vector<NodeRole> nodes;
    std::vector<Clique> member_cliques;

    std::vector<NodeIndex> clique_members() const;
    std::vector<NodeIndex> liaisons() const;
    std::vector<NodeIndex> isolators() const;
    // Node(s) holding the maximum degree score.
    std::vector<NodeIndex> central_members() const;
};

// Every complete subgraph with exactly `size` nodes (not only maximal ones),
// sorted. Directed networks are collapsed first. size < 3 is rejected.
std::vector<Clique> enumerate_cliques(const Network& net, int size);

std::vector<NodeIndex> clique_members(const Network& net, const RoleParams& params);

// Least fixed point of the liaison rule: a node in no clique of the liaison
// sizes, not itself a clique member, with at least
// min_connections_for_liaison neighbours among clique-belonging nodes and
// liaisons admitted in earlier rounds.
std::vector<NodeIndex> liaisons(const Network& net, const RoleParams& params);

std::vector<NodeIndex> isolators(const Network& net);

// Maximal node set where each node has >= k neighbours inside the set.
std::vector<NodeIndex> kcore(const Network& net, int k);

RoleAssignment assign_roles(const Network& net, const RoleParams& params);

}  // namespace peerroles
