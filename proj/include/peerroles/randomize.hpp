#pragma once

#include <cstdint>
#include <vector>

#include "peerroles/graph.hpp"
#include "peerroles/random.hpp"

namespace peerroles {

enum class Backend { LabelPermutation, EdgeRewiring };

const char* to_string(Backend backend) noexcept;

struct RandomizerConfig {
    Backend backend = Backend::LabelPermutation;
    // Attempted swaps = swap_multiplier * |E|.
    int swap_multiplier = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

// Uniformly random bijection: perm[i] is the index node i is mapped to.
std::vector<NodeIndex> permute_labels(const Network& net, Rng& rng);

// Isomorphic copy in which edge (a,b) becomes (perm[a], perm[b]).
Network apply_relabeling(const Network& net, const std::vector<NodeIndex>& perm);

// Double-edge swaps (a,b),(c,d) -> (a,d),(c,b), skipping swaps that would
// create a self-loop or duplicate edge. Direction is kept for directed
// networks, so in- and out-degree sequences are unchanged.
Network rewire_degree_preserving(const Network& net, const RandomizerConfig& cfg, Rng& rng);

}  // namespace peerroles
