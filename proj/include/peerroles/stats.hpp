#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "peerroles/graph.hpp"
#include "peerroles/randomize.hpp"
#include "peerroles/roles.hpp"

namespace peerroles {

struct TestConfig {
    int n_permutations = 10000;
    double alpha = 0.05;
    // Applied to the smaller side of a role partition.
    double min_role_fraction = 0.05;
    RandomizerConfig backend;
    bool plus_one_correction = false;
    // Worker threads for replicates; 0 picks hardware concurrency. Results
    // do not depend on this value.
    unsigned workers = 1;

    void validate() const;
};

enum class Outcome { Significant, NotSignificant, AcceptedNull, NotApplicable, Undefined };

const char* to_string(Outcome outcome) noexcept;

enum class Role { CliqueMember, Liaison, Isolator };

const char* to_string(Role role) noexcept;

// Pearson correlation between per-node degree and the attribute.
struct CorrelationStatistic {
    DegreeMode mode = DegreeMode::Total;
};

// Difference of attribute means between a role group and everyone else.
// role_first: mean(role) - mean(rest); otherwise mean(rest) - mean(role).
struct MeanDiffStatistic {
    Role role = Role::CliqueMember;
    bool role_first = true;
};

using Statistic = std::variant<CorrelationStatistic, MeanDiffStatistic>;

struct HypothesisResult {
    int hypothesis_id = 0;
    double statistic = 0.0;
    std::optional<double> p_value;
    Outcome outcome = Outcome::NotApplicable;
    // Role group and its complement for mean differences; node count and 0
    // for correlations.
    std::size_t group_size = 0;
    std::size_t rest_size = 0;
    int replicates = 0;
    std::string note;
};

// Product-moment correlation. Throws InvalidInput on length mismatch or
// fewer than 3 pairs, UndefinedCorrelation when either side is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

// mean(a) - mean(b); throws InvalidInput on an empty group.
double mean_diff(std::span<const double> group_a, std::span<const double> group_b);

// Relative slack under which two statistics count as tied. Replicates that
// reorder the same values must not lose ties to floating-point rounding.
inline constexpr double kTieTolerance = 1e-10;

// Upper-tail fraction of replicates with T* >= T; with plus_one,
// (1 + count) / (n + 1). NaN replicates never count.
double permutation_pvalue(double observed, std::span<const double> replicates, bool plus_one = false);

// Attribute vector aligned with net.nodes(); throws DataIntegrity when a
// node has no attribute.
std::vector<double> align_attributes(const Network& net, const std::map<std::string, double>& attrs);

// Observed statistic on the actual network (NaN if a mean-difference group
// is empty). Throws UndefinedCorrelation for constant inputs.
double observed_statistic(const Network& net, std::span<const double> attrs, const Statistic& statistic,
                          const RoleParams& params);

// Nodes in the role group for a mean-difference statistic.
std::vector<char> role_mask(const Network& net, Role role, const RoleParams& params);

// One permutation test. Replicate i draws from derive_seed(stream_seed, i).
HypothesisResult run_test(const Network& net, std::span<const double> attrs, const Statistic& statistic,
                          const RoleParams& params, const TestConfig& cfg, std::uint64_t stream_seed);

struct HypothesisSpec {
    int id;
    bool helper_network;
    Statistic statistic;
    const char* description;
};

// H1..H9 in order.
const std::vector<HypothesisSpec>& hypothesis_specs();

// All nine hypotheses; hypothesis h uses stream derive_seed(seed, h).
std::vector<HypothesisResult> run_battery(const Network& friend_net, const Network& helper_net,
                                          std::span<const double> attrs, const RoleParams& params,
                                          const TestConfig& cfg);

}  // namespace peerroles
