#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "peerroles/graph.hpp"
#include "peerroles/ingest.hpp"

namespace peerroles {

enum class PlantedRole { None, CliqueMember, Liaison, Isolator };

const char* to_string(PlantedRole role) noexcept;

// Generative parameters for a synthetic cohort with planted roles and
// GPAX effects.
struct SynthScenario {
    int n_students = 60;
    int n_cliques = 0;
    int clique_size = 4;
    int n_liaisons = 0;
    int n_isolators = 0;
    double background_edge_prob = 0.1;
    // GPAX shift per standard deviation of friend degree.
    double degree_effect_beta = 0.0;
    // GPAX shift applied to members of effect_role.
    double role_effect_delta = 0.0;
    PlantedRole effect_role = PlantedRole::None;
    double noise_sd = 0.4;
    double gpax_base = 2.8;
    // Each friend tie becomes a helper arc with this probability (random
    // direction), reciprocated with helper_reciprocal_prob.
    double helper_keep_prob = 0.5;
    double helper_reciprocal_prob = 0.1;
    // Extra advice arcs over ordered pairs of non-isolated students.
    double helper_extra_prob = 0.0;
    std::string school = "SY";
    std::uint64_t seed = 0;

    // Throws Error(Config) naming the offending field.
    void validate() const;
};

// key=value text, '#' comments. Unknown keys and bad values are Config
// errors naming the field.
SynthScenario parse_scenario(std::istream& in, const std::string& source = "scenario");
SynthScenario load_scenario(const std::filesystem::path& path);
// Every field, one key=value per line; parse_scenario reads it back.
std::string format_scenario(const SynthScenario& scn);

struct GroundTruth {
    std::vector<std::vector<std::string>> cliques;
    std::vector<std::string> liaisons;
    std::vector<std::string> isolators;
};

struct SynthCohort {
    std::vector<StudentRecord> roster;
    std::vector<Nomination> nominations;
    Network friend_net;
    Network helper_net;
    GroundTruth truth;
};

SynthCohort generate(const SynthScenario& scn);

// Files consumed by the ingest module: roster.csv, nominations.csv, plus
// ground_truth.txt and scenario.txt.
void write_cohort(const std::filesystem::path& dir, const SynthScenario& scn, const SynthCohort& cohort);

}  // namespace peerroles
