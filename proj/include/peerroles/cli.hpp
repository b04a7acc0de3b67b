#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "peerroles/ingest.hpp"
#include "peerroles/report.hpp"
#include "peerroles/roles.hpp"
#include "peerroles/stats.hpp"

namespace peerroles::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitInput = 2;

struct RunConfig {
    std::string command;
    std::string roster;
    std::string nominations;
    // Directory written by `build`; used instead of roster/nominations.
    std::string networks;
    std::string out;
    std::string scenario;
    bool reciprocal_friends = false;
    bool seed_given = false;
    TestConfig test;
    RoleParams roles;
};

// Loads the cohort named by cfg and builds per-school networks.
std::vector<SchoolNetworks> load_schools(const RunConfig& cfg);

// Summaries, role counts and histograms for every school; tests run when
// with_tests is set.
ReportBundle make_bundle(const RunConfig& cfg, const std::vector<SchoolNetworks>& schools, bool with_tests);

int cmd_build(const RunConfig& cfg, std::ostream& out);
int cmd_summary(const RunConfig& cfg, std::ostream& out);
int cmd_roles(const RunConfig& cfg, std::ostream& out);
int cmd_hist(const RunConfig& cfg, std::ostream& out);
int cmd_test(const RunConfig& cfg, std::ostream& out);
int cmd_synth(const RunConfig& cfg, std::ostream& out);

// Full command line (args[0] is the program name). Returns the exit code:
// 0 success, 1 runtime failure, 2 input or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace peerroles::cli
