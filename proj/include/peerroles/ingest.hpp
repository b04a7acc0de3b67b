#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "peerroles/graph.hpp"

namespace peerroles {

// Grade point average held exactly in hundredths, 0.00..4.00.
class Gpax {
public:
    static constexpr int kMaxHundredths = 400;

    // Throws Error(Validity) outside [0, 400].
    static Gpax from_hundredths(int hundredths);
    // Accepts "3", "3.2", "3.25"; throws Parse on malformed text and
    // Validity when out of range.
    static Gpax parse(std::string_view text);

    int hundredths() const noexcept { return hundredths_; }
    double value() const noexcept { return hundredths_ / 100.0; }
    // Always two decimals, e.g. "3.20".
    std::string str() const;

    friend bool operator==(const Gpax&, const Gpax&) = default;

private:
    explicit Gpax(int h) : hundredths_(h) {}
    int hundredths_ = 0;
};

struct StudentRecord {
    std::string student_id;
    std::string school;
    Gpax gpax = Gpax::from_hundredths(0);
    std::size_t line = 0;
};

enum class Relation { Friend, Helper };

const char* to_string(Relation relation) noexcept;

struct Nomination {
    std::string source_id;
    std::string target_id;
    Relation relation = Relation::Friend;
    std::size_t line = 0;
};

struct NominationSet {
    std::vector<Nomination> nominations;
    std::vector<std::string> warnings;
};

inline constexpr std::string_view kRosterHeader = "student_id,school,gpax";
inline constexpr std::string_view kNominationsHeader = "source_id,target_id,relation";

// Roster CSV with mandatory header. Errors carry "<source>:<line>:".
std::vector<StudentRecord> parse_roster(std::istream& in, const std::string& source = "roster");
std::vector<StudentRecord> load_roster(const std::filesystem::path& path);

// Nomination CSV; ids must resolve against the roster, self-nominations are
// rejected and exact duplicates dropped with a warning.
NominationSet parse_nominations(std::istream& in, std::span<const StudentRecord> roster,
                                const std::string& source = "nominations");
NominationSet load_nominations(const std::filesystem::path& path, std::span<const StudentRecord> roster);

// Undirected network over every roster student. With require_reciprocal an
// edge needs nominations in both directions.
Network build_friend_network(std::span<const Nomination> noms, std::span<const StudentRecord> roster,
                             bool require_reciprocal = false);

// Directed network over every roster student; A->B means A asks B for help.
Network build_helper_network(std::span<const Nomination> noms, std::span<const StudentRecord> roster);

struct SchoolNetworks {
    std::string school;
    std::vector<StudentRecord> students;
    Network friend_net;
    Network helper_net;
    std::vector<double> gpax;
};

// One pair of networks per school, schools in sorted order. Nominations
// that cross schools are rejected with Validity errors.
std::vector<SchoolNetworks> build_school_networks(std::span<const StudentRecord> roster,
                                                  std::span<const Nomination> noms,
                                                  bool require_reciprocal = false);

// Built-network directory: nodes.tsv, friend_edges.tsv, helper_edges.tsv.
struct BuiltCohort {
    std::vector<StudentRecord> roster;
    std::vector<Nomination> nominations;
};

void write_built_networks(const std::filesystem::path& dir, std::span<const StudentRecord> roster,
                          std::span<const SchoolNetworks> schools);
BuiltCohort load_built_networks(const std::filesystem::path& dir);

// Tab-separated "from<TAB>to" lines in edge order.
void write_edge_list(std::ostream& out, const Network& net);

}  // namespace peerroles
