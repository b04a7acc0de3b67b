#include "peerroles/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <unordered_map>

namespace peerroles {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void fail(ErrorKind kind, const std::string& source, std::size_t line, const std::string& msg) {
    throw Error(kind, fmt::format("{}:{}: {}", source, line, msg));
}

// Reads a delimited file: checks the header, then calls row(fields, line)
// for every non-blank line.
template <typename Row>
void read_table(std::istream& in, const std::string& source, std::string_view header, char sep, Row row) {
    std::string text;
    std::size_t line = 0;
    bool seen_header = false;
    while (std::getline(in, text)) {
        ++line;
        std::string_view view = text;
        if (line == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        view = trim(view);
        if (view.empty()) continue;
        if (!seen_header) {
            std::string expected(header);
            if (sep != ',') std::replace(expected.begin(), expected.end(), ',', sep);
            if (view != expected)
                fail(ErrorKind::Parse, source, line, fmt::format("expected header '{}'", expected));
            seen_header = true;
            continue;
        }
        row(split(view, sep), line);
    }
    if (!seen_header) fail(ErrorKind::Parse, source, line == 0 ? 1 : line, "missing header row");
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
    return in;
}

Relation parse_relation(const std::string& text, const std::string& source, std::size_t line) {
    if (text == "friend") return Relation::Friend;
    if (text == "helper") return Relation::Helper;
    fail(ErrorKind::Parse, source, line, fmt::format("relation must be 'friend' or 'helper' (got '{}')", text));
}

std::vector<NodeId> roster_ids(std::span<const StudentRecord> roster) {
    std::vector<NodeId> ids;
    ids.reserve(roster.size());
    for (const auto& r : roster) ids.emplace_back(r.student_id);
    return ids;
}

std::unordered_map<std::string, NodeIndex> roster_index(std::span<const StudentRecord> roster) {
    std::unordered_map<std::string, NodeIndex> idx;
    for (NodeIndex i = 0; i < roster.size(); ++i) idx.emplace(roster[i].student_id, i);
    return idx;
}

NodeIndex resolve(const std::unordered_map<std::string, NodeIndex>& idx, const Nomination& nom,
                  const std::string& id) {
    auto it = idx.find(id);
    if (it == idx.end())
        throw Error(ErrorKind::Referential,
                    fmt::format("nominations:{}: id '{}' is not in the roster", nom.line, id));
    return it->second;
}

}  // namespace

Gpax Gpax::from_hundredths(int hundredths) {
    if (hundredths < 0 || hundredths > kMaxHundredths)
        throw Error(ErrorKind::Validity, fmt::format("gpax {}.{:02} outside [0.00, 4.00]", hundredths / 100,
                                                     std::abs(hundredths % 100)));
    return Gpax(hundredths);
}

Gpax Gpax::parse(std::string_view text) {
    const auto dot = text.find('.');
    const auto whole = text.substr(0, dot);
    const auto frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    auto digits = [](std::string_view s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (whole.empty() || whole.size() > 3 || !digits(whole) || !digits(frac) || frac.size() > 2 ||
        (dot != std::string_view::npos && frac.empty()))
        throw Error(ErrorKind::Parse, fmt::format("'{}' is not a number with at most two decimals", text));
    int w = 0;
    std::from_chars(whole.data(), whole.data() + whole.size(), w);
    int f = 0;
    if (!frac.empty()) {
        std::from_chars(frac.data(), frac.data() + frac.size(), f);
        if (frac.size() == 1) f *= 10;
    }
    return from_hundredths(w * 100 + f);
}

std::string Gpax::str() const { return fmt::format("{}.{:02}", hundredths_ / 100, hundredths_ % 100); }

const char* to_string(Relation relation) noexcept {
    return relation == Relation::Friend ? "friend" : "helper";
}

std::vector<StudentRecord> parse_roster(std::istream& in, const std::string& source) {
    std::vector<StudentRecord> out;
    std::unordered_map<std::string, std::size_t> seen;
    read_table(in, source, kRosterHeader, ',', [&](const std::vector<std::string>& f, std::size_t line) {
        if (f.size() != 3) fail(ErrorKind::Parse, source, line, fmt::format("expected 3 fields, got {}", f.size()));
        if (f[0].empty()) fail(ErrorKind::Parse, source, line, "empty student_id");
        if (f[1].empty()) fail(ErrorKind::Parse, source, line, "empty school");
        StudentRecord rec;
        rec.student_id = f[0];
        rec.school = f[1];
        rec.line = line;
        try {
            rec.gpax = Gpax::parse(f[2]);
        } catch (const Error& e) {
            fail(e.kind(), source, line, e.what());
        }
        auto [it, fresh] = seen.emplace(rec.student_id, line);
        if (!fresh)
            fail(ErrorKind::Validity, source, line,
                 fmt::format("duplicate student_id '{}' (first seen on line {})", rec.student_id, it->second));
        out.push_back(std::move(rec));
    });
    return out;
}

std::vector<StudentRecord> load_roster(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_roster(in, path.string());
}

NominationSet parse_nominations(std::istream& in, std::span<const StudentRecord> roster,
                                const std::string& source) {
    std::set<std::string> ids;
    for (const auto& r : roster) ids.insert(r.student_id);
    NominationSet out;
    std::map<std::tuple<std::string, std::string, Relation>, std::size_t> seen;
    read_table(in, source, kNominationsHeader, ',', [&](const std::vector<std::string>& f, std::size_t line) {
        if (f.size() != 3) fail(ErrorKind::Parse, source, line, fmt::format("expected 3 fields, got {}", f.size()));
        Nomination nom{f[0], f[1], parse_relation(f[2], source, line), line};
        for (const auto* id : {&nom.source_id, &nom.target_id})
            if (!ids.count(*id))
                fail(ErrorKind::Referential, source, line, fmt::format("id '{}' is not in the roster", *id));
        if (nom.source_id == nom.target_id)
            fail(ErrorKind::Validity, source, line, fmt::format("self-nomination by '{}'", nom.source_id));
        auto [it, fresh] = seen.emplace(std::make_tuple(nom.source_id, nom.target_id, nom.relation), line);
        if (!fresh) {
            out.warnings.push_back(fmt::format("{}:{}: duplicate of line {} ignored", source, line, it->second));
            return;
        }
        out.nominations.push_back(std::move(nom));
    });
    return out;
}

NominationSet load_nominations(const std::filesystem::path& path, std::span<const StudentRecord> roster) {
    auto in = open_input(path);
    return parse_nominations(in, roster, path.string());
}

Network build_friend_network(std::span<const Nomination> noms, std::span<const StudentRecord> roster,
                             bool require_reciprocal) {
    const auto idx = roster_index(roster);
    std::map<std::pair<NodeIndex, NodeIndex>, unsigned> directions;
    for (const auto& nom : noms) {
        if (nom.relation != Relation::Friend) continue;
        const auto a = resolve(idx, nom, nom.source_id);
        const auto b = resolve(idx, nom, nom.target_id);
        if (a == b)
            throw Error(ErrorKind::Validity, fmt::format("nominations:{}: self-nomination", nom.line));
        directions[{std::min(a, b), std::max(a, b)}] |= a < b ? 1u : 2u;
    }
    std::vector<Edge> edges;
    for (const auto& [pair, dirs] : directions)
        if (!require_reciprocal || dirs == 3u) edges.push_back({pair.first, pair.second});
    return Network(roster_ids(roster), std::move(edges), false);
}

Network build_helper_network(std::span<const Nomination> noms, std::span<const StudentRecord> roster) {
    const auto idx = roster_index(roster);
    std::set<std::pair<NodeIndex, NodeIndex>> arcs;
    for (const auto& nom : noms) {
        if (nom.relation != Relation::Helper) continue;
        const auto a = resolve(idx, nom, nom.source_id);
        const auto b = resolve(idx, nom, nom.target_id);
        if (a == b)
            throw Error(ErrorKind::Validity, fmt::format("nominations:{}: self-nomination", nom.line));
        arcs.insert({a, b});
    }
    std::vector<Edge> edges;
    for (const auto& [a, b] : arcs) edges.push_back({a, b});
    return Network(roster_ids(roster), std::move(edges), true);
}

std::vector<SchoolNetworks> build_school_networks(std::span<const StudentRecord> roster,
                                                  std::span<const Nomination> noms, bool require_reciprocal) {
    std::map<std::string, std::vector<StudentRecord>> by_school;
    std::unordered_map<std::string, std::string> school_of;
    for (const auto& r : roster) {
        by_school[r.school].push_back(r);
        school_of[r.student_id] = r.school;
    }
    std::map<std::string, std::vector<Nomination>> noms_by_school;
    for (const auto& nom : noms) {
        const auto src = school_of.find(nom.source_id);
        const auto dst = school_of.find(nom.target_id);
        if (src == school_of.end() || dst == school_of.end())
            throw Error(ErrorKind::Referential, fmt::format("nominations:{}: id not in the roster", nom.line));
        if (src->second != dst->second)
            throw Error(ErrorKind::Validity,
                        fmt::format("nominations:{}: '{}' ({}) and '{}' ({}) are in different schools", nom.line,
                                    nom.source_id, src->second, nom.target_id, dst->second));
        noms_by_school[src->second].push_back(nom);
    }
    std::vector<SchoolNetworks> out;
    for (auto& [school, students] : by_school) {
        const auto& sn = noms_by_school[school];
        SchoolNetworks s;
        s.school = school;
        s.friend_net = build_friend_network(sn, students, require_reciprocal);
        s.helper_net = build_helper_network(sn, students);
        for (const auto& r : students) s.gpax.push_back(r.gpax.value());
        s.students = std::move(students);
        out.push_back(std::move(s));
    }
    return out;
}

void write_edge_list(std::ostream& out, const Network& net) {
    for (const auto& e : net.edges()) out << net.node(e.from).str() << '\t' << net.node(e.to).str() << '\n';
}

void write_built_networks(const std::filesystem::path& dir, std::span<const StudentRecord> roster,
                          std::span<const SchoolNetworks> schools) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", (dir / name).string()));
        return f;
    };
    auto nodes = open("nodes.tsv");
    nodes << "student_id\tschool\tgpax\n";
    for (const auto& r : roster) nodes << r.student_id << '\t' << r.school << '\t' << r.gpax.str() << '\n';
    auto friends = open("friend_edges.tsv");
    auto helpers = open("helper_edges.tsv");
    friends << "source\ttarget\n";
    helpers << "source\ttarget\n";
    for (const auto& s : schools) {
        write_edge_list(friends, s.friend_net);
        write_edge_list(helpers, s.helper_net);
    }
}

BuiltCohort load_built_networks(const std::filesystem::path& dir) {
    BuiltCohort out;
    {
        const auto path = dir / "nodes.tsv";
        auto in = open_input(path);
        std::set<std::string> seen;
        read_table(in, path.string(), "student_id,school,gpax", '\t',
                   [&](const std::vector<std::string>& f, std::size_t line) {
                       if (f.size() != 3 || f[0].empty() || f[1].empty())
                           fail(ErrorKind::Parse, path.string(), line, "malformed node row");
                       if (!seen.insert(f[0]).second)
                           fail(ErrorKind::Validity, path.string(), line, fmt::format("duplicate node '{}'", f[0]));
                       StudentRecord rec;
                       rec.student_id = f[0];
                       rec.school = f[1];
                       rec.line = line;
                       try {
                           rec.gpax = Gpax::parse(f[2]);
                       } catch (const Error& e) {
                           fail(e.kind(), path.string(), line, e.what());
                       }
                       out.roster.push_back(std::move(rec));
                   });
        std::set<std::string> ids(seen);
        for (auto [name, rel] : {std::pair{"friend_edges.tsv", Relation::Friend},
                                 std::pair{"helper_edges.tsv", Relation::Helper}}) {
            const auto epath = dir / name;
            auto ein = open_input(epath);
            read_table(ein, epath.string(), "source,target", '\t',
                       [&](const std::vector<std::string>& f, std::size_t line) {
                           if (f.size() != 2) fail(ErrorKind::Parse, epath.string(), line, "malformed edge row");
                           for (const auto& id : f)
                               if (!ids.count(id))
                                   fail(ErrorKind::Referential, epath.string(), line,
                                        fmt::format("unknown node '{}'", id));
                           if (f[0] == f[1])
                               fail(ErrorKind::Validity, epath.string(), line, "self-loop");
                           out.nominations.push_back({f[0], f[1], rel, line});
                       });
        }
    }
    return out;
}

}  // namespace peerroles
