#include "peerroles/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <istream>
#include <numeric>
#include <set>
#include <sstream>

#include "peerroles/random.hpp"

namespace peerroles {

const char* to_string(PlantedRole role) noexcept {
    switch (role) {
    case PlantedRole::None: return "none";
    case PlantedRole::CliqueMember: return "clique";
    case PlantedRole::Liaison: return "liaison";
    case PlantedRole::Isolator: return "isolator";
    }
    return "unknown";
}

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::Config, fmt::format("scenario field '{}': {}", field, msg));
}

void check_prob(const std::string& field, double p) {
    if (!(p >= 0.0 && p <= 1.0)) config_error(field, fmt::format("probability {} outside [0, 1]", p));
}

template <typename T>
T parse_number(const std::string& field, const std::string& text) {
    std::istringstream ss(text);
    T value{};
    ss >> value;
    if (ss.fail() || !ss.eof()) config_error(field, fmt::format("cannot parse '{}'", text));
    return value;
}

std::string trimmed(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

void SynthScenario::validate() const {
    if (n_students < 2) config_error("n_students", "must be >= 2");
    if (n_cliques < 0) config_error("n_cliques", "must be >= 0");
    if (n_liaisons < 0) config_error("n_liaisons", "must be >= 0");
    if (n_isolators < 0) config_error("n_isolators", "must be >= 0");
    if (clique_size < 3) config_error("clique_size", "must be >= 3");
    const long planted = static_cast<long>(n_cliques) * clique_size + n_liaisons + n_isolators;
    if (planted > n_students)
        config_error("n_students", fmt::format("{} planted nodes do not fit in {} students", planted, n_students));
    if (n_liaisons > 0 && n_cliques < 2)
        config_error("n_liaisons", "liaisons need at least 2 planted cliques to bridge");
    check_prob("background_edge_prob", background_edge_prob);
    check_prob("helper_keep_prob", helper_keep_prob);
    check_prob("helper_reciprocal_prob", helper_reciprocal_prob);
    check_prob("helper_extra_prob", helper_extra_prob);
    if (!(noise_sd >= 0.0)) config_error("noise_sd", "must be >= 0");
    if (!std::isfinite(degree_effect_beta)) config_error("degree_effect_beta", "must be finite");
    if (!std::isfinite(role_effect_delta)) config_error("role_effect_delta", "must be finite");
    if (!(gpax_base >= 0.0 && gpax_base <= 4.0)) config_error("gpax_base", "must be in [0, 4]");
    if (school.empty() || school.find_first_of(",\t ") != std::string::npos)
        config_error("school", "must be a non-empty label without commas, tabs or spaces");
}

SynthScenario parse_scenario(std::istream& in, const std::string& source) {
    SynthScenario s;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trimmed(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::Config, fmt::format("{}:{}: expected key=value", source, lineno));
        const auto key = trimmed(line.substr(0, eq));
        const auto val = trimmed(line.substr(eq + 1));
        if (key == "n_students") s.n_students = parse_number<int>(key, val);
        else if (key == "n_cliques") s.n_cliques = parse_number<int>(key, val);
        else if (key == "clique_size") s.clique_size = parse_number<int>(key, val);
        else if (key == "n_liaisons") s.n_liaisons = parse_number<int>(key, val);
        else if (key == "n_isolators") s.n_isolators = parse_number<int>(key, val);
        else if (key == "background_edge_prob") s.background_edge_prob = parse_number<double>(key, val);
        else if (key == "degree_effect_beta") s.degree_effect_beta = parse_number<double>(key, val);
        else if (key == "role_effect_delta") s.role_effect_delta = parse_number<double>(key, val);
        else if (key == "noise_sd") s.noise_sd = parse_number<double>(key, val);
        else if (key == "gpax_base") s.gpax_base = parse_number<double>(key, val);
        else if (key == "helper_keep_prob") s.helper_keep_prob = parse_number<double>(key, val);
        else if (key == "helper_reciprocal_prob") s.helper_reciprocal_prob = parse_number<double>(key, val);
        else if (key == "helper_extra_prob") s.helper_extra_prob = parse_number<double>(key, val);
        else if (key == "seed") s.seed = parse_number<std::uint64_t>(key, val);
        else if (key == "school") s.school = val;
        else if (key == "effect_role") {
            if (val == "none") s.effect_role = PlantedRole::None;
            else if (val == "clique") s.effect_role = PlantedRole::CliqueMember;
            else if (val == "liaison") s.effect_role = PlantedRole::Liaison;
            else if (val == "isolator") s.effect_role = PlantedRole::Isolator;
            else config_error(key, fmt::format("unknown role '{}'", val));
        } else {
            config_error(key, "unknown field");
        }
    }
    s.validate();
    return s;
}

SynthScenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
    return parse_scenario(in, path.string());
}

std::string format_scenario(const SynthScenario& s) {
    std::string out;
    auto add = [&](const char* key, const auto& value) { out += fmt::format("{}={}\n", key, value); };
    add("n_students", s.n_students);
    add("n_cliques", s.n_cliques);
    add("clique_size", s.clique_size);
    add("n_liaisons", s.n_liaisons);
    add("n_isolators", s.n_isolators);
    add("background_edge_prob", s.background_edge_prob);
    add("degree_effect_beta", s.degree_effect_beta);
    add("role_effect_delta", s.role_effect_delta);
    add("effect_role", to_string(s.effect_role));
    add("noise_sd", s.noise_sd);
    add("gpax_base", s.gpax_base);
    add("helper_keep_prob", s.helper_keep_prob);
    add("helper_reciprocal_prob", s.helper_reciprocal_prob);
    add("helper_extra_prob", s.helper_extra_prob);
    add("school", s.school);
    add("seed", s.seed);
    return out;
}

SynthCohort generate(const SynthScenario& scn) {
    scn.validate();
    Rng rng(derive_seed(scn.seed, 0));
    const auto n = static_cast<NodeIndex>(scn.n_students);
    const int width = std::max(3, static_cast<int>(std::to_string(scn.n_students).size()));
    std::vector<std::string> labels;
    for (NodeIndex i = 0; i < n; ++i) labels.push_back(fmt::format("s{:0{}}", i + 1, width));

    std::vector<NodeIndex> order(n);
    std::iota(order.begin(), order.end(), NodeIndex{0});
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    std::vector<PlantedRole> role(n, PlantedRole::None);
    std::vector<std::vector<NodeIndex>> cliques(static_cast<std::size_t>(scn.n_cliques));
    std::vector<NodeIndex> liaisons, isolated, ordinary;
    std::size_t cursor = 0;
    for (auto& c : cliques) {
        for (int k = 0; k < scn.clique_size; ++k) c.push_back(order[cursor++]);
        std::sort(c.begin(), c.end());
        for (auto v : c) role[v] = PlantedRole::CliqueMember;
    }
    for (int k = 0; k < scn.n_liaisons; ++k) liaisons.push_back(order[cursor++]);
    for (int k = 0; k < scn.n_isolators; ++k) isolated.push_back(order[cursor++]);
    while (cursor < order.size()) ordinary.push_back(order[cursor++]);
    for (auto v : liaisons) role[v] = PlantedRole::Liaison;
    for (auto v : isolated) role[v] = PlantedRole::Isolator;

    std::set<std::pair<NodeIndex, NodeIndex>> ties;
    auto tie = [&](NodeIndex a, NodeIndex b) { ties.insert({std::min(a, b), std::max(a, b)}); };
    for (const auto& c : cliques)
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j) tie(c[i], c[j]);
    // A liaison touches one member in each of two distinct cliques, so it
    // closes no triangle.
    for (auto v : liaisons) {
        const auto first = rng.below(cliques.size());
        auto second = rng.below(cliques.size() - 1);
        if (second >= first) ++second;
        const auto& ca = cliques[first];
        const auto& cb = cliques[second];
        tie(v, ca[rng.below(ca.size())]);
        tie(v, cb[rng.below(cb.size())]);
    }
    // Ordinary students form a path: nobody accidentally isolated, no triangles.
    for (std::size_t i = 1; i < ordinary.size(); ++i) tie(ordinary[i - 1], ordinary[i]);
    if (ordinary.size() == 1 && !cliques.empty()) {
        const auto& c = cliques[rng.below(cliques.size())];
        tie(ordinary[0], c[rng.below(c.size())]);
    }
    if (scn.background_edge_prob > 0.0) {
        for (NodeIndex a = 0; a < n; ++a) {
            if (role[a] == PlantedRole::Isolator) continue;
            for (NodeIndex b = a + 1; b < n; ++b) {
                if (role[b] == PlantedRole::Isolator || ties.count({a, b})) continue;
                if (rng.bernoulli(scn.background_edge_prob)) ties.insert({a, b});
            }
        }
    }

    std::set<std::pair<NodeIndex, NodeIndex>> arcs;
    for (const auto& [a, b] : ties) {
        if (!rng.bernoulli(scn.helper_keep_prob)) continue;
        const bool forward = rng.below(2) == 0;
        arcs.insert(forward ? std::pair{a, b} : std::pair{b, a});
        if (rng.bernoulli(scn.helper_reciprocal_prob)) arcs.insert(forward ? std::pair{b, a} : std::pair{a, b});
    }
    if (scn.helper_extra_prob > 0.0) {
        for (NodeIndex a = 0; a < n; ++a) {
            if (role[a] == PlantedRole::Isolator) continue;
            for (NodeIndex b = 0; b < n; ++b) {
                if (a == b || role[b] == PlantedRole::Isolator) continue;
                if (rng.bernoulli(scn.helper_extra_prob)) arcs.insert({a, b});
            }
        }
    }

    SynthCohort out;
    std::vector<Edge> fedges, hedges;
    for (const auto& [a, b] : ties) fedges.push_back({a, b});
    for (const auto& [a, b] : arcs) hedges.push_back({a, b});
    std::vector<NodeId> ids(labels.begin(), labels.end());
    out.friend_net = Network(ids, fedges, false);
    out.helper_net = Network(ids, hedges, true);

    const auto deg = degrees(out.friend_net);
    double mean = 0.0;
    for (int d : deg) mean += d;
    mean /= n;
    double var = 0.0;
    for (int d : deg) var += (d - mean) * (d - mean);
    const double sd = std::sqrt(var / n);
    for (NodeIndex v = 0; v < n; ++v) {
        const double z = sd > 0.0 ? (deg[v] - mean) / sd : 0.0;
        double g = scn.gpax_base + scn.degree_effect_beta * z;
        if (scn.effect_role != PlantedRole::None && role[v] == scn.effect_role) g += scn.role_effect_delta;
        g += scn.noise_sd * rng.normal();
        g = std::clamp(g, 0.0, 4.0);
        const int hundredths = std::clamp(static_cast<int>(std::lround(g * 100.0)), 0, Gpax::kMaxHundredths);
        out.roster.push_back({labels[v], scn.school, Gpax::from_hundredths(hundredths), v + 2});
    }

    std::size_t line = 2;
    for (const auto& e : out.friend_net.edges())
        out.nominations.push_back({labels[e.from], labels[e.to], Relation::Friend, line++});
    for (const auto& e : out.helper_net.edges())
        out.nominations.push_back({labels[e.from], labels[e.to], Relation::Helper, line++});

    for (const auto& c : cliques) {
        std::vector<std::string> members;
        for (auto v : c) members.push_back(labels[v]);
        out.truth.cliques.push_back(std::move(members));
    }
    std::sort(liaisons.begin(), liaisons.end());
    std::sort(isolated.begin(), isolated.end());
    for (auto v : liaisons) out.truth.liaisons.push_back(labels[v]);
    for (auto v : isolated) out.truth.isolators.push_back(labels[v]);
    return out;
}

void write_cohort(const std::filesystem::path& dir, const SynthScenario& scn, const SynthCohort& cohort) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", (dir / name).string()));
        return f;
    };
    auto roster = open("roster.csv");
    roster << kRosterHeader << '\n';
    for (const auto& r : cohort.roster) roster << r.student_id << ',' << r.school << ',' << r.gpax.str() << '\n';
    auto noms = open("nominations.csv");
    noms << kNominationsHeader << '\n';
    for (const auto& m : cohort.nominations)
        noms << m.source_id << ',' << m.target_id << ',' << to_string(m.relation) << '\n';
    auto truth = open("ground_truth.txt");
    truth << "# planted roles\n";
    for (std::size_t i = 0; i < cohort.truth.cliques.size(); ++i)
        truth << "clique" << i + 1 << '=' << fmt::format("{}", fmt::join(cohort.truth.cliques[i], ",")) << '\n';
    truth << "liaisons=" << fmt::format("{}", fmt::join(cohort.truth.liaisons, ",")) << '\n';
    truth << "isolators=" << fmt::format("{}", fmt::join(cohort.truth.isolators, ",")) << '\n';
    auto scenario = open("scenario.txt");
    scenario << format_scenario(scn);
}

}  // namespace peerroles
