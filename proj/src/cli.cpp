#include "peerroles/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <fstream>
#include <ostream>

#include "peerroles/synth.hpp"

namespace peerroles::cli {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
    f << text;
}

std::vector<std::pair<std::string, std::string>> effective_config(const RunConfig& cfg, bool with_tests) {
    const auto& r = cfg.roles;
    std::vector<std::pair<std::string, std::string>> c{
        {"command", cfg.command},
        {"reciprocal_friends", cfg.reciprocal_friends ? "on" : "off"},
        {"member_clique_size", std::to_string(r.member_clique_size)},
        {"liaison_clique_sizes", fmt::format("{}", fmt::join(r.liaison_clique_sizes, ","))},
        {"ratio_filter", r.ratio_filter_enabled ? "on" : "off"},
        {"ratio_direction",
         r.ratio_direction == RatioDirection::OutsideOverWithin ? "outside/within" : "within/outside"},
        {"ratio_threshold", fmt::format("{:g}", r.ratio_threshold)},
        {"min_connections_for_liaison", std::to_string(r.min_connections_for_liaison)},
        {"liaison_rounds", r.max_liaison_rounds == 0 ? "fixed-point" : std::to_string(r.max_liaison_rounds)},
    };
    if (with_tests) {
        const auto& t = cfg.test;
        c.insert(c.end(), {
                              {"seed", std::to_string(t.backend.seed)},
                              {"permutations", std::to_string(t.n_permutations)},
                              {"alpha", fmt::format("{:g}", t.alpha)},
                              {"min_role_fraction", fmt::format("{:g}", t.min_role_fraction)},
                              {"backend", to_string(t.backend.backend)},
                              {"swap_multiplier", std::to_string(t.backend.swap_multiplier)},
                              {"plus_one", t.plus_one_correction ? "on" : "off"},
                          });
    }
    return c;
}

void require_inputs(const RunConfig& cfg) {
    if (!cfg.networks.empty()) return;
    if (cfg.roster.empty() || cfg.nominations.empty())
        throw Error(ErrorKind::Config, "either --networks or both --roster and --nominations are required");
}

}  // namespace

std::vector<SchoolNetworks> load_schools(const RunConfig& cfg) {
    require_inputs(cfg);
    if (!cfg.networks.empty()) {
        const auto built = load_built_networks(cfg.networks);
        return build_school_networks(built.roster, built.nominations, false);
    }
    const auto roster = load_roster(cfg.roster);
    const auto noms = load_nominations(cfg.nominations, roster);
    return build_school_networks(roster, noms.nominations, cfg.reciprocal_friends);
}

ReportBundle make_bundle(const RunConfig& cfg, const std::vector<SchoolNetworks>& schools, bool with_tests) {
    ReportBundle b;
    b.config = effective_config(cfg, with_tests);
    b.alpha = cfg.test.alpha;
    b.min_role_fraction = cfg.test.min_role_fraction;
    for (std::size_t i = 0; i < schools.size(); ++i) {
        const auto& s = schools[i];
        SchoolReport r;
        r.school = s.school;
        r.friend_summary = summarize(s.friend_net);
        r.helper_summary = summarize(s.helper_net);
        r.friend_roles = count_roles(assign_roles(s.friend_net, cfg.roles));
        r.helper_roles = count_roles(assign_roles(s.helper_net, cfg.roles));
        if (with_tests) {
            auto tc = cfg.test;
            tc.backend.seed = derive_seed(cfg.test.backend.seed, 0x5c4001 + i);
            r.tests = run_battery(s.friend_net, s.helper_net, s.gpax, cfg.roles, tc);
        }
        b.schools.push_back(std::move(r));
        b.histograms.push_back({s.school + "_friend", DegreeMode::Total, degree_histogram(s.friend_net)});
        b.histograms.push_back({s.school + "_helper", DegreeMode::In, degree_histogram(s.helper_net, DegreeMode::In)});
        b.histograms.push_back(
            {s.school + "_helper", DegreeMode::Out, degree_histogram(s.helper_net, DegreeMode::Out)});
    }
    return b;
}

int cmd_build(const RunConfig& cfg, std::ostream& out) {
    if (cfg.roster.empty() || cfg.nominations.empty() || cfg.out.empty())
        throw Error(ErrorKind::Config, "build needs --roster, --nominations and --out");
    const auto roster = load_roster(cfg.roster);
    const auto noms = load_nominations(cfg.nominations, roster);
    for (const auto& w : noms.warnings) out << "warning: " << w << '\n';
    const auto schools = build_school_networks(roster, noms.nominations, cfg.reciprocal_friends);
    write_built_networks(cfg.out, roster, schools);
    for (const auto& s : schools)
        out << fmt::format("{}: {} students, {} friend edges, {} helper arcs\n", s.school, s.students.size(),
                           s.friend_net.edge_count(), s.helper_net.edge_count());
    out << fmt::format("wrote {}/nodes.tsv, friend_edges.tsv, helper_edges.tsv\n", cfg.out);
    return kExitOk;
}

int cmd_summary(const RunConfig& cfg, std::ostream& out) {
    const auto bundle = make_bundle(cfg, load_schools(cfg), false);
    const auto text = render_summary(bundle);
    out << text;
    if (!cfg.out.empty()) write_file(fs::path(cfg.out) / "summary.txt", text);
    return kExitOk;
}

int cmd_roles(const RunConfig& cfg, std::ostream& out) {
    const auto schools = load_schools(cfg);
    const auto bundle = make_bundle(cfg, schools, false);
    std::string text = render_roles(bundle);
    text += "\nRole members\n";
    for (const auto& s : schools) {
        for (const auto* net : {&s.friend_net, &s.helper_net}) {
            const auto ra = assign_roles(*net, cfg.roles);
            auto names = [&](const std::vector<NodeIndex>& ids) {
                std::vector<std::string> v;
                for (auto i : ids) v.push_back(net->node(i).str());
                return v.empty() ? std::string("-") : fmt::format("{}", fmt::join(v, ","));
            };
            text += fmt::format("{} {}\n", s.school, net->directed() ? "study-helper" : "friend");
            text += fmt::format("  central (max degree): {}\n", names(ra.central_members()));
            text += fmt::format("  clique members: {}\n", names(ra.clique_members()));
            text += fmt::format("  liaisons: {}\n", names(ra.liaisons()));
            text += fmt::format("  isolators: {}\n", names(ra.isolators()));
        }
    }
    out << text;
    if (!cfg.out.empty()) write_file(fs::path(cfg.out) / "roles.txt", text);
    return kExitOk;
}

int cmd_hist(const RunConfig& cfg, std::ostream& out) {
    if (cfg.out.empty()) throw Error(ErrorKind::Config, "hist needs --out");
    const auto bundle = make_bundle(cfg, load_schools(cfg), false);
    for (const auto& series : bundle.histograms) {
        const auto path = fs::path(cfg.out) / histogram_filename(series);
        write_file(path, render_histogram(bundle, series));
        out << "wrote " << path.string() << '\n';
    }
    return kExitOk;
}

int cmd_test(const RunConfig& cfg, std::ostream& out) {
    const auto bundle = make_bundle(cfg, load_schools(cfg), true);
    const auto docs = render_tests(bundle);
    out << docs.table;
    if (!cfg.out.empty()) {
        write_file(fs::path(cfg.out) / "tests.txt", docs.table);
        write_file(fs::path(cfg.out) / "results.tsv", docs.machine);
    }
    return kExitOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
    if (cfg.scenario.empty() || cfg.out.empty()) throw Error(ErrorKind::Config, "synth needs --scenario and --out");
    auto scn = load_scenario(cfg.scenario);
    if (cfg.seed_given) scn.seed = cfg.test.backend.seed;
    const auto cohort = generate(scn);
    write_cohort(cfg.out, scn, cohort);
    out << fmt::format("wrote {} students, {} nominations to {} (seed {})\n", cohort.roster.size(),
                       cohort.nominations.size(), cfg.out, scn.seed);
    return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Peer-network role extraction and permutation testing"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string backend = "label", ratio_filter = "on", ratio_direction = "outside-within";
    std::string liaison_sizes = "3,4";
    std::uint64_t seed = 0;

    auto add_inputs = [&](CLI::App* sub) {
        sub->add_option("--roster", cfg.roster, "roster CSV (student_id,school,gpax)");
        sub->add_option("--nominations", cfg.nominations, "nominations CSV (source_id,target_id,relation)");
        sub->add_option("--networks", cfg.networks, "directory written by `build`");
        sub->add_flag("--reciprocal", cfg.reciprocal_friends, "friend ties need nominations both ways");
    };
    auto add_roles = [&](CLI::App* sub) {
        sub->add_option("--clique-size", cfg.roles.member_clique_size, "clique size for clique members")
            ->capture_default_str();
        sub->add_option("--liaison-clique-sizes", liaison_sizes, "clique sizes anchoring liaisons")
            ->capture_default_str();
        sub->add_option("--ratio-threshold", cfg.roles.ratio_threshold)->capture_default_str();
        sub->add_option("--ratio-filter", ratio_filter)->check(CLI::IsMember({"on", "off"}))->capture_default_str();
        sub->add_option("--ratio-direction", ratio_direction)
            ->check(CLI::IsMember({"outside-within", "within-outside"}))
            ->capture_default_str();
        sub->add_option("--liaison-min-ties", cfg.roles.min_connections_for_liaison)->capture_default_str();
        sub->add_option("--liaison-rounds", cfg.roles.max_liaison_rounds, "0 = iterate to fixed point")
            ->capture_default_str();
    };
    auto add_tests = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "random seed")->capture_default_str();
        sub->add_option("--permutations", cfg.test.n_permutations)->capture_default_str();
        sub->add_option("--alpha", cfg.test.alpha)->capture_default_str();
        sub->add_option("--min-role-fraction", cfg.test.min_role_fraction)->capture_default_str();
        sub->add_option("--backend", backend)->check(CLI::IsMember({"label", "rewire"}))->capture_default_str();
        sub->add_option("--swap-multiplier", cfg.test.backend.swap_multiplier)->capture_default_str();
        sub->add_flag("--plus-one", cfg.test.plus_one_correction, "use (1+count)/(n+1)");
        sub->add_option("--workers", cfg.test.workers, "replicate threads (0 = all cores)")->capture_default_str();
    };

    auto* build = app.add_subcommand("build", "build friend and study-helper networks");
    build->add_option("--roster", cfg.roster)->required();
    build->add_option("--nominations", cfg.nominations)->required();
    build->add_option("--out", cfg.out)->required();
    build->add_flag("--reciprocal", cfg.reciprocal_friends);

    auto* summary = app.add_subcommand("summary", "basic network characteristics");
    add_inputs(summary);
    add_roles(summary);
    summary->add_option("--out", cfg.out);

    auto* roles = app.add_subcommand("roles", "clique members, liaisons and isolators");
    add_inputs(roles);
    add_roles(roles);
    roles->add_option("--out", cfg.out);

    auto* hist = app.add_subcommand("hist", "degree distributions as TSV files");
    add_inputs(hist);
    add_roles(hist);
    hist->add_option("--out", cfg.out)->required();

    auto* test = app.add_subcommand("test", "permutation tests for H1-H9");
    add_inputs(test);
    add_roles(test);
    add_tests(test);
    test->add_option("--out", cfg.out);

    auto* synth = app.add_subcommand("synth", "generate a synthetic cohort");
    synth->add_option("--scenario", cfg.scenario)->required();
    synth->add_option("--out", cfg.out)->required();
    auto* synth_seed = synth->add_option("--seed", seed, "overrides the scenario seed");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        cfg.test.backend.seed = seed;
        cfg.seed_given = synth_seed->count() > 0;
        cfg.test.backend.backend = backend == "rewire" ? Backend::EdgeRewiring : Backend::LabelPermutation;
        cfg.roles.ratio_filter_enabled = ratio_filter == "on";
        cfg.roles.ratio_direction = ratio_direction == "within-outside" ? RatioDirection::WithinOverOutside
                                                                        : RatioDirection::OutsideOverWithin;
        cfg.roles.liaison_clique_sizes.clear();
        for (const auto& part : CLI::detail::split(liaison_sizes, ',')) {
            try {
                cfg.roles.liaison_clique_sizes.insert(std::stoi(part));
            } catch (const std::exception&) {
                throw Error(ErrorKind::Config, fmt::format("--liaison-clique-sizes: bad size '{}'", part));
            }
        }
        cfg.roles.validate();
        cfg.test.validate();

        auto* chosen = app.get_subcommands().front();
        cfg.command = chosen->get_name();
        if (chosen == build) return cmd_build(cfg, out);
        if (chosen == summary) return cmd_summary(cfg, out);
        if (chosen == roles) return cmd_roles(cfg, out);
        if (chosen == hist) return cmd_hist(cfg, out);
        if (chosen == test) return cmd_test(cfg, out);
        return cmd_synth(cfg, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return e.is_input_error() ? kExitInput : kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace peerroles::cli
