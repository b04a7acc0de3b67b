#include "peerroles/report.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace peerroles {

namespace {

class TextTable {
public:
    explicit TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    std::string str() const {
        std::vector<std::size_t> width;
        for (const auto& row : rows_) {
            width.resize(std::max(width.size(), row.size()), 0);
            for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
        }
        std::string out;
        for (const auto& row : rows_) {
            std::string line;
            for (std::size_t i = 0; i < row.size(); ++i) {
                line += row[i];
                if (i + 1 < row.size()) line += std::string(width[i] - row[i].size() + 2, ' ');
            }
            out += line + '\n';
        }
        return out;
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

std::string format_density(double d) { return fmt::format("{:.2f}", d); }

std::string format_diameter(const NetworkSummary& s) { return std::to_string(s.diameter); }

const HypothesisResult* find(const SchoolReport& s, int id) {
    for (const auto& r : s.tests)
        if (r.hypothesis_id == id) return &r;
    return nullptr;
}

std::string pct_label(double fraction) { return fmt::format("{:g}%", 100.0 * fraction); }

std::string number(double v) {
    if (std::isnan(v)) return "nan";
    return fmt::format("{:.10g}", v);
}

}  // namespace

RoleCounts count_roles(const RoleAssignment& roles) {
    RoleCounts c;
    c.size = roles.nodes.size();
    for (const auto& r : roles.nodes) {
        c.clique_members += r.is_clique_member;
        c.liaisons += r.is_liaison;
        c.isolators += r.is_isolator;
    }
    return c;
}

std::string format_avg_degree(double avg_degree, std::size_t size) {
    const double pct = size == 0 ? 0.0 : 100.0 * avg_degree / static_cast<double>(size);
    return fmt::format("{} ({}%)", std::lround(avg_degree), std::lround(pct));
}

std::string format_count_pct(std::size_t count, std::size_t size) {
    if (count == 0) return "0 (0%)";
    return fmt::format("{} ({:.2f}%)", count, 100.0 * static_cast<double>(count) / static_cast<double>(size));
}

std::string format_p_value(double p) {
    if (p < 0.001) return "<0.001";
    return fmt::format("{:.4f}", p);
}

std::string format_correlation_cell(const HypothesisResult& r) {
    if (r.outcome == Outcome::Undefined) return "undefined";
    return fmt::format("{:.4f}{}", r.statistic, r.outcome == Outcome::Significant ? "*" : "");
}

std::string format_p_cell(const HypothesisResult& r) {
    switch (r.outcome) {
    case Outcome::NotApplicable: return "n/a";
    case Outcome::AcceptedNull: return "Null";
    case Outcome::Undefined: return "undefined";
    default: return format_p_value(r.p_value.value_or(1.0));
    }
}

std::string render_config_header(const ReportBundle& bundle) {
    std::string out;
    for (const auto& [k, v] : bundle.config) out += fmt::format("# {}: {}\n", k, v);
    return out;
}

std::string render_summary(const ReportBundle& bundle) {
    TextTable friends({"School", "Size", "Diameter", "Average Degree", "Maximum Degree", "Density"});
    TextTable helpers({"School", "Size", "Diameter", "Average In-Degree", "Average Out-Degree", "Maximum In-Degree",
                       "Maximum Out-Degree", "Density"});
    for (const auto& s : bundle.schools) {
        const auto& f = s.friend_summary;
        friends.add({s.school, std::to_string(f.size), format_diameter(f), format_avg_degree(f.avg_degree, f.size),
                     std::to_string(f.max_degree), format_density(f.density)});
        const auto& h = s.helper_summary;
        helpers.add({s.school, std::to_string(h.size), format_diameter(h), fmt::format("{:.2f}", h.avg_in_degree),
                     fmt::format("{:.2f}", h.avg_out_degree), std::to_string(h.max_in_degree),
                     std::to_string(h.max_out_degree), format_density(h.density)});
    }
    std::string out = render_config_header(bundle);
    out += "\nBasic characteristics of friend networks\n";
    out += friends.str();
    out += "\nBasic characteristics of study-helper networks\n";
    out += helpers.str();
    out += "\nDiameters and densities ignore edge direction; diameter 0 means the network has no edges.\n";
    return out;
}

std::string render_roles(const ReportBundle& bundle) {
    std::string out = render_config_header(bundle);
    auto table = [&](const char* title, auto pick) {
        TextTable t({"School", "Number of Members", "Friend Network", "Study-Helper Network"});
        for (const auto& s : bundle.schools)
            t.add({s.school, std::to_string(s.friend_roles.size),
                   format_count_pct(pick(s.friend_roles), s.friend_roles.size),
                   format_count_pct(pick(s.helper_roles), s.helper_roles.size)});
        out += fmt::format("\n{}\n", title);
        out += t.str();
    };
    table("Numbers and percentages of clique members", [](const RoleCounts& c) { return c.clique_members; });
    table("Numbers and percentages of liaisons", [](const RoleCounts& c) { return c.liaisons; });
    table("Numbers and percentages of isolators", [](const RoleCounts& c) { return c.isolators; });
    return out;
}

TestDocuments render_tests(const ReportBundle& bundle) {
    const auto threshold = pct_label(bundle.min_role_fraction);
    const auto alpha = fmt::format("{:g}", bundle.alpha);
    std::string out = render_config_header(bundle);

    TextTable coef({"School", "Friend: Degrees and GPAX", "Helper: In-degrees and GPAX",
                    "Helper: Out-degrees and GPAX"});
    TextTable corr_p = coef;
    for (const auto& s : bundle.schools) {
        std::vector<std::string> c{s.school}, p{s.school};
        for (int id : {1, 2, 3}) {
            const auto* r = find(s, id);
            c.push_back(r ? format_correlation_cell(*r) : "-");
            p.push_back(r ? format_p_cell(*r) : "-");
        }
        coef.add(std::move(c));
        corr_p.add(std::move(p));
    }
    out += "\nCorrelation coefficients for H1-H3\n" + coef.str();
    out += fmt::format("* Its p-value < {}\n", alpha);
    out += "\nP-values of correlation coefficients for H1-H3\n" + corr_p.str();

    auto pair_table = [&](const char* title, int friend_id, int helper_id, const std::string& legend) {
        TextTable t({"Network", "Friend Network", "Study-Helper Network"});
        for (const auto& s : bundle.schools) {
            const auto* a = find(s, friend_id);
            const auto* b = find(s, helper_id);
            t.add({s.school, a ? format_p_cell(*a) : "-", b ? format_p_cell(*b) : "-"});
        }
        out += fmt::format("\n{}\n", title) + t.str() + legend + "\n";
    };
    pair_table("P-values for H4 and H5", 4, 5,
               fmt::format("n/a = fewer than {} of nodes are clique members (or non-members), "
                           "Null = mean GPAX of clique members is not higher than non-clique members",
                           threshold));
    pair_table("P-values for H6 and H7", 6, 7,
               fmt::format("n/a = fewer than {} of nodes are liaisons (or non-liaisons), "
                           "Null = mean GPAX of liaisons is not higher than non-liaisons",
                           threshold));
    pair_table("P-values for H8 and H9", 8, 9,
               fmt::format("n/a = fewer than {} of nodes are isolators (or non-isolators), "
                           "Null = mean GPAX of non-isolators is not higher than isolators",
                           threshold));

    TextTable sig({"Correlation", "School", "Correlation Coefficient"});
    const char* names[] = {"Degrees of nodes and GPAX", "In-degrees of nodes and GPAX",
                           "Out-degrees of nodes and GPAX"};
    for (int id : {1, 2, 3}) {
        bool first = true;
        for (const auto& s : bundle.schools) {
            const auto* r = find(s, id);
            if (!r || r->outcome != Outcome::Significant) continue;
            sig.add({first ? names[id - 1] : "", s.school, fmt::format("{:.4f}", r->statistic)});
            first = false;
        }
    }
    out += "\nStatistically significant correlation coefficients\n" + sig.str();
    out += fmt::format("* p-value < {}\n", alpha);

    std::string tsv = render_config_header(bundle);
    tsv += "school\thypothesis\tnetwork\tstatistic\tp_value\toutcome\tgroup_size\trest_size\treplicates\n";
    for (const auto& s : bundle.schools) {
        for (const auto& r : s.tests) {
            const bool helper = r.hypothesis_id >= 1 && r.hypothesis_id <= 9 &&
                                hypothesis_specs()[static_cast<std::size_t>(r.hypothesis_id - 1)].helper_network;
            tsv += fmt::format("{}\tH{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", s.school, r.hypothesis_id,
                               helper ? "helper" : "friend", number(r.statistic),
                               r.p_value ? number(*r.p_value) : "", to_string(r.outcome), r.group_size,
                               r.rest_size, r.replicates);
        }
    }
    return {out, tsv};
}

std::string render_histogram(const ReportBundle& bundle, const HistogramSeries& series) {
    std::string out = render_config_header(bundle);
    out += fmt::format("# network: {}\n# mode: {}\n", series.network, to_string(series.mode));
    out += "degree\tcount\n";
    for (const auto& b : series.bins) out += fmt::format("{}\t{}\n", b.degree, b.count);
    return out;
}

std::string histogram_filename(const HistogramSeries& series) {
    return fmt::format("{}_{}_hist.tsv", series.network, to_string(series.mode));
}

}  // namespace peerroles
