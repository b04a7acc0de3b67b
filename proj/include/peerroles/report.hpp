#pragma once

#include <string>
#include <utility>
#include <vector>

#include "peerroles/graph.hpp"
#include "peerroles/roles.hpp"
#include "peerroles/stats.hpp"

namespace peerroles {

struct RoleCounts {
    std::size_t size = 0;
    std::size_t clique_members = 0;
    std::size_t liaisons = 0;
    std::size_t isolators = 0;
};

RoleCounts count_roles(const RoleAssignment& roles);

struct HistogramSeries {
    // e.g. "EN_helper"
    std::string network;
    DegreeMode mode = DegreeMode::Total;
    std::vector<HistogramBin> bins;
};

struct SchoolReport {
    std::string school;
    NetworkSummary friend_summary;
    NetworkSummary helper_summary;
    RoleCounts friend_roles;
    RoleCounts helper_roles;
    // Either empty or the nine battery results in order.
    std::vector<HypothesisResult> tests;
};

struct ReportBundle {
    // Effective configuration, echoed at the top of every document.
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<SchoolReport> schools;
    std::vector<HistogramSeries> histograms;
    double alpha = 0.05;
    double min_role_fraction = 0.05;
};

// "16 (76%)": rounded average degree and its share of the network size.
std::string format_avg_degree(double avg_degree, std::size_t size);
// "27 (30.34%)", "0 (0%)".
std::string format_count_pct(std::size_t count, std::size_t size);
// Four decimals, "<0.001" below that.
std::string format_p_value(double p);
// Table cell for a correlation result: "0.4204*" when significant.
std::string format_correlation_cell(const HypothesisResult& r);
// Table cell for a p-value: value, "Null", "n/a" or "undefined".
std::string format_p_cell(const HypothesisResult& r);

std::string render_config_header(const ReportBundle& bundle);
std::string render_summary(const ReportBundle& bundle);
std::string render_roles(const ReportBundle& bundle);

struct TestDocuments {
    std::string table;
    // Tab-separated, one row per (school, hypothesis).
    std::string machine;
};

TestDocuments render_tests(const ReportBundle& bundle);

// Two tab-separated columns (degree, count) after the config header.
std::string render_histogram(const ReportBundle& bundle, const HistogramSeries& series);
// "<network>_<mode>_hist.tsv"
std::string histogram_filename(const HistogramSeries& series);

}  // namespace peerroles
