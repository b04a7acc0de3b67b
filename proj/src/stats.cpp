#include "peerroles/stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fmt/format.h>
#include <limits>
#include <thread>

namespace peerroles {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

std::vector<double> as_real(const std::vector<int>& v) { return {v.begin(), v.end()}; }

// Mean difference over a fixed membership mask; NaN when a side is empty.
double masked_mean_diff(std::span<const double> attrs, const std::vector<char>& mask, bool role_first) {
    double in_sum = 0.0, out_sum = 0.0;
    std::size_t in_n = 0, out_n = 0;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (mask[i]) {
            in_sum += attrs[i];
            ++in_n;
        } else {
            out_sum += attrs[i];
            ++out_n;
        }
    }
    if (in_n == 0 || out_n == 0) return kNaN;
    const double diff = in_sum / static_cast<double>(in_n) - out_sum / static_cast<double>(out_n);
    return role_first ? diff : -diff;
}

unsigned effective_workers(unsigned requested, int tasks) {
    unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
    return std::max(1u, std::min<unsigned>(w, static_cast<unsigned>(std::max(tasks, 1))));
}

// Fills out[i] = task(i) using contiguous chunks per worker.
template <typename Task>
void parallel_fill(std::vector<double>& out, unsigned workers, Task task) {
    const auto n = out.size();
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = task(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        pool.emplace_back([&, lo, hi, w] {
            try {
                for (std::size_t i = lo; i < hi; ++i) out[i] = task(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

void TestConfig::validate() const {
    if (n_permutations < 1) throw Error(ErrorKind::InvalidParameter, "n_permutations must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidParameter, "alpha must be in (0, 1)");
    if (!(min_role_fraction >= 0.0 && min_role_fraction < 1.0))
        throw Error(ErrorKind::InvalidParameter, "min_role_fraction must be in [0, 1)");
    backend.validate();
}

const char* to_string(Outcome outcome) noexcept {
    switch (outcome) {
    case Outcome::Significant: return "significant";
    case Outcome::NotSignificant: return "not_significant";
    case Outcome::AcceptedNull: return "accepted_null";
    case Outcome::NotApplicable: return "not_applicable";
    case Outcome::Undefined: return "undefined";
    }
    return "unknown";
}

const char* to_string(Role role) noexcept {
    switch (role) {
    case Role::CliqueMember: return "clique_member";
    case Role::Liaison: return "liaison";
    case Role::Isolator: return "isolator";
    }
    return "unknown";
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw Error(ErrorKind::InvalidInput,
                    fmt::format("pearson: length mismatch ({} vs {})", xs.size(), ys.size()));
    if (xs.size() < 3) throw Error(ErrorKind::InvalidInput, "pearson: need at least 3 pairs");
    if (is_constant(xs) || is_constant(ys))
        throw Error(ErrorKind::UndefinedCorrelation, "pearson: constant input vector");
    const double mx = mean_of(xs);
    const double my = mean_of(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double mean_diff(std::span<const double> group_a, std::span<const double> group_b) {
    if (group_a.empty() || group_b.empty()) throw Error(ErrorKind::InvalidInput, "mean_diff: empty group");
    return mean_of(group_a) - mean_of(group_b);
}

double permutation_pvalue(double observed, std::span<const double> replicates, bool plus_one) {
    const double cutoff = observed - kTieTolerance * std::max(1.0, std::abs(observed));
    std::size_t count = 0;
    for (double t : replicates)
        if (t >= cutoff) ++count;
    const auto n = static_cast<double>(replicates.size());
    if (plus_one) return (1.0 + static_cast<double>(count)) / (n + 1.0);
    return static_cast<double>(count) / n;
}

std::vector<double> align_attributes(const Network& net, const std::map<std::string, double>& attrs) {
    std::vector<double> out;
    out.reserve(net.node_count());
    for (const auto& id : net.nodes()) {
        auto it = attrs.find(id.str());
        if (it == attrs.end())
            throw Error(ErrorKind::DataIntegrity, fmt::format("no attribute for node '{}'", id.str()));
        out.push_back(it->second);
    }
    return out;
}

std::vector<char> role_mask(const Network& net, Role role, const RoleParams& params) {
    const auto ra = assign_roles(net, params);
    std::vector<char> mask(net.node_count(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const auto& r = ra.nodes[i];
        switch (role) {
        case Role::CliqueMember: mask[i] = r.is_clique_member; break;
        case Role::Liaison: mask[i] = r.is_liaison; break;
        case Role::Isolator: mask[i] = r.is_isolator; break;
        }
    }
    return mask;
}

double observed_statistic(const Network& net, std::span<const double> attrs, const Statistic& statistic,
                          const RoleParams& params) {
    if (attrs.size() != net.node_count())
        throw Error(ErrorKind::DataIntegrity, "attribute vector does not cover every node");
    if (const auto* corr = std::get_if<CorrelationStatistic>(&statistic))
        return pearson(as_real(degrees(net, corr->mode)), attrs);
    const auto& md = std::get<MeanDiffStatistic>(statistic);
    return masked_mean_diff(attrs, role_mask(net, md.role, params), md.role_first);
}

HypothesisResult run_test(const Network& net, std::span<const double> attrs, const Statistic& statistic,
                          const RoleParams& params, const TestConfig& cfg, std::uint64_t stream_seed) {
    cfg.validate();
    params.validate();
    if (attrs.size() != net.node_count())
        throw Error(ErrorKind::DataIntegrity,
                    fmt::format("attribute vector has {} entries for {} nodes", attrs.size(), net.node_count()));
    for (std::size_t i = 0; i < attrs.size(); ++i)
        if (!std::isfinite(attrs[i]))
            throw Error(ErrorKind::DataIntegrity, fmt::format("non-finite attribute for node '{}'", net.node(
                                                                  static_cast<NodeIndex>(i)).str()));

    HypothesisResult res;
    const auto n = net.node_count();
    const bool label = cfg.backend.backend == Backend::LabelPermutation;
    std::vector<char> mask;
    const auto* md = std::get_if<MeanDiffStatistic>(&statistic);
    const auto* corr = std::get_if<CorrelationStatistic>(&statistic);

    if (md) {
        mask = role_mask(net, md->role, params);
        res.group_size = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), char{1}));
        res.rest_size = n - res.group_size;
        const auto smaller = std::min(res.group_size, res.rest_size);
        if (smaller == 0 || static_cast<double>(smaller) / static_cast<double>(n) < cfg.min_role_fraction) {
            res.outcome = Outcome::NotApplicable;
            res.statistic = kNaN;
            res.note = fmt::format("{} group below {:g}% of nodes", to_string(md->role),
                                   100.0 * cfg.min_role_fraction);
            return res;
        }
        res.statistic = masked_mean_diff(attrs, mask, md->role_first);
        if (res.statistic <= 0.0) {
            res.outcome = Outcome::AcceptedNull;
            res.note = "observed difference is not in the hypothesised direction";
            return res;
        }
    } else {
        res.group_size = n;
        try {
            res.statistic = pearson(as_real(degrees(net, corr->mode)), attrs);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UndefinedCorrelation) throw;
            res.outcome = Outcome::Undefined;
            res.statistic = kNaN;
            res.note = e.what();
            return res;
        }
    }

    const std::vector<double> xs = corr ? as_real(degrees(net, corr->mode)) : std::vector<double>{};
    auto replicate = [&](std::size_t i) -> double {
        Rng rng(derive_seed(stream_seed, i));
        if (label) {
            const auto perm = permute_labels(net, rng);
            std::vector<double> shuffled(n);
            for (std::size_t v = 0; v < n; ++v) shuffled[perm[v]] = attrs[v];
            if (corr) return pearson(xs, shuffled);
            return masked_mean_diff(shuffled, mask, md->role_first);
        }
        const auto rewired = rewire_degree_preserving(net, cfg.backend, rng);
        if (corr) {
            try {
                return pearson(as_real(degrees(rewired, corr->mode)), attrs);
            } catch (const Error&) {
                return kNaN;
            }
        }
        return masked_mean_diff(attrs, role_mask(rewired, md->role, params), md->role_first);
    };

    std::vector<double> tstar(static_cast<std::size_t>(cfg.n_permutations));
    parallel_fill(tstar, effective_workers(cfg.workers, cfg.n_permutations), replicate);

    res.replicates = cfg.n_permutations;
    res.p_value = permutation_pvalue(res.statistic, tstar, cfg.plus_one_correction);
    res.outcome = *res.p_value < cfg.alpha ? Outcome::Significant : Outcome::NotSignificant;
    return res;
}

const std::vector<HypothesisSpec>& hypothesis_specs() {
    static const std::vector<HypothesisSpec> specs{
        {1, false, CorrelationStatistic{DegreeMode::Total}, "friend degree correlates positively with GPAX"},
        {2, true, CorrelationStatistic{DegreeMode::In}, "helper in-degree correlates positively with GPAX"},
        {3, true, CorrelationStatistic{DegreeMode::Out}, "helper out-degree correlates positively with GPAX"},
        {4, false, MeanDiffStatistic{Role::CliqueMember, true}, "friend clique members have higher mean GPAX"},
        {5, true, MeanDiffStatistic{Role::CliqueMember, true}, "helper clique members have higher mean GPAX"},
        {6, false, MeanDiffStatistic{Role::Liaison, true}, "friend liaisons have higher mean GPAX"},
        {7, true, MeanDiffStatistic{Role::Liaison, true}, "helper liaisons have higher mean GPAX"},
        {8, false, MeanDiffStatistic{Role::Isolator, false}, "friend non-isolators have higher mean GPAX"},
        {9, true, MeanDiffStatistic{Role::Isolator, false}, "helper non-isolators have higher mean GPAX"},
    };
    return specs;
}

std::vector<HypothesisResult> run_battery(const Network& friend_net, const Network& helper_net,
                                          std::span<const double> attrs, const RoleParams& params,
                                          const TestConfig& cfg) {
    if (friend_net.nodes() != helper_net.nodes())
        throw Error(ErrorKind::DataIntegrity, "friend and helper networks must share the node universe");
    if (friend_net.directed() || !helper_net.directed())
        throw Error(ErrorKind::InvalidInput, "battery expects an undirected friend and a directed helper network");
    std::vector<HypothesisResult> out;
    out.reserve(9);
    for (const auto& spec : hypothesis_specs()) {
        const auto& net = spec.helper_network ? helper_net : friend_net;
        auto res = run_test(net, attrs, spec.statistic, params, cfg,
                            derive_seed(cfg.backend.seed, static_cast<std::uint64_t>(spec.id)));
        res.hypothesis_id = spec.id;
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace peerroles
