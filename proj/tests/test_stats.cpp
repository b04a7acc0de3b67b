#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "peerroles/stats.hpp"

using namespace peerroles;

TEST_CASE("pearson") {
    using V = std::vector<double>;
    CHECK(pearson(V{1, 2, 3}, V{2, 4, 6}) == doctest::Approx(1.0));
    CHECK(pearson(V{1, 2, 3}, V{6, 4, 2}) == doctest::Approx(-1.0));
    CHECK(pearson(V{1, 2, 3, 4}, V{1, 3, 2, 4}) == doctest::Approx(0.8));
    try {
        pearson(V{1, 1, 1}, V{1, 2, 3});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UndefinedCorrelation);
    }
    try {
        pearson(V{1, 2, 3}, V{1, 2});
        FAIL("expected throw");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidInput);
    }
    CHECK_THROWS_AS(pearson(V{1, 2}, V{2, 1}), Error);
}

TEST_CASE("pearson properties") {
    Rng rng(31);
    for (int t = 0; t < 100; ++t) {
        const auto n = 3 + rng.below(30);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.normal();
            y[i] = 0.5 * x[i] + rng.normal();
        }
        const double r = pearson(x, y);
        CHECK(r == doctest::Approx(fixtures::oracle_pearson(x, y)).epsilon(1e-9));
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
        const double a = 0.1 + 5.0 * rng.uniform(), b = rng.normal() * 10.0;
        std::vector<double> ax(n);
        for (std::size_t i = 0; i < n; ++i) ax[i] = a * x[i] + b;
        CHECK(pearson(ax, y) == doctest::Approx(r).epsilon(1e-9));
        // joint reordering of pairs
        std::vector<double> px, py;
        for (std::size_t i = n; i-- > 0;) {
            px.push_back(x[i]);
            py.push_back(y[i]);
        }
        CHECK(pearson(px, py) == doctest::Approx(r).epsilon(1e-12));
    }
}

TEST_CASE("mean_diff") {
    using V = std::vector<double>;
    CHECK(mean_diff(V{3.5, 3.7}, V{3.0, 3.2}) == doctest::Approx(0.5));
    CHECK(mean_diff(V{3.1, 2.9}, V{3.1, 2.9}) == 0.0);
    CHECK(mean_diff(V{4.0}, V{2.0, 2.0, 2.0}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(mean_diff(V{}, V{1.0}), Error);
    CHECK_THROWS_AS(mean_diff(V{1.0}, V{}), Error);
}

TEST_CASE("permutation_pvalue") {
    using V = std::vector<double>;
    CHECK(permutation_pvalue(0.6, V{0.9, 0.5, 0.2, 0.7, 0.3}) == doctest::Approx(0.4));
    CHECK(permutation_pvalue(1.0, V{0.9, 0.5, 0.2}) == 0.0);
    CHECK(permutation_pvalue(0.5, V{0.5, 0.5, 0.5}) == 1.0);
    CHECK(permutation_pvalue(1.0, V{0.9, 0.5, 0.2}, true) == doctest::Approx(0.25));
    // ties survive rounding in the last bits
    CHECK(permutation_pvalue(0.3, V{0.1 + 0.2}) == 1.0);
    CHECK(permutation_pvalue(0.5, V{std::nan(""), 0.7}) == doctest::Approx(0.5));

    Rng rng(3);
    std::vector<double> tstar(50);
    for (auto& t : tstar) t = rng.normal();
    double last = 1.0;
    for (double T = -3.0; T <= 3.0; T += 0.05) {
        const double p = permutation_pvalue(T, tstar);
        CHECK(p <= last);
        last = p;
    }
}

TEST_CASE("run_test outcomes") {
    TestConfig cfg;
    cfg.n_permutations = 10000;
    RoleParams roles;

    SUBCASE("star with a high-GPAX centre: exact p is 1/5") {
        const auto net = fixtures::star(4);
        const std::vector<double> gpax{4.0, 2.0, 2.0, 2.0, 2.0};
        const auto deg = degrees(net);
        const std::vector<double> x(deg.begin(), deg.end());
        const double exact = fixtures::exact_permutation_pvalue(
            gpax, [&](const std::vector<double>& a) { return fixtures::oracle_pearson(x, a); });
        CHECK(exact == doctest::Approx(0.2));
        const auto r = run_test(net, gpax, CorrelationStatistic{}, roles, cfg, 42);
        CHECK(r.statistic == doctest::Approx(1.0));
        REQUIRE(r.p_value.has_value());
        CHECK(std::abs(*r.p_value - exact) < 0.02);
        CHECK(r.outcome == Outcome::NotSignificant);
    }
    SUBCASE("clique members with lower GPAX are an accepted null") {
        // 4-clique plus a 6-node path; clique students have the lower grades
        std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
        for (NodeIndex a = 5; a < 10; ++a) e.push_back({a - 1, a});
        Network net(fixtures::ids(10), e, false);
        std::vector<double> gpax{2.0, 2.1, 2.2, 2.3, 3.0, 3.1, 3.2, 3.3, 3.4, 3.5};
        const auto r = run_test(net, gpax, MeanDiffStatistic{Role::CliqueMember, true}, roles, cfg, 1);
        CHECK(r.outcome == Outcome::AcceptedNull);
        CHECK_FALSE(r.p_value.has_value());
        CHECK(r.statistic < 0.0);
        CHECK(r.group_size == 4);
        CHECK(r.replicates == 0);
    }
    SUBCASE("2% isolators is not applicable") {
        // 50 nodes on a path except one isolated student
        std::vector<Edge> e;
        for (NodeIndex a = 1; a < 49; ++a) e.push_back({a - 1, a});
        Network net(fixtures::ids(50), e, false);
        std::vector<double> gpax(50, 3.0);
        gpax[49] = 1.0;
        const auto r = run_test(net, gpax, MeanDiffStatistic{Role::Isolator, false}, roles, cfg, 1);
        CHECK(r.outcome == Outcome::NotApplicable);
        CHECK_FALSE(r.p_value.has_value());
        CHECK(r.group_size == 1);
        TestConfig loose = cfg;
        loose.min_role_fraction = 0.01;
        loose.n_permutations = 2000;
        const auto r2 = run_test(net, gpax, MeanDiffStatistic{Role::Isolator, false}, roles, loose, 1);
        CHECK(r2.outcome == Outcome::Significant);
        CHECK(*r2.p_value == doctest::Approx(1.0 / 50.0).epsilon(0.5));
    }
    SUBCASE("constant degrees give an undefined correlation") {
        const auto r = run_test(fixtures::edgeless(6, true), std::vector<double>{1, 2, 3, 4, 3, 2},
                                CorrelationStatistic{DegreeMode::In}, roles, cfg, 1);
        CHECK(r.outcome == Outcome::Undefined);
        CHECK_FALSE(r.p_value.has_value());
    }
    SUBCASE("missing attributes are a data-integrity error") {
        try {
            run_test(fixtures::path(4), std::vector<double>{1, 2, 3}, CorrelationStatistic{}, roles, cfg, 1);
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DataIntegrity);
        }
        const auto net = fixtures::path(3);
        try {
            align_attributes(net, {{"n0", 1.0}, {"n1", 2.0}});
            FAIL("expected throw");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DataIntegrity);
        }
        CHECK(align_attributes(net, {{"n0", 1.0}, {"n1", 2.0}, {"n2", 3.0}}) == std::vector<double>{1, 2, 3});
    }
    SUBCASE("config validation") {
        TestConfig bad;
        bad.n_permutations = 0;
        CHECK_THROWS_AS(bad.validate(), Error);
        bad = TestConfig{};
        bad.alpha = 1.0;
        CHECK_THROWS_AS(bad.validate(), Error);
        bad = TestConfig{};
        bad.min_role_fraction = 1.0;
        CHECK_THROWS_AS(bad.validate(), Error);
    }
}

TEST_CASE("monte carlo p agrees with exhaustive enumeration") {
    const auto net = fixtures::seven_node_fixture();
    const auto gpax = fixtures::seven_node_gpax();
    TestConfig cfg;
    RoleParams roles;

    const auto deg = degrees(net);
    const std::vector<double> x(deg.begin(), deg.end());
    const double exact_corr = fixtures::exact_permutation_pvalue(
        gpax, [&](const std::vector<double>& a) { return fixtures::oracle_pearson(x, a); });
    const auto rc = run_test(net, gpax, CorrelationStatistic{}, roles, cfg, 7);
    CHECK(std::abs(*rc.p_value - exact_corr) < 0.02);

    std::vector<char> clique(7, 0);
    for (const char* id : {"A", "B", "C", "D"}) clique[net.index_of(id)] = 1;
    const double exact_md = fixtures::exact_permutation_pvalue(
        gpax, [&](const std::vector<double>& a) { return fixtures::oracle_mean_diff(a, clique); });
    // the observed split is the second-best of C(7,4) = 35
    CHECK(exact_md == doctest::Approx(2.0 / 35.0));
    const auto rm = run_test(net, gpax, MeanDiffStatistic{Role::CliqueMember, true}, roles, cfg, 7);
    REQUIRE(rm.p_value.has_value());
    CHECK(std::abs(*rm.p_value - exact_md) < 0.02);
}

TEST_CASE("results do not depend on worker count") {
    Rng rng(6);
    const auto net = fixtures::random_network(rng, 40, 0.15);
    std::vector<double> gpax(40);
    for (auto& g : gpax) g = std::round((2.5 + 0.4 * rng.normal()) * 100.0) / 100.0;
    TestConfig one;
    one.n_permutations = 3000;
    TestConfig many = one;
    many.workers = 4;
    RoleParams roles;
    roles.member_clique_size = 3;
    for (const Statistic& s : {Statistic{CorrelationStatistic{}}, Statistic{MeanDiffStatistic{Role::CliqueMember, true}},
                               Statistic{MeanDiffStatistic{Role::Liaison, true}}}) {
        const auto a = run_test(net, gpax, s, roles, one, 99);
        const auto b = run_test(net, gpax, s, roles, many, 99);
        CHECK(a.outcome == b.outcome);
        CHECK(a.p_value == b.p_value);
    }
    TestConfig rewire = one;
    rewire.backend.backend = Backend::EdgeRewiring;
    rewire.n_permutations = 200;
    TestConfig rewire_many = rewire;
    rewire_many.workers = 3;
    const Statistic md = MeanDiffStatistic{Role::CliqueMember, true};
    CHECK(run_test(net, gpax, md, roles, rewire, 5).p_value == run_test(net, gpax, md, roles, rewire_many, 5).p_value);
}

TEST_CASE("rewiring null is degenerate for degree correlations") {
    Rng rng(12);
    const auto net = fixtures::random_network(rng, 30, 0.2);
    std::vector<double> gpax(30);
    for (auto& g : gpax) g = 2.0 + rng.uniform();
    TestConfig cfg;
    cfg.backend.backend = Backend::EdgeRewiring;
    cfg.n_permutations = 100;
    const auto r = run_test(net, gpax, CorrelationStatistic{}, RoleParams{}, cfg, 3);
    CHECK(*r.p_value == 1.0);
}

TEST_CASE("run_battery") {
    const auto friends = fixtures::eleven_students();
    const auto helpers = Network(friends.nodes(), {}, true);
    std::vector<double> gpax{3.0, 3.1, 2.9, 3.2, 2.5, 3.9, 2.0, 2.4, 2.6, 2.8, 1.9};
    TestConfig cfg;
    cfg.n_permutations = 500;
    const auto results = run_battery(friends, helpers, gpax, RoleParams{}, cfg);
    REQUIRE(results.size() == 9);
    for (int i = 0; i < 9; ++i) CHECK(results[i].hypothesis_id == i + 1);
    CHECK(results[1].outcome == Outcome::Undefined);
    CHECK(results[2].outcome == Outcome::Undefined);
    // everyone is isolated in the helper network
    CHECK(results[8].outcome == Outcome::NotApplicable);
    CHECK(results[0].p_value.has_value());

    CHECK_THROWS_AS(run_battery(friends, fixtures::edgeless(3, true), gpax, RoleParams{}, cfg), Error);
    CHECK_THROWS_AS(run_battery(friends, friends, gpax, RoleParams{}, cfg), Error);
}
