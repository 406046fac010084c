#include "adpbound/generators.hpp"
#include "adpbound/strings.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace adpbound;

TEST_CASE("greedy picks the minimum index among ties") {
    auto t = greedy_string(oracle::f_len(), 2);
    CHECK(t.string == ActionString{0, 0});
    CHECK(t.prefix_values == std::vector<double>{1, 2});
    CHECK(t.tie_sets[0] == std::vector<ActionId>{0, 1});

    t = greedy_string(oracle::f_distinct(), 2);
    CHECK(t.string == ActionString{0, 1});
    CHECK(t.prefix_values == std::vector<double>{1, 2});
    CHECK(t.tie_sets[1] == std::vector<ActionId>{1});
}

TEST_CASE("brute-force optimum over length-K strings") {
    auto o = optimal_string_bruteforce(oracle::f_len(), 2);
    CHECK(o.string == ActionString{0, 0});
    CHECK(o.value == 2);
    o = optimal_string_bruteforce(oracle::f_distinct(), 2);
    CHECK(o.string == ActionString{0, 1});
    CHECK(o.value == 2);
}

TEST_CASE("property checks") {
    CHECK(check_prefix_monotone(oracle::f_len(3), 3).holds);
    CHECK(check_prefix_monotone(oracle::f_distinct(3), 3).holds);
    CHECK(check_diminishing_return(oracle::f_len(3), 3).holds);
    CHECK(check_diminishing_return(oracle::f_distinct(3), 3).holds);

    const auto sq = check_diminishing_return(oracle::f_square(), 3);
    CHECK_FALSE(sq.holds);
    REQUIRE(sq.witness);
    CHECK(sq.witness->slack < 0);

    // prefix-monotonicity failure carries a witness with f(extended) < f(prefix)
    StringObjective dip([](std::span<const ActionId> s) { return s.size() == 2 ? 0.5 : double(s.size()); }, 2, 3);
    const auto pm = check_prefix_monotone(dip, 3);
    CHECK_FALSE(pm.holds);
    REQUIRE(pm.witness);
    CHECK(pm.witness->slack < 0);
}

TEST_CASE("curvatures of the small fixtures") {
    const auto len = oracle::f_len();
    auto g = greedy_string(len, 2);
    CHECK(total_curvature_eta(len, g, 2).value == 0);
    CHECK(forward_curvature_sigma(len, g, 2).value == 0);

    const auto dist = oracle::f_distinct();
    g = greedy_string(dist, 2);
    const auto eta = total_curvature_eta(dist, g, 2);
    CHECK(eta.value == 2);
    CHECK(eta.argmax_string == ActionString{1, 0});
    CHECK(eta.argmax_stage == 1);
    CHECK(forward_curvature_sigma(dist, g, 2).value == 0);
}

TEST_CASE("bound closed forms") {
    CHECK(curvature_bound(1, 0, 2) == 0.75);
    CHECK(curvature_bound(0.5, 0, 2) == 0.875);
    CHECK(curvature_bound(0, 0.25, 7) == 0.75);
    CHECK(asymptotic_bound(0, 0) == 1);
    CHECK(asymptotic_bound(1, 0) == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-15));
    CHECK(asymptotic_bound(2, 0) == doctest::Approx((1 - std::exp(-2.0)) / 2).epsilon(1e-15));
    for (std::size_t K = 1; K <= 10; ++K) {
        CHECK(curvature_bound(1, 0, K) == 1 - std::pow(1 - 1.0 / K, K));
    }
    // nonincreasing in K and above the limit while eta(1-sigma) <= K
    for (double eta : {0.3, 1.0, 2.5}) {
        for (double sigma : {0.0, 0.4, 1.0}) {
            for (std::size_t K = 1; K < 30; ++K) {
                if (eta * (1 - sigma) > double(K)) continue;
                CHECK(curvature_bound(eta, sigma, K + 1) <= curvature_bound(eta, sigma, K) + 1e-15);
                CHECK(curvature_bound(eta, sigma, K) >= asymptotic_bound(eta, sigma) - 1e-15);
            }
        }
    }
}

TEST_CASE("bound is not monotone in K once eta(1-sigma) exceeds K") {
    // the base 1 - eta(1-sigma)/K turns negative and the power alternates in sign
    CHECK(curvature_bound(2.5, 0, 2) == doctest::Approx(0.375));
    CHECK(curvature_bound(2.5, 0, 3) > curvature_bound(2.5, 0, 2));
}

TEST_CASE("full report on the fixtures") {
    auto r = verify_greedy_bound(oracle::f_len(), 2);
    CHECK(r.ratio == 1);
    CHECK(r.bound_finite_K == 1);
    CHECK(r.bound_holds);

    r = verify_greedy_bound(oracle::f_distinct(), 2);
    CHECK(r.ratio == 1);
    CHECK(r.eta == 2);
    CHECK(r.sigma == 0);
    CHECK(r.bound_finite_K == 0.5);
    CHECK(r.prefix_monotone);
    CHECK(r.diminishing_return);
}

TEST_CASE("degenerate objectives are flagged") {
    StringObjective zero([](std::span<const ActionId>) { return 0.0; }, 2, 3);
    const auto r = verify_greedy_bound(zero, 3);
    CHECK(r.ratio == 1);
    CHECK(r.degenerate_zero_optimum);
    CHECK_FALSE(r.eta_defined);
    CHECK_FALSE(r.sigma_defined);
    auto has = [&](const char* f) { return std::find(r.flags.begin(), r.flags.end(), f) != r.flags.end(); };
    CHECK(has("zero_optimum"));
    CHECK(has("eta_undefined"));
    CHECK(has("sigma_undefined"));

    // K = 1 has no eta terms at all
    const auto k1 = verify_greedy_bound(oracle::f_len(1), 1);
    CHECK_FALSE(k1.eta_defined);
    CHECK(k1.bound_finite_K == 1);
}

TEST_CASE("bound-chain inequalities") {
    const auto d = bound_chain_inequalities(oracle::f_distinct(), 2);
    REQUIRE_FALSE(d.empty());
    CHECK(d.front().name == "first_step");
    CHECK(d.front().lhs == 1);
    CHECK(d.front().rhs == 1);
    CHECK(d.front().slack == 0);
    for (const auto& c : bound_chain_inequalities(oracle::f_len(3), 3)) CHECK(c.slack >= 0);
}

TEST_CASE("library matches the brute-force oracles on random instances") {
    for (auto kind : {InstanceKind::coverage_submodular, InstanceKind::random_monotone_marginals,
                      InstanceKind::random_string_fn}) {
        for (std::size_t K : {1u, 2u, 3u}) {
            InstanceSizes sizes;
            sizes.ground = 3;
            sizes.horizon = K;
            const auto fs = generate_string_instances({kind, sizes, 15, 11 + K});
            for (const auto& f : fs) {
                const auto g = greedy_string(f, K);
                CHECK(g.string == oracle::greedy(f, K));
                CHECK(optimal_string_bruteforce(f, K).value == oracle::optimum(f, K));
                CHECK(check_prefix_monotone(f, K).holds == oracle::prefix_monotone(f, K));
                CHECK(check_diminishing_return(f, K).holds == oracle::diminishing_return(f, K));

                const auto e = total_curvature_eta(f, g, K);
                const auto oe = oracle::eta(f, g.string, K);
                CHECK(e.defined == oe.defined);
                CHECK(e.value == doctest::Approx(oe.value).epsilon(1e-12));
                const auto s = forward_curvature_sigma(f, g, K);
                const auto os = oracle::sigma(f, g.string, K);
                CHECK(s.defined == os.defined);
                CHECK(s.value == doctest::Approx(os.value).epsilon(1e-12));

                const auto table = StringTable::build(f, K);
                const auto te = total_curvature_eta(table, g);
                CHECK(te.value == e.value);
                CHECK(te.skipped == e.skipped);

                const auto rep = verify_greedy_bound(f, K);
                CHECK(rep.bound_finite_K == doctest::Approx(oracle::bound(rep.eta, rep.sigma, K)).epsilon(1e-14));
                if (kind != InstanceKind::random_string_fn) {
                    CHECK(rep.prefix_monotone);
                    CHECK(rep.bound_holds);
                    CHECK(rep.ratio >= rep.bound_finite_K - 1e-12);
                    CHECK(rep.sigma >= -1e-12);
                    CHECK(rep.sigma <= 1 + 1e-12);
                }
                if (kind == InstanceKind::coverage_submodular) {
                    CHECK(rep.diminishing_return);
                    CHECK(rep.sigma <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("greedy and generators are deterministic") {
    InstanceSizes sizes;
    sizes.horizon = 3;
    const auto a = generate_string_instances({InstanceKind::random_monotone_marginals, sizes, 5, 3});
    const auto b = generate_string_instances({InstanceKind::random_monotone_marginals, sizes, 5, 3});
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(greedy_string(a[i], 3) == greedy_string(b[i], 3));
        oracle::for_each_string(3, 3, [&](const ActionString& s) { CHECK(a[i](s) == b[i](s)); });
    }
}

TEST_CASE("budget is enforced") {
    CHECK_THROWS_AS(StringTable::build(oracle::f_len(10), 10, 100), BudgetExceeded);
}
