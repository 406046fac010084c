#include "adpbound/generators.hpp"
#include "adpbound/mdp.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace adpbound;

namespace {

PolicyString stages(std::initializer_list<std::vector<Action>> tables) {
    PolicyString p;
    for (const auto& t : tables) p.push_back({t});
    return p;
}

std::vector<MdpModel> desk_models(std::size_t count, std::uint64_t seed, std::size_t noise = 2) {
    InstanceSizes sizes;
    sizes.states = 3;
    sizes.actions = 2;
    sizes.noise = noise;
    sizes.horizon = 3;
    return generate_mdp_instances({InstanceKind::random_mdp, sizes, count, seed});
}

}  // namespace

TEST_CASE("noise path enumeration") {
    const MdpModel half(1, 1, 3, 0, {{0, 1}, {0.5, 0.5}}, {{{0, 0}}}, {{1}});
    const auto p = enumerate_noise_paths(half, 2);
    REQUIRE(p.size() == 4);
    for (const auto& x : p) CHECK(x.probability == 0.25);
    CHECK(p[1].symbols == std::vector<std::uint32_t>{0, 1});

    const auto det = enumerate_noise_paths(oracle::m_chain(), 3);
    REQUIRE(det.size() == 1);
    CHECK(det[0].probability == 1);

    const MdpModel skew(1, 1, 2, 0, {{0, 1}, {0.3, 0.7}}, {{{0, 0}}}, {{1}});
    const auto s = enumerate_noise_paths(skew, 1);
    CHECK(s[0].probability == 0.3);
    CHECK(s[1].probability == 0.7);

    CHECK_THROWS_AS(enumerate_noise_paths(half, 30, 1000), BudgetExceeded);
}

TEST_CASE("policy evaluation on the chain fixture") {
    const auto m = oracle::m_chain();
    CHECK(evaluate_policy_exact(m, stages({{1, 1}, {0, 1}})) == 5);
    CHECK(evaluate_policy_exact(m, stages({{0, 0}, {0, 0}})) == 2);
    CHECK(evaluate_policy_exact(m, PolicyString{}) == 0);
}

TEST_CASE("bellman on the chain fixture") {
    const auto m = oracle::m_chain();
    const auto sol = bellman_solve(m);
    CHECK(sol.optimal_value(m) == 5);
    CHECK(sol.policy[0](0) == 1);
    CHECK(oracle::optimal_value(m) == 5);

    const MdpModel zero(2, 2, 2, 0, {{0}, {1.0}}, {{{0}, {1}}, {{1}, {0}}}, {{0, 0}, {0, 0}});
    const auto z = bellman_solve(zero);
    for (const auto& stage : z.policy) CHECK(stage.table == std::vector<Action>{0, 0});
    for (const auto& row : z.tables.value)
        for (double v : row) CHECK(v == 0);

    const auto k1 = bellman_solve(m.with_horizon(1));
    CHECK(k1.tables.value[0] == std::vector<double>{1, 5});
    CHECK(k1.policy[0].table == std::vector<Action>{0, 0});
}

TEST_CASE("exact EVTG") {
    const auto m = oracle::m_chain();
    const auto stay = constant_policy(m, 0, 1);
    const auto go = constant_policy(m, 1, 1);
    CHECK(exact_evtg(m, go, 0, 0, 1) == 5);
    CHECK(exact_evtg(m, stay, 0, 0, 1) == 5);
    CHECK(exact_evtg(m, stay, 0, 0, 0) == 1);
    CHECK(exact_evtg(m, PolicyString{}, 1, 0, 0) == 0);
}

TEST_CASE("Monte Carlo estimates") {
    const auto m = oracle::m_chain();
    const auto stay = constant_policy(m, 0, 2);
    for (std::uint64_t seed : {0u, 1u, 99u}) {
        const auto e = simulate_policy_mc(m, stay, 50, seed);
        CHECK(e.mean == 2);
        CHECK(e.std_error == 0);
    }

    const auto n = oracle::m_noise();
    const auto go_stay = stages({{1, 1}, {0, 0}});
    CHECK(evaluate_policy_exact(n, go_stay) == 3.0);
    const auto e = simulate_policy_mc(n, go_stay, 100000, 5);
    CHECK(std::abs(e.mean - 3.0) <= 3 * e.std_error);
    CHECK(e.samples == 100000);
    const auto again = simulate_policy_mc(n, go_stay, 100000, 5);
    CHECK(again.mean == e.mean);
    CHECK(again.std_error == e.std_error);

    const auto one = simulate_policy_mc(n, go_stay, 1, 8);
    CHECK((one.mean == 5.0 || one.mean == 1.0));
}

TEST_CASE("model validation") {
    CHECK_THROWS_AS(MdpModel(2, 1, 1, 0, {{0}, {0.9}}, {{{0}}, {{1}}}, {{1}, {1}}), ModelError);
    CHECK_THROWS_AS(MdpModel(2, 1, 1, 0, {{0}, {1.0}}, {{{0}}, {{2}}}, {{1}, {1}}), ModelError);
    CHECK_THROWS_AS(MdpModel(2, 1, 1, 0, {{0}, {1.0}}, {{{0}}, {{1}}}, {{1}, {-1}}), ModelError);
    CHECK_THROWS_AS(MdpModel(2, 1, 1, 3, {{0}, {1.0}}, {{{0}}, {{1}}}, {{1}, {1}}), ModelError);
    CHECK_THROWS_AS(MdpModel(2, 1, 1, 0, {{0, 1}, {1.0, 0.0}}, {{{0, 0}}, {{1, 1}}}, {{1}, {1}}), ModelError);
    CHECK_THROWS_AS(MdpModel(2, 2, 1, 0, {{0}, {1.0}}, {{{0}}, {{1}}}, {{1}, {1}}), ModelError);
    CHECK_THROWS_AS(validate_policy(oracle::m_chain(), stages({{0, 2}})), std::invalid_argument);
}

TEST_CASE("bellman agrees with exhaustive policy enumeration") {
    for (const auto& m : desk_models(30, 21)) {
        const auto sol = bellman_solve(m);
        CHECK(sol.optimal_value(m) == doctest::Approx(oracle::optimal_value(m)).epsilon(1e-12));
        CHECK(evaluate_policy_exact(m, sol.policy) == doctest::Approx(sol.optimal_value(m)).epsilon(1e-12));

        // Bellman consistency on every (k, x)
        for (std::size_t k = 0; k < m.horizon(); ++k) {
            for (State x = 0; x < m.num_states(); ++x) {
                double best = 0;
                for (Action a = 0; a < m.num_actions(); ++a) {
                    double q = m.reward(x, a);
                    for (std::size_t s = 0; s < m.noise_size(); ++s)
                        q += m.noise_prob(s) * sol.tables.value[k + 1][m.next(x, a, s)];
                    best = std::max(best, q);
                }
                CHECK(sol.tables.value[k][x] == doctest::Approx(best).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("evaluation agrees with the distribution oracle and scales linearly") {
    for (const auto& m : desk_models(20, 4)) {
        for (std::uint64_t s = 0; s < 4; ++s) {
            const auto p = random_policy_string(m, s);
            const double v = evaluate_policy_exact(m, p);
            CHECK(v == doctest::Approx(oracle::evaluate(m, p)).epsilon(1e-12));
            CHECK(evaluate_policy_exact(m.scaled_rewards(3.0), p) == doctest::Approx(3.0 * v).epsilon(1e-14));
            for (std::size_t k = 0; k < m.horizon(); ++k)
                for (State x = 0; x < m.num_states(); ++x)
                    for (Action a = 0; a < m.num_actions(); ++a) {
                        const PolicyString tail(p.begin() + k + 1, p.end());
                        CHECK(exact_evtg(m, tail, k, x, a) == doctest::Approx(oracle::evtg(m, p, k, x, a)).epsilon(1e-12));
                    }
        }
    }
}

TEST_CASE("Monte Carlo is exact on deterministic models") {
    for (const auto& m : desk_models(10, 8, 1)) {
        const auto p = random_policy_string(m, 1);
        const auto e = simulate_policy_mc(m, p, 20, 77);
        CHECK(e.mean == evaluate_policy_exact(m, p));
    }
}

TEST_CASE("markov policy enumeration order") {
    const auto all = enumerate_markov_policies(oracle::m_chain());
    REQUIRE(all.size() == 4);
    CHECK(all[1].table == std::vector<Action>{0, 1});
    CHECK(all[2].table == std::vector<Action>{1, 0});
    CHECK(all == oracle::stage_policies(oracle::m_chain()));
}
