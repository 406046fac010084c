#include "adpbound/generators.hpp"
#include "adpbound/surrogate.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace adpbound;

namespace {

std::vector<MdpModel> desk_models(std::size_t count, std::uint64_t seed) {
    InstanceSizes sizes;
    sizes.horizon = 3;
    return generate_mdp_instances({InstanceKind::random_mdp, sizes, count, seed});
}

std::vector<EvtgApproximator> schemes(const MdpModel& m, std::uint64_t seed) {
    return {myopic_w(m), rollout_w(m, {random_policy_string(m, seed)}), linear_q_w(m, random_theta(m, seed + 1)),
            exact_evtg_w(m)};
}

PolicyString stages(std::initializer_list<std::vector<Action>> tables) {
    PolicyString p;
    for (const auto& t : tables) p.push_back({t});
    return p;
}

bool has_flag(const std::vector<std::string>& flags, const std::string& f) {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

}  // namespace

TEST_CASE("surrogate on the chain fixture") {
    const auto m = oracle::m_chain();
    const SurrogateObjective myo(m, myopic_w(m));
    CHECK(surrogate_eval(myo, std::vector<State>{0}, std::vector<Action>{0}) == 1);

    const SurrogateObjective roll(m, rollout_w(m, {constant_policy(m, 0, 2)}));
    CHECK(surrogate_eval(roll, std::vector<State>{0}, std::vector<Action>{1}) == 5);
    CHECK(surrogate_eval(roll, std::vector<State>{0, 1}, std::vector<Action>{1, 0}) == 5);
    CHECK_THROWS_AS(surrogate_eval(roll, std::vector<State>{0, 1}, std::vector<Action>{1}), std::invalid_argument);
}

TEST_CASE("expected surrogate on the chain fixture") {
    const auto m = oracle::m_chain();
    const PolicyStringObjective myo(SurrogateObjective(m, myopic_w(m)));
    CHECK(g_avg_eval(myo, PolicyString{}) == 0);
    CHECK(g_avg_eval(myo, constant_policy(m, 0, 2)) == 2);

    const PolicyStringObjective roll(SurrogateObjective(m, rollout_w(m, {constant_policy(m, 0, 2)})));
    CHECK(g_avg_eval(roll, stages({{1, 0}})) == 5);
    CHECK(myo.ground_set().size() == 4);
    CHECK(myo.ground_set().index_of({{1, 0}}) == 2);
}

TEST_CASE("PDAO and GPS on the fixtures") {
    const auto m = oracle::m_chain();
    const auto p = pdao_construct(SurrogateObjective(m, myopic_w(m)));
    REQUIRE(p.paths.size() == 1);
    CHECK(p.paths[0].actions == std::vector<Action>{0, 0});

    const auto r = pdao_construct(SurrogateObjective(m, rollout_w(m, {constant_policy(m, 0, 2)})));
    CHECK(r.paths[0].actions == std::vector<Action>{1, 0});

    const auto n = oracle::m_noise();
    const auto tree = pdao_construct(SurrogateObjective(n, myopic_w(n)));
    CHECK(tree.decisions[1].size() == 2);

    const PolicyStringObjective myo(SurrogateObjective(m, myopic_w(m)));
    CHECK(gps_construct(myo)[0](0) == 0);
    const PolicyStringObjective ex(SurrogateObjective(m, exact_evtg_w(m)));
    CHECK(g_avg_eval(ex, gps_construct(ex)) == 5);

    // GPS is greedy on the adapter
    const auto adapter = ex.as_string_objective();
    const auto g = greedy_string(adapter, m.horizon());
    CHECK(ex.ground_set().decode(g.string) == gps_construct(ex));
}

TEST_CASE("PDAO/GPS and ADP/PDAO checks on the fixtures") {
    for (const auto& m : {oracle::m_chain(), oracle::m_noise()}) {
        for (const auto& w : {myopic_w(m), rollout_w(m, {constant_policy(m, 0, 2)})}) {
            const auto t = check_pdao_is_gps(SurrogateObjective(m, w));
            CHECK(t.verified);
            for (double gap : t.gaps) CHECK(gap == 0);
            CHECK(check_adp_is_pdao(m, w).equal);
        }
    }
}

TEST_CASE("monotonicity condition") {
    const auto m = oracle::m_chain();
    CHECK(check_monotonicity_condition(m, myopic_w(m)).holds);

    // large W at the first stage, tiny rewards afterwards
    const MdpModel tiny(1, 1, 3, 0, {{0}, {1.0}}, {{{0}}}, {{0.001}});
    const EvtgApproximator big(tiny, EvtgKind::custom, [](std::size_t k, State, Action) { return k == 0 ? 10.0 : 0.0; });
    const auto c = check_monotonicity_condition(tiny, big);
    CHECK_FALSE(c.holds);
    CHECK(c.worst_slack < 0);
    REQUIRE(c.witness_m);
    REQUIRE(c.witness_n);
    CHECK(*c.witness_m < *c.witness_n);
}

TEST_CASE("bound report on the chain fixture") {
    const auto m = oracle::m_chain();
    const auto r = adp_bound_report(m, myopic_w(m));
    CHECK(r.bound_computed);
    CHECK(r.adp_value == 2);
    CHECK(r.optimal_policy_value == 5);
    CHECK(r.ratio == 0.4);
    CHECK(r.monotone_certificate);
    CHECK(r.curvature.bound_finite_K <= 0.4 + 1e-12);
    CHECK(r.theorem2_verified);
    CHECK(r.prop1_verified);
    CHECK(r.bound_holds);

    const auto e = adp_bound_report(m, exact_evtg_w(m));
    CHECK(e.ratio == 1);
    CHECK(e.ratio >= e.curvature.bound_finite_K - 1e-12);

    const MdpModel zero(2, 2, 2, 0, {{0}, {1.0}}, {{{0}, {1}}, {{1}, {0}}}, {{0, 0}, {0, 0}});
    const auto z = adp_bound_report(zero, myopic_w(zero));
    CHECK(z.ratio == 1);
    CHECK(has_flag(z.flags, "zero_optimum"));

    const auto skipped = adp_bound_report(m, myopic_w(m), 10);
    CHECK_FALSE(skipped.bound_computed);
    CHECK(has_flag(skipped.flags, "bound_not_computed"));
    CHECK(skipped.adp_value == 2);
}

TEST_CASE("surrogate identities on random models") {
    std::uint64_t seed = 100;
    for (const auto& m : desk_models(12, 17)) {
        const double opt = oracle::optimal_value(m);
        for (const auto& w : schemes(m, seed++)) {
            const PolicyStringObjective obj(SurrogateObjective(m, w));
            // expected surrogate against the recursive oracle, all lengths
            for (std::size_t len = 0; len <= m.horizon(); ++len) {
                const auto p = random_policy_string(m, seed + len);
                const PolicyString prefix(p.begin(), p.begin() + len);
                CHECK(obj.evaluate(prefix) == doctest::Approx(oracle::surrogate_avg(m, w, prefix)).epsilon(1e-12));
            }
            // terminal identity and optimum coincidence
            double best = -1;
            oracle::for_each_policy_string(m, m.horizon(), [&](const PolicyString& p) {
                const double g = obj.evaluate(p);
                CHECK(g == doctest::Approx(oracle::evaluate(m, p)).epsilon(1e-12));
                best = std::max(best, g);
            });
            CHECK(best == doctest::Approx(opt).epsilon(1e-12));

            CHECK(check_pdao_is_gps(SurrogateObjective(m, w)).verified);
            CHECK(check_adp_is_pdao(m, w).equal);

            // certificate equivalence with prefix-monotonicity of the adapter
            const auto cert = check_monotonicity_condition(m, w);
            CHECK(cert.holds == check_prefix_monotone(obj.as_string_objective(), m.horizon()).holds);
            if (w.kind() == EvtgKind::myopic) CHECK(cert.holds);

            const auto rep = adp_bound_report(m, w);
            CHECK(rep.bruteforce_optimal_value == doctest::Approx(opt).epsilon(1e-12));
            CHECK(rep.monotone_certificate == cert.holds);
            if (rep.monotone_certificate) {
                CHECK(rep.ratio >= rep.curvature.bound_finite_K - 1e-12);
                if (rep.curvature.eta > 0)
                    CHECK(rep.curvature.bound_finite_K > rep.curvature.bound_asymptotic - 1e-12);
            }
        }
    }
}
