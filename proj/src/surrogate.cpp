#include "adpbound/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adpbound {

SurrogateObjective::SurrogateObjective(MdpModel model, EvtgApproximator w)
    : model_(std::move(model)), w_(std::move(w)) {
    if (w_.horizon() != model_.horizon()) throw std::invalid_argument("approximator horizon differs from the model");
}

double SurrogateObjective::evaluate_path(std::span<const State> states, std::span<const Action> actions) const {
    const std::size_t k = states.size();
    if (actions.size() != k) throw std::invalid_argument("state and action strings differ in length");
    if (k == 0 || k > model_.horizon()) throw std::invalid_argument("surrogate needs 1 <= k <= K");
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += model_.reward(states[i], actions[i]);
    return sum + w_(k - 1, states[k - 1], actions[k - 1]);
}

double surrogate_eval(const SurrogateObjective& s, std::span<const State> states,
                      std::span<const Action> actions) {
    return s.evaluate_path(states, actions);
}

// ---------------------------------------------------------------------------

PolicyGroundSet::PolicyGroundSet(const MdpModel& model, std::uint64_t budget)
    : num_actions_(model.num_actions()), policies_(enumerate_markov_policies(model, budget)) {}

ActionId PolicyGroundSet::index_of(const MarkovPolicy& policy) const {
    std::uint64_t idx = 0;
    for (Action a : policy.table) idx = idx * num_actions_ + a;
    if (idx >= policies_.size() || !(policies_[idx] == policy))
        throw std::invalid_argument("policy is not in the ground set");
    return static_cast<ActionId>(idx);
}

PolicyString PolicyGroundSet::decode(std::span<const ActionId> indices) const {
    PolicyString out;
    out.reserve(indices.size());
    for (ActionId i : indices) out.push_back(policies_.at(i));
    return out;
}

// ---------------------------------------------------------------------------

PolicyStringObjective::PolicyStringObjective(SurrogateObjective surrogate, std::uint64_t budget)
    : surrogate_(std::move(surrogate)), ground_(surrogate_.model(), budget), budget_(budget) {}

double PolicyStringObjective::evaluate(std::span<const MarkovPolicy> policies) const {
    const auto& model = surrogate_.model();
    validate_policy(model, policies);
    const std::size_t k = policies.size();
    if (k == 0) return 0.0;

    std::vector<State> states(k);
    std::vector<Action> actions(k);
    double total = 0.0;
    for (const auto& path : enumerate_noise_paths(model, k - 1, budget_)) {
        State x = model.initial_state();
        for (std::size_t i = 0; i < k; ++i) {
            states[i] = x;
            actions[i] = policies[i](x);
            if (i + 1 < k) x = model.next(x, actions[i], path.symbols[i]);
        }
        total += path.probability * surrogate_.evaluate_path(states, actions);
    }
    return total;
}

double PolicyStringObjective::evaluate_indices(std::span<const ActionId> indices) const {
    return evaluate(ground_.decode(indices));
}

StringObjective PolicyStringObjective::as_string_objective() const {
    return StringObjective([self = *this](std::span<const ActionId> s) { return self.evaluate_indices(s); },
                           ground_.size(), surrogate_.model().horizon());
}

double g_avg_eval(const PolicyStringObjective& obj, std::span<const MarkovPolicy> policies) {
    return obj.evaluate(policies);
}

// ---------------------------------------------------------------------------
// PDAO and GPS

namespace {

struct PdaoBuilder {
    const SurrogateObjective& s;
    PdaoPolicy& out;
    std::vector<std::uint32_t> history;
    std::vector<State> states;
    std::vector<Action> actions;
    double probability = 1.0;

    void expand(std::size_t k) {
        const auto& model = s.model();
        const std::size_t K = model.horizon();
        const State x = states.back();

        std::vector<double> scores(model.num_actions());
        actions.push_back(0);
        for (Action a = 0; a < model.num_actions(); ++a) {
            actions.back() = a;
            scores[a] = s.evaluate_path(states, actions);
        }
        const auto chosen = static_cast<Action>(argmax_min_index(scores));
        actions.back() = chosen;
        out.decisions[k][history] = chosen;

        if (k + 1 == K) {
            AdpPathRecord rec{NoisePath{history, probability}, states, actions, 0.0};
            for (std::size_t i = 0; i < K; ++i) rec.reward += model.reward(states[i], actions[i]);
            out.expected_value += probability * rec.reward;
            out.paths.push_back(std::move(rec));
        } else {
            for (std::uint32_t sym = 0; sym < model.noise_size(); ++sym) {
                const double saved = probability;
                history.push_back(sym);
                states.push_back(model.next(x, chosen, sym));
                probability *= model.noise_prob(sym);
                expand(k + 1);
                probability = saved;
                states.pop_back();
                history.pop_back();
            }
        }
        actions.pop_back();
    }
};

}  // namespace

PdaoPolicy pdao_construct(const SurrogateObjective& s, std::uint64_t budget) {
    const auto& model = s.model();
    const std::size_t K = model.horizon();
    std::uint64_t nodes = 0;
    for (std::size_t k = 0; k < K; ++k) nodes = saturating_add(nodes, saturating_pow(model.noise_size(), k));
    require_budget("PDAO tree", nodes, budget);

    PdaoPolicy out;
    out.decisions.resize(K);
    PdaoBuilder builder{s, out, {}, {model.initial_state()}, {}, 1.0};
    builder.expand(0);
    return out;
}

PolicyString gps_construct(const PolicyStringObjective& obj) {
    const auto trace = greedy_string(obj.as_string_objective(), obj.surrogate().model().horizon());
    return obj.ground_set().decode(trace.string);
}

PdaoGpsCheck check_pdao_is_gps(const SurrogateObjective& s, std::uint64_t budget) {
    const auto& model = s.model();
    const std::size_t K = model.horizon();
    const auto pdao = pdao_construct(s, budget);
    const PolicyStringObjective obj(s, budget);
    const auto& ground = obj.ground_set();

    PdaoGpsCheck out;
    out.induced.assign(K, MarkovPolicy{std::vector<Action>(model.num_states(), 0)});
    PolicyString candidate;
    for (std::size_t k = 0; k < K; ++k) {
        std::vector<bool> seen(model.num_states(), false);
        for (const auto& rec : pdao.paths) {
            const State x = rec.states[k];
            const Action a = rec.actions[k];
            if (seen[x] && out.induced[k].table[x] != a) {
                out.verified = false;
                out.first_failure = k;
                out.message = "PDAO picks different actions for the same realized state at stage " +
                              std::to_string(k);
                return out;
            }
            seen[x] = true;
            out.induced[k].table[x] = a;
        }

        candidate.assign(out.induced.begin(), out.induced.begin() + static_cast<std::ptrdiff_t>(k) + 1);
        const double achieved = obj.evaluate(candidate);
        double best = -std::numeric_limits<double>::infinity();
        for (ActionId i = 0; i < ground.size(); ++i) {
            candidate.back() = ground[i];
            best = std::max(best, obj.evaluate(candidate));
        }
        const double gap = best - achieved;
        out.gaps.push_back(gap);
        if (gap > kTolerance && out.verified) {
            out.verified = false;
            out.first_failure = k;
            out.message = "PDAO-induced policy misses the GPS maximum at stage " + std::to_string(k);
        }
    }
    return out;
}

AdpPdaoCheck check_adp_is_pdao(const MdpModel& model, const EvtgApproximator& w, std::uint64_t budget) {
    const auto run = adp_forward(model, w, budget);
    const auto pdao = pdao_construct(SurrogateObjective(model, w), budget);
    AdpPdaoCheck out;
    if (run.paths.size() != pdao.paths.size()) {
        out.equal = false;
        return out;
    }
    for (std::size_t i = 0; i < run.paths.size(); ++i) {
        const auto& lhs = run.paths[i];
        const auto& rhs = pdao.paths[i];
        if (lhs.noise.symbols != rhs.noise.symbols || lhs.actions != rhs.actions || lhs.states != rhs.states) {
            out.equal = false;
            out.mismatch = lhs.noise;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monotonicity condition

MonotonicityCheck check_monotonicity_condition(const MdpModel& model, const EvtgApproximator& w,
                                               std::uint64_t budget) {
    const std::size_t K = model.horizon();
    const auto ground = enumerate_markov_policies(model, budget);
    const std::size_t G = ground.size();
    const auto paths = enumerate_noise_paths(model, K - 1, budget);
    require_budget("monotonicity condition", saturating_mul(saturating_pow(G, K), paths.size()), budget);

    MonotonicityCheck out;
    out.worst_slack = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> idx(K, 0);
    std::vector<double> exp_reward(K);
    std::vector<double> exp_w(K + 1);  // exp_w[m] = E[W after stage m-1]; exp_w[0] = 0
    const std::uint64_t count = saturating_pow(G, K);
    for (std::uint64_t c = 0; c < count; ++c) {
        std::fill(exp_reward.begin(), exp_reward.end(), 0.0);
        std::fill(exp_w.begin(), exp_w.end(), 0.0);
        for (const auto& path : paths) {
            State x = model.initial_state();
            for (std::size_t i = 0; i < K; ++i) {
                const Action a = ground[idx[i]](x);
                exp_reward[i] += path.probability * model.reward(x, a);
                exp_w[i + 1] += path.probability * w(i, x, a);
                if (i + 1 < K) x = model.next(x, a, path.symbols[i]);
            }
        }
        for (std::size_t n = 1; n <= K; ++n) {
            for (std::size_t m = 0; m < n; ++m) {
                double collected = 0.0;
                for (std::size_t i = m; i < n; ++i) collected += exp_reward[i];
                const double slack = collected - (exp_w[m] - exp_w[n]);
                if (slack < out.worst_slack) {
                    out.worst_slack = slack;
                    if (slack < -kTolerance && out.holds) {
                        out.holds = false;
                        out.witness_m = m;
                        out.witness_n = n;
                        for (std::size_t i = 0; i < n; ++i) out.witness_policies.push_back(ground[idx[i]]);
                    }
                }
            }
        }
        for (std::size_t pos = K; pos-- > 0;) {
            if (++idx[pos] < G) break;
            idx[pos] = 0;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bound report

namespace {

void add_flag(std::vector<std::string>& flags, const std::string& flag) {
    if (std::find(flags.begin(), flags.end(), flag) == flags.end()) flags.push_back(flag);
}

}  // namespace

AdpBoundReport adp_bound_report(const MdpModel& model, const EvtgApproximator& w, std::uint64_t budget) {
    const std::size_t K = model.horizon();
    AdpBoundReport rep;

    rep.optimal_policy_value = bellman_solve(model).optimal_value(model);
    rep.adp_value = adp_forward(model, w, budget).expected_value;
    rep.prop1_verified = check_adp_is_pdao(model, w, budget).equal;
    if (!rep.prop1_verified) add_flag(rep.flags, "adp_pdao_failed");

    if (rep.optimal_policy_value <= kTolerance) {
        rep.ratio = 1.0;
        add_flag(rep.flags, "zero_optimum");
    } else {
        rep.ratio = rep.adp_value / rep.optimal_policy_value;
    }

    const std::uint64_t ground_size = saturating_pow(model.num_actions(), model.num_states());
    const std::uint64_t leaves = saturating_mul(StringTable::string_count(ground_size, K),
                                                saturating_pow(model.noise_size(), K - 1));
    if (ground_size > budget || leaves > budget) {
        add_flag(rep.flags, "bound_not_computed");
        return rep;
    }

    const SurrogateObjective surrogate(model, w);
    const PolicyStringObjective obj(surrogate, budget);
    const auto f = obj.as_string_objective();
    const auto table = StringTable::build(f, K, budget);

    const auto t2 = check_pdao_is_gps(surrogate, budget);
    rep.theorem2_verified = t2.verified;
    if (!t2.verified) add_flag(rep.flags, "pdao_gps_failed");

    std::vector<ActionId> induced;
    for (const auto& p : t2.induced) induced.push_back(obj.ground_set().index_of(p));
    auto trace = t2.verified ? trace_for_string(f, induced) : std::nullopt;
    if (!trace) {
        add_flag(rep.flags, "greedy_trace_fallback");
        trace = greedy_string(f, K);
    }

    rep.curvature = analyze_greedy(table, *trace);
    rep.bound_computed = true;
    for (const auto& flag : rep.curvature.flags) add_flag(rep.flags, flag);

    rep.bruteforce_optimal_value = rep.curvature.optimal_value;
    if (std::abs(rep.bruteforce_optimal_value - rep.optimal_policy_value) > kTolerance)
        add_flag(rep.flags, "optimum_mismatch");
    if (std::abs(rep.curvature.greedy_value - rep.adp_value) > kTolerance)
        add_flag(rep.flags, "adp_value_mismatch");

    const auto mono = check_monotonicity_condition(model, w, budget);
    rep.monotone_certificate = mono.holds;
    rep.worst_slack = mono.worst_slack;
    if (mono.holds != rep.curvature.prefix_monotone) add_flag(rep.flags, "certificate_mismatch");
    if (!mono.holds) add_flag(rep.flags, "bound_not_certified");

    rep.bound_holds = !rep.monotone_certificate || rep.ratio >= rep.curvature.bound_finite_K - kTolerance;
    return rep;
}

}  // namespace adpbound
