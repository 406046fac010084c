#include "adpbound/adp.hpp"

namespace adpbound {

std::string_view to_string(EvtgKind kind) {
    switch (kind) {
        case EvtgKind::myopic: return "myopic";
        case EvtgKind::rollout: return "rollout";
        case EvtgKind::linear_q: return "linearq";
        case EvtgKind::exact_evtg: return "exact_evtg";
        case EvtgKind::custom: return "custom";
    }
    return "custom";
}

EvtgApproximator::EvtgApproximator(const MdpModel& model, EvtgKind kind, const Function& fn)
    : kind_(kind),
      horizon_(model.horizon()),
      num_states_(model.num_states()),
      num_actions_(model.num_actions()),
      table_(horizon_ * num_states_ * num_actions_, 0.0) {
    for (std::size_t k = 0; k + 1 < horizon_; ++k)
        for (State x = 0; x < num_states_; ++x)
            for (Action a = 0; a < num_actions_; ++a)
                table_[(k * num_states_ + x) * num_actions_ + a] = fn(k, x, a);
}

EvtgApproximator EvtgApproximator::shifted(const std::function<double(std::size_t, State)>& shift) const {
    EvtgApproximator out = *this;
    for (std::size_t k = 0; k + 1 < horizon_; ++k)
        for (State x = 0; x < num_states_; ++x)
            for (Action a = 0; a < num_actions_; ++a)
                out.table_[(k * num_states_ + x) * num_actions_ + a] += shift(k, x);
    return out;
}

EvtgApproximator myopic_w(const MdpModel& model) {
    return EvtgApproximator(model, EvtgKind::myopic, [](std::size_t, State, Action) { return 0.0; });
}

EvtgApproximator rollout_w(const MdpModel& model, const RolloutConfig& config, std::uint64_t budget) {
    if (config.base_policy.size() != model.horizon())
        throw std::invalid_argument("rollout base policy must have length K");
    validate_policy(model, config.base_policy);
    const std::span<const MarkovPolicy> base(config.base_policy);
    return EvtgApproximator(model, EvtgKind::rollout, [&](std::size_t k, State x, Action a) {
        return exact_evtg(model, base.subspan(k + 1), k, x, a, budget);
    });
}

EvtgApproximator linear_q_w(const MdpModel& model, const LinearQConfig& config) {
    if (config.theta.size() != model.num_actions())
        throw std::invalid_argument("theta needs one weight vector per action");
    if (config.phi.size() != model.num_states())
        throw std::invalid_argument("phi needs one feature vector per state");
    const std::size_t dim = config.theta.front().size();
    for (const auto& w : config.theta)
        if (w.size() != dim) throw std::invalid_argument("theta dimension mismatch");
    for (const auto& f : config.phi)
        if (f.size() != dim) throw std::invalid_argument("feature dimension mismatch");

    return EvtgApproximator(model, EvtgKind::linear_q, [&](std::size_t, State x, Action a) {
        double q = 0.0;
        for (std::size_t d = 0; d < dim; ++d) q += config.theta[a][d] * config.phi[x][d];
        return q - model.reward(x, a);
    });
}

EvtgApproximator linear_q_w(const MdpModel& model, const std::vector<std::vector<double>>& theta) {
    if (!model.features()) throw std::invalid_argument("linear-Q needs state features in the model");
    return linear_q_w(model, LinearQConfig{theta, *model.features()});
}

EvtgApproximator exact_evtg_w(const MdpModel& model) {
    const auto sol = bellman_solve(model);
    return EvtgApproximator(model, EvtgKind::exact_evtg, [&](std::size_t k, State x, Action a) {
        return sol.tables.evtg(model, k, x, a);
    });
}

Action adp_action(const MdpModel& model, const EvtgApproximator& w, std::size_t stage, State x) {
    std::vector<double> scores(model.num_actions());
    for (Action a = 0; a < model.num_actions(); ++a) scores[a] = model.reward(x, a) + w(stage, x, a);
    return static_cast<Action>(argmax_min_index(scores));
}

AdpRun adp_forward(const MdpModel& model, const EvtgApproximator& w, std::uint64_t budget) {
    const std::size_t K = model.horizon();
    if (w.horizon() != K) throw std::invalid_argument("approximator horizon differs from the model");

    AdpRun run;
    for (auto& path : enumerate_noise_paths(model, K - 1, budget)) {
        AdpPathRecord rec;
        State x = model.initial_state();
        for (std::size_t k = 0; k < K; ++k) {
            const Action a = adp_action(model, w, k, x);
            rec.states.push_back(x);
            rec.actions.push_back(a);
            rec.reward += model.reward(x, a);
            if (k + 1 < K) x = model.next(x, a, path.symbols[k]);
        }
        run.expected_value += path.probability * rec.reward;
        rec.noise = std::move(path);
        run.paths.push_back(std::move(rec));
    }
    return run;
}

PolicyString adp_policy(const MdpModel& model, const EvtgApproximator& w) {
    PolicyString out(model.horizon(), MarkovPolicy{std::vector<Action>(model.num_states(), 0)});
    for (std::size_t k = 0; k < model.horizon(); ++k)
        for (State x = 0; x < model.num_states(); ++x) out[k].table[x] = adp_action(model, w, k, x);
    return out;
}

}  // namespace adpbound
