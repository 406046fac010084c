#pragma once

// Approximations of the expected value-to-go and the forward ADP scheme that
// acts greedily on reward plus approximation at every realized state.

#include "adpbound/mdp.hpp"

#include <functional>
#include <string>
#include <string_view>

namespace adpbound {

enum class EvtgKind { myopic, rollout, linear_q, exact_evtg, custom };

std::string_view to_string(EvtgKind kind);

/// Tabulated W: value(stage, x, a) approximates the expected reward collected
/// after acting `a` at `x` in `stage`. The last stage is always zero.
class EvtgApproximator {
public:
    using Function = std::function<double(std::size_t stage, State x, Action a)>;

    /// Tabulates `fn` over every (stage, x, a); the last stage is forced to zero.
    EvtgApproximator(const MdpModel& model, EvtgKind kind, const Function& fn);

    double operator()(std::size_t stage, State x, Action a) const {
        return table_[(stage * num_states_ + x) * num_actions_ + a];
    }

    EvtgKind kind() const noexcept { return kind_; }
    std::size_t horizon() const noexcept { return horizon_; }

    /// Same approximator with `shift(stage, x)` added to every action's value
    /// before the last stage.
    EvtgApproximator shifted(const std::function<double(std::size_t, State)>& shift) const;

private:
    EvtgKind kind_ = EvtgKind::custom;
    std::size_t horizon_ = 0;
    std::size_t num_states_ = 0;
    std::size_t num_actions_ = 0;
    std::vector<double> table_;
};

struct RolloutConfig {
    PolicyString base_policy;  // length K
};

struct LinearQConfig {
    std::vector<std::vector<double>> theta;  // [action][dim]
    std::vector<std::vector<double>> phi;    // [state][dim]
};

EvtgApproximator myopic_w(const MdpModel& model);

/// Exact value of stages k+1.. under the base policy after acting at stage k.
EvtgApproximator rollout_w(const MdpModel& model, const RolloutConfig& config,
                           std::uint64_t budget = kDefaultBudget);

/// theta(a).phi(x) - r(x,a) before the last stage, so r + W is the linear Q.
EvtgApproximator linear_q_w(const MdpModel& model, const LinearQConfig& config);

/// Linear-Q with features taken from the model file.
EvtgApproximator linear_q_w(const MdpModel& model, const std::vector<std::vector<double>>& theta);

/// True expected value-to-go of the Bellman-optimal tail.
EvtgApproximator exact_evtg_w(const MdpModel& model);

struct AdpPathRecord {
    NoisePath noise;
    std::vector<State> states;
    std::vector<Action> actions;
    double reward = 0.0;
};

struct AdpRun {
    std::vector<AdpPathRecord> paths;
    double expected_value = 0.0;
};

/// Action chosen by the ADP rule at (stage, x): min-index argmax of r + W.
Action adp_action(const MdpModel& model, const EvtgApproximator& w, std::size_t stage, State x);

/// Rolls the ADP rule forward along every noise path.
AdpRun adp_forward(const MdpModel& model, const EvtgApproximator& w,
                   std::uint64_t budget = kDefaultBudget);

/// The ADP rule as a Markov policy string (its choice depends only on stage and state).
PolicyString adp_policy(const MdpModel& model, const EvtgApproximator& w);

}  // namespace adpbound
