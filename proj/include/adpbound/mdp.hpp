#pragma once

// Finite-horizon MDPs with additive nonnegative reward and i.i.d. discrete
// noise. Stages are 0-based throughout: a horizon-K problem acts at stages
// 0..K-1, and the transition out of stage k consumes noise draw k. Only K-1
// draws affect the return, so expectations enumerate noise paths of length K-1.

#include "adpbound/common.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace adpbound {

using State = std::uint32_t;
using Action = std::uint32_t;

struct NoiseDistribution {
    std::vector<int> support;   // symbol labels
    std::vector<double> probs;  // one per symbol, positive, summing to 1
};

/// Immutable finite MDP. The constructor validates every invariant and throws
/// ModelError on violation.
class MdpModel {
public:
    using TransitionTable = std::vector<std::vector<std::vector<int>>>;  // [x][a][noise] -> x'
    using RewardTable = std::vector<std::vector<double>>;                // [x][a]
    using FeatureTable = std::vector<std::vector<double>>;               // [x][dim]

    MdpModel(std::size_t num_states, std::size_t num_actions, std::size_t horizon,
             State initial_state, NoiseDistribution noise, const TransitionTable& transition,
             const RewardTable& reward, std::optional<FeatureTable> features = std::nullopt,
             std::vector<std::string> state_labels = {}, std::vector<std::string> action_labels = {});

    std::size_t num_states() const noexcept { return num_states_; }
    std::size_t num_actions() const noexcept { return num_actions_; }
    std::size_t horizon() const noexcept { return horizon_; }
    State initial_state() const noexcept { return initial_state_; }
    std::size_t noise_size() const noexcept { return noise_.probs.size(); }
    const NoiseDistribution& noise() const noexcept { return noise_; }
    double noise_prob(std::size_t symbol) const { return noise_.probs[symbol]; }

    State next(State x, Action a, std::size_t symbol) const {
        return next_[(x * num_actions_ + a) * noise_size() + symbol];
    }
    double reward(State x, Action a) const { return reward_[x * num_actions_ + a]; }

    const std::optional<FeatureTable>& features() const noexcept { return features_; }
    const std::vector<std::string>& state_labels() const noexcept { return state_labels_; }
    const std::vector<std::string>& action_labels() const noexcept { return action_labels_; }

    TransitionTable transition_table() const;
    RewardTable reward_table() const;

    /// Same model with a different horizon.
    MdpModel with_horizon(std::size_t horizon) const;
    /// Same model with every reward multiplied by `factor` (> 0).
    MdpModel scaled_rewards(double factor) const;

private:
    std::size_t num_states_;
    std::size_t num_actions_;
    std::size_t horizon_;
    State initial_state_;
    NoiseDistribution noise_;
    std::vector<State> next_;
    std::vector<double> reward_;
    std::optional<FeatureTable> features_;
    std::vector<std::string> state_labels_;
    std::vector<std::string> action_labels_;
};

class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Deterministic state -> action map for one stage.
struct MarkovPolicy {
    std::vector<Action> table;

    Action operator()(State x) const { return table[x]; }
    friend bool operator==(const MarkovPolicy&, const MarkovPolicy&) = default;
};

using PolicyString = std::vector<MarkovPolicy>;

/// Throws std::invalid_argument unless every stage covers every state with a valid action.
void validate_policy(const MdpModel& model, std::span<const MarkovPolicy> policy);

/// Policy taking `action` everywhere for `length` stages.
PolicyString constant_policy(const MdpModel& model, Action action, std::size_t length);

struct NoisePath {
    std::vector<std::uint32_t> symbols;
    double probability = 1.0;
};

/// Every length-k noise sequence in lexicographic order with product probabilities.
std::vector<NoisePath> enumerate_noise_paths(const MdpModel& model, std::size_t length,
                                             std::uint64_t budget = kDefaultBudget);

/// Exact expected cumulative reward of following `policy` (length <= K) from x1.
double evaluate_policy_exact(const MdpModel& model, std::span<const MarkovPolicy> policy,
                             std::uint64_t budget = kDefaultBudget);

struct ValueTables {
    std::vector<std::vector<double>> value;             // [k][x], k = 0..K; row K is zero
    std::vector<std::vector<std::vector<double>>> q;    // [k][x][a], k = 0..K-1

    /// Expected value-to-go after taking a at x in stage k: q - r.
    double evtg(const MdpModel& model, std::size_t stage, State x, Action a) const {
        return q[stage][x][a] - model.reward(x, a);
    }
};

struct BellmanSolution {
    PolicyString policy;
    ValueTables tables;

    double optimal_value(const MdpModel& model) const { return tables.value[0][model.initial_state()]; }
};

/// Backward induction from the last stage with minimum-index argmax.
BellmanSolution bellman_solve(const MdpModel& model);

/// Expected reward of stages k+1..K-1 after taking `a` at `x` in stage k and
/// then following `tail` (length K-1-k). Zero at the last stage.
double exact_evtg(const MdpModel& model, std::span<const MarkovPolicy> tail, std::size_t stage,
                  State x, Action a, std::uint64_t budget = kDefaultBudget);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

/// Seeded Monte Carlo estimate of evaluate_policy_exact. Sample i draws from
/// its own SplitMix64 stream split off the root seed.
McEstimate simulate_policy_mc(const MdpModel& model, std::span<const MarkovPolicy> policy,
                              std::uint64_t samples, std::uint64_t seed);

/// Every state -> action table, ordered lexicographically with state 0 most significant.
std::vector<MarkovPolicy> enumerate_markov_policies(const MdpModel& model,
                                                    std::uint64_t budget = kDefaultBudget);

}  // namespace adpbound
