#include "adpbound/mdp.hpp"

#include "adpbound/rng.hpp"

#include <cmath>
#include <numeric>

namespace adpbound {

MdpModel::MdpModel(std::size_t num_states, std::size_t num_actions, std::size_t horizon,
                   State initial_state, NoiseDistribution noise, const TransitionTable& transition,
                   const RewardTable& reward, std::optional<FeatureTable> features,
                   std::vector<std::string> state_labels, std::vector<std::string> action_labels)
    : num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      initial_state_(initial_state),
      noise_(std::move(noise)),
      features_(std::move(features)),
      state_labels_(std::move(state_labels)),
      action_labels_(std::move(action_labels)) {
    if (num_states_ == 0) throw ModelError("model needs at least one state");
    if (num_actions_ == 0) throw ModelError("model needs at least one action");
    if (horizon_ == 0) throw ModelError("horizon must be >= 1");
    if (initial_state_ >= num_states_) throw ModelError("initial state out of range");

    const std::size_t s = noise_.probs.size();
    if (s == 0) throw ModelError("noise support is empty");
    if (noise_.support.size() != s) throw ModelError("noise support and probs differ in length");
    for (double p : noise_.probs) {
        if (!(p > 0.0) || !std::isfinite(p)) throw ModelError("noise probabilities must be positive");
    }
    const double total = std::accumulate(noise_.probs.begin(), noise_.probs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) throw ModelError("noise probabilities do not sum to 1");

    if (transition.size() != num_states_) throw ModelError("transition table has wrong state dimension");
    next_.reserve(num_states_ * num_actions_ * s);
    for (const auto& row : transition) {
        if (row.size() != num_actions_) throw ModelError("transition table has wrong action dimension");
        for (const auto& cell : row) {
            if (cell.size() != s) throw ModelError("transition table has wrong noise dimension");
            for (int target : cell) {
                if (target < 0 || static_cast<std::size_t>(target) >= num_states_)
                    throw ModelError("transition target out of range");
                next_.push_back(static_cast<State>(target));
            }
        }
    }

    if (reward.size() != num_states_) throw ModelError("reward table has wrong state dimension");
    reward_.reserve(num_states_ * num_actions_);
    for (const auto& row : reward) {
        if (row.size() != num_actions_) throw ModelError("reward table has wrong action dimension");
        for (double r : row) {
            if (!(r >= 0.0) || !std::isfinite(r)) throw ModelError("rewards must be finite and nonnegative");
            reward_.push_back(r);
        }
    }

    if (features_) {
        if (features_->size() != num_states_) throw ModelError("features need one row per state");
        const std::size_t dim = features_->front().size();
        for (const auto& row : *features_) {
            if (row.size() != dim) throw ModelError("feature rows differ in dimension");
        }
    }
    if (!state_labels_.empty() && state_labels_.size() != num_states_)
        throw ModelError("state labels need one entry per state");
    if (!action_labels_.empty() && action_labels_.size() != num_actions_)
        throw ModelError("action labels need one entry per action");
}

MdpModel::TransitionTable MdpModel::transition_table() const {
    TransitionTable out(num_states_, std::vector<std::vector<int>>(num_actions_));
    for (State x = 0; x < num_states_; ++x)
        for (Action a = 0; a < num_actions_; ++a)
            for (std::size_t s = 0; s < noise_size(); ++s) out[x][a].push_back(static_cast<int>(next(x, a, s)));
    return out;
}

MdpModel::RewardTable MdpModel::reward_table() const {
    RewardTable out(num_states_, std::vector<double>(num_actions_));
    for (State x = 0; x < num_states_; ++x)
        for (Action a = 0; a < num_actions_; ++a) out[x][a] = reward(x, a);
    return out;
}

MdpModel MdpModel::with_horizon(std::size_t horizon) const {
    return MdpModel(num_states_, num_actions_, horizon, initial_state_, noise_, transition_table(),
                    reward_table(), features_, state_labels_, action_labels_);
}

MdpModel MdpModel::scaled_rewards(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("reward scale must be positive");
    auto rewards = reward_table();
    for (auto& row : rewards)
        for (double& r : row) r *= factor;
    return MdpModel(num_states_, num_actions_, horizon_, initial_state_, noise_, transition_table(),
                    rewards, features_, state_labels_, action_labels_);
}

void validate_policy(const MdpModel& model, std::span<const MarkovPolicy> policy) {
    if (policy.size() > model.horizon()) throw std::invalid_argument("policy string longer than horizon");
    for (const auto& stage : policy) {
        if (stage.table.size() != model.num_states())
            throw std::invalid_argument("policy table must cover every state");
        for (Action a : stage.table) {
            if (a >= model.num_actions()) throw std::invalid_argument("policy action out of range");
        }
    }
}

PolicyString constant_policy(const MdpModel& model, Action action, std::size_t length) {
    return PolicyString(length, MarkovPolicy{std::vector<Action>(model.num_states(), action)});
}

std::vector<NoisePath> enumerate_noise_paths(const MdpModel& model, std::size_t length,
                                             std::uint64_t budget) {
    const std::size_t s = model.noise_size();
    const std::uint64_t count = saturating_pow(s, length);
    require_budget("noise paths", count, budget);

    std::vector<NoisePath> out;
    out.reserve(count);
    std::vector<std::uint32_t> symbols(length, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        double p = 1.0;
        for (auto sym : symbols) p *= model.noise_prob(sym);
        out.push_back({symbols, p});
        for (std::size_t pos = length; pos-- > 0;) {
            if (++symbols[pos] < s) break;
            symbols[pos] = 0;
        }
    }
    return out;
}

double evaluate_policy_exact(const MdpModel& model, std::span<const MarkovPolicy> policy,
                             std::uint64_t budget) {
    validate_policy(model, policy);
    const std::size_t k = policy.size();
    if (k == 0) return 0.0;

    double total = 0.0;
    for (const auto& path : enumerate_noise_paths(model, k - 1, budget)) {
        State x = model.initial_state();
        double sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const Action a = policy[i](x);
            sum += model.reward(x, a);
            if (i + 1 < k) x = model.next(x, a, path.symbols[i]);
        }
        total += path.probability * sum;
    }
    return total;
}

BellmanSolution bellman_solve(const MdpModel& model) {
    const std::size_t K = model.horizon();
    const std::size_t nx = model.num_states();
    const std::size_t na = model.num_actions();

    BellmanSolution sol;
    auto& V = sol.tables.value;
    auto& Q = sol.tables.q;
    V.assign(K + 1, std::vector<double>(nx, 0.0));
    Q.assign(K, std::vector<std::vector<double>>(nx, std::vector<double>(na, 0.0)));
    sol.policy.assign(K, MarkovPolicy{std::vector<Action>(nx, 0)});

    for (std::size_t k = K; k-- > 0;) {
        for (State x = 0; x < nx; ++x) {
            for (Action a = 0; a < na; ++a) {
                double cont = 0.0;
                for (std::size_t s = 0; s < model.noise_size(); ++s)
                    cont += model.noise_prob(s) * V[k + 1][model.next(x, a, s)];
                Q[k][x][a] = model.reward(x, a) + cont;
            }
            const auto best = argmax_min_index(Q[k][x]);
            sol.policy[k].table[x] = static_cast<Action>(best);
            V[k][x] = Q[k][x][best];
        }
    }
    return sol;
}

double exact_evtg(const MdpModel& model, std::span<const MarkovPolicy> tail, std::size_t stage,
                  State x, Action a, std::uint64_t budget) {
    const std::size_t K = model.horizon();
    if (stage >= K) throw std::invalid_argument("stage out of range");
    if (tail.size() != K - 1 - stage) throw std::invalid_argument("tail must cover the remaining stages");
    validate_policy(model, tail);
    if (tail.empty()) return 0.0;

    double total = 0.0;
    for (const auto& path : enumerate_noise_paths(model, tail.size(), budget)) {
        State y = model.next(x, a, path.symbols[0]);
        double sum = 0.0;
        for (std::size_t t = 0; t < tail.size(); ++t) {
            const Action b = tail[t](y);
            sum += model.reward(y, b);
            if (t + 1 < tail.size()) y = model.next(y, b, path.symbols[t + 1]);
        }
        total += path.probability * sum;
    }
    return total;
}

namespace {

std::size_t sample_symbol(const MdpModel& model, SplitMix64& rng) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (std::size_t s = 0; s + 1 < model.noise_size(); ++s) {
        cumulative += model.noise_prob(s);
        if (u < cumulative) return s;
    }
    return model.noise_size() - 1;
}

}  // namespace

McEstimate simulate_policy_mc(const MdpModel& model, std::span<const MarkovPolicy> policy,
                              std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
    validate_policy(model, policy);
    const SplitMix64 root(seed);

    // Welford: identical returns give an exact mean and zero spread.
    McEstimate est;
    double m2 = 0.0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        auto rng = root.split(i);
        State x = model.initial_state();
        double sum = 0.0;
        for (std::size_t k = 0; k < policy.size(); ++k) {
            const Action a = policy[k](x);
            sum += model.reward(x, a);
            if (k + 1 < policy.size()) x = model.next(x, a, sample_symbol(model, rng));
        }
        ++est.samples;
        const double delta = sum - est.mean;
        est.mean += delta / static_cast<double>(est.samples);
        m2 += delta * (sum - est.mean);
    }
    if (samples > 1) {
        const double variance = m2 / static_cast<double>(samples - 1);
        est.std_error = std::sqrt(variance / static_cast<double>(samples));
    }
    return est;
}

std::vector<MarkovPolicy> enumerate_markov_policies(const MdpModel& model, std::uint64_t budget) {
    const std::size_t nx = model.num_states();
    const std::size_t na = model.num_actions();
    const std::uint64_t count = saturating_pow(na, nx);
    require_budget("markov policies", count, budget);

    std::vector<MarkovPolicy> out;
    out.reserve(count);
    std::vector<Action> table(nx, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        out.push_back(MarkovPolicy{table});
        for (std::size_t pos = nx; pos-- > 0;) {
            if (++table[pos] < na) break;
            table[pos] = 0;
        }
    }
    return out;
}

}  // namespace adpbound
