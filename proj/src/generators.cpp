#include "adpbound/generators.hpp"

#include "adpbound/rng.hpp"

#include <memory>

namespace adpbound {

std::string_view to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::coverage_submodular: return "coverage_submodular";
        case InstanceKind::random_monotone_marginals: return "random_monotone_marginals";
        case InstanceKind::random_string_fn: return "random_string_fn";
        case InstanceKind::random_mdp: return "random_mdp";
    }
    return "random_mdp";
}

InstanceKind parse_instance_kind(std::string_view name) {
    for (auto kind : {InstanceKind::coverage_submodular, InstanceKind::random_monotone_marginals,
                      InstanceKind::random_string_fn, InstanceKind::random_mdp}) {
        if (to_string(kind) == name) return kind;
    }
    throw std::invalid_argument("unknown instance kind '" + std::string(name) + "'");
}

namespace {

double grid(SplitMix64& rng, std::uint64_t steps) {
    return static_cast<double>(rng.below(steps)) / 1000.0;
}

std::uint64_t string_hash(std::uint64_t seed, std::span<const ActionId> s) {
    std::uint64_t h = mix64(seed ^ kGoldenGamma);
    for (ActionId a : s) h = mix64(h + (static_cast<std::uint64_t>(a) + 1) * kGoldenGamma);
    return h;
}

StringObjective coverage_instance(SplitMix64 rng, const InstanceSizes& sizes) {
    auto weights = std::make_shared<std::vector<double>>();
    auto covers = std::make_shared<std::vector<std::vector<bool>>>(sizes.ground, std::vector<bool>(sizes.universe));
    for (std::size_t e = 0; e < sizes.universe; ++e) weights->push_back(1.0 - rng.uniform());  // (0, 1]
    for (auto& row : *covers)
        for (std::size_t e = 0; e < sizes.universe; ++e) row[e] = rng.uniform() < 0.4;

    return StringObjective(
        [weights, covers](std::span<const ActionId> s) {
            double total = 0.0;
            for (std::size_t e = 0; e < weights->size(); ++e) {
                for (ActionId a : s) {
                    if ((*covers)[a][e]) {
                        total += (*weights)[e];
                        break;
                    }
                }
            }
            return total;
        },
        sizes.ground, sizes.horizon);
}

StringObjective marginals_instance(SplitMix64 rng, const InstanceSizes& sizes) {
    const std::uint64_t key = rng.next();
    return StringObjective(
        [key](std::span<const ActionId> s) {
            double total = 0.0;
            for (std::size_t i = 1; i <= s.size(); ++i) {
                SplitMix64 local(string_hash(key, s.first(i)));
                if (local.uniform() < 0.25) continue;
                const double u = local.uniform();
                total += u * u;
            }
            return total;
        },
        sizes.ground, sizes.horizon);
}

StringObjective table_instance(SplitMix64 rng, const InstanceSizes& sizes) {
    const std::uint64_t key = rng.next();
    return StringObjective(
        [key](std::span<const ActionId> s) { return SplitMix64(string_hash(key, s)).uniform(); },
        sizes.ground, sizes.horizon);
}

}  // namespace

std::vector<StringObjective> generate_string_instances(const GeneratedInstanceSpec& spec, std::uint64_t budget) {
    if (spec.kind == InstanceKind::random_mdp) throw std::invalid_argument("random_mdp is not a string instance kind");
    if (spec.sizes.ground == 0 || spec.sizes.horizon == 0) throw std::invalid_argument("ground set and horizon must be >= 1");
    require_budget("string instance", StringTable::string_count(spec.sizes.ground, spec.sizes.horizon), budget);

    const SplitMix64 root(spec.seed);
    std::vector<StringObjective> out;
    for (std::size_t i = 0; i < spec.count; ++i) {
        auto rng = root.split(i);
        switch (spec.kind) {
            case InstanceKind::coverage_submodular: out.push_back(coverage_instance(rng, spec.sizes)); break;
            case InstanceKind::random_monotone_marginals: out.push_back(marginals_instance(rng, spec.sizes)); break;
            default: out.push_back(table_instance(rng, spec.sizes)); break;
        }
    }
    return out;
}

std::vector<MdpModel> generate_mdp_instances(const GeneratedInstanceSpec& spec) {
    const auto& sz = spec.sizes;
    if (sz.states == 0 || sz.actions == 0 || sz.noise == 0 || sz.horizon == 0)
        throw std::invalid_argument("MDP sizes must be >= 1");

    const SplitMix64 root(spec.seed);
    std::vector<MdpModel> out;
    for (std::size_t i = 0; i < spec.count; ++i) {
        auto rng = root.split(i);
        NoiseDistribution noise;
        double total = 0.0;
        std::vector<double> weights;
        for (std::size_t s = 0; s < sz.noise; ++s) {
            weights.push_back(static_cast<double>(1 + rng.below(9)));
            total += weights.back();
            noise.support.push_back(static_cast<int>(s));
        }
        for (double w : weights) noise.probs.push_back(w / total);

        MdpModel::TransitionTable transition(sz.states, std::vector<std::vector<int>>(sz.actions));
        MdpModel::RewardTable reward(sz.states, std::vector<double>(sz.actions));
        for (std::size_t x = 0; x < sz.states; ++x) {
            for (std::size_t a = 0; a < sz.actions; ++a) {
                for (std::size_t s = 0; s < sz.noise; ++s)
                    transition[x][a].push_back(static_cast<int>(rng.below(sz.states)));
                reward[x][a] = grid(rng, 1000);
            }
        }
        MdpModel::FeatureTable features(sz.states, std::vector<double>(sz.feature_dim));
        for (auto& row : features)
            for (double& v : row) v = grid(rng, 1000);
        const auto initial = static_cast<State>(rng.below(sz.states));

        out.emplace_back(sz.states, sz.actions, sz.horizon, initial, std::move(noise), transition, reward,
                         sz.feature_dim > 0 ? std::optional(features) : std::nullopt);
    }
    return out;
}

PolicyString random_policy_string(const MdpModel& model, std::uint64_t seed) {
    SplitMix64 rng(seed);
    PolicyString out(model.horizon(), MarkovPolicy{std::vector<Action>(model.num_states(), 0)});
    for (auto& stage : out)
        for (auto& a : stage.table) a = static_cast<Action>(rng.below(model.num_actions()));
    return out;
}

std::vector<std::vector<double>> random_theta(const MdpModel& model, std::uint64_t seed) {
    if (!model.features()) throw std::invalid_argument("model has no features");
    const std::size_t dim = model.features()->front().size();
    SplitMix64 rng(seed);
    std::vector<std::vector<double>> out(model.num_actions(), std::vector<double>(dim));
    for (auto& row : out)
        for (double& v : row) v = grid(rng, 3000);
    return out;
}

}  // namespace adpbound
