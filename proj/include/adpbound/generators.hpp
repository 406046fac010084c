#pragma once

// Seeded instance generators. Instance i of a batch draws from
// SplitMix64(seed).split(i), so batches are reproducible and any single
// instance can be regenerated on its own.

#include "adpbound/mdp.hpp"
#include "adpbound/strings.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace adpbound {

enum class InstanceKind { coverage_submodular, random_monotone_marginals, random_string_fn, random_mdp };

std::string_view to_string(InstanceKind kind);
/// Throws std::invalid_argument on an unknown name.
InstanceKind parse_instance_kind(std::string_view name);

struct InstanceSizes {
    std::size_t ground = 3;
    std::size_t states = 3;
    std::size_t actions = 2;
    std::size_t noise = 2;
    std::size_t horizon = 3;
    std::size_t universe = 6;       // coverage_submodular only
    std::size_t feature_dim = 2;    // random_mdp only
};

struct GeneratedInstanceSpec {
    InstanceKind kind = InstanceKind::coverage_submodular;
    InstanceSizes sizes;
    std::size_t count = 1;
    std::uint64_t seed = 0;
};

/// coverage_submodular: f(M) = total weight of universe elements covered by
///   some action of M (order-free, monotone, diminishing return).
/// random_monotone_marginals: f((M,a)) = f(M) + delta(M,a), delta >= 0 a
///   deterministic hash of (seed, M, a); a quarter of the marginals are 0.
/// random_string_fn: f(M) uniform in [0,1) per nonempty string, unconstrained.
std::vector<StringObjective> generate_string_instances(const GeneratedInstanceSpec& spec,
                                                       std::uint64_t budget = kDefaultBudget);

/// Random transitions, noise probabilities and nonnegative rewards on a
/// 1/1000 grid; features on the same grid with dimension sizes.feature_dim.
std::vector<MdpModel> generate_mdp_instances(const GeneratedInstanceSpec& spec);

/// Uniformly random K-stage Markov policy string.
PolicyString random_policy_string(const MdpModel& model, std::uint64_t seed);

/// Random nonnegative linear-Q weights [action][dim] on a 1/1000 grid in [0, 3).
std::vector<std::vector<double>> random_theta(const MdpModel& model, std::uint64_t seed);

}  // namespace adpbound
