#pragma once

// The surrogate objective that turns an ADP scheme into a greedy string
// optimizer over policy strings, the path-dependent (PDAO) and policy-greedy
// (GPS) schemes built on it, and the curvature bound for the ADP scheme.

#include "adpbound/adp.hpp"
#include "adpbound/strings.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace adpbound {

/// g(x_1..x_k; a_1..a_k) = sum_i r(x_i, a_i) + W_k(x_k, a_k), with W zero at the last stage.
class SurrogateObjective {
public:
    SurrogateObjective(MdpModel model, EvtgApproximator w);

    /// `states` and `actions` have equal length k, 1 <= k <= K.
    double evaluate_path(std::span<const State> states, std::span<const Action> actions) const;

    const MdpModel& model() const noexcept { return model_; }
    const EvtgApproximator& approximator() const noexcept { return w_; }

private:
    MdpModel model_;
    EvtgApproximator w_;
};

double surrogate_eval(const SurrogateObjective& s, std::span<const State> states,
                      std::span<const Action> actions);

/// All |A|^|X| Markov stage policies in lexicographic order (state 0 most significant).
class PolicyGroundSet {
public:
    explicit PolicyGroundSet(const MdpModel& model, std::uint64_t budget = kDefaultBudget);

    std::size_t size() const noexcept { return policies_.size(); }
    const MarkovPolicy& operator[](ActionId i) const { return policies_[i]; }
    ActionId index_of(const MarkovPolicy& policy) const;
    PolicyString decode(std::span<const ActionId> indices) const;

private:
    std::size_t num_actions_;
    std::vector<MarkovPolicy> policies_;
};

/// Expected surrogate over noise paths, as a function of policy strings.
class PolicyStringObjective {
public:
    PolicyStringObjective(SurrogateObjective surrogate, std::uint64_t budget = kDefaultBudget);

    /// Expected surrogate of a policy string of length <= K; zero when empty.
    double evaluate(std::span<const MarkovPolicy> policies) const;
    double evaluate_indices(std::span<const ActionId> indices) const;

    /// Adapter whose "actions" are ground-set indices.
    StringObjective as_string_objective() const;

    const SurrogateObjective& surrogate() const noexcept { return surrogate_; }
    const PolicyGroundSet& ground_set() const noexcept { return ground_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    SurrogateObjective surrogate_;
    PolicyGroundSet ground_;
    std::uint64_t budget_;
};

double g_avg_eval(const PolicyStringObjective& obj, std::span<const MarkovPolicy> policies);

struct PdaoPolicy {
    /// decisions[k] maps the noise history (length k) to the stage-k action.
    std::vector<std::map<std::vector<std::uint32_t>, Action>> decisions;
    /// One record per full noise path of length K-1.
    std::vector<AdpPathRecord> paths;
    double expected_value = 0.0;
};

/// Path-dependent action optimization: on each noise history the stage-k
/// action maximizes the surrogate of the realized path, min-index tie-break.
PdaoPolicy pdao_construct(const SurrogateObjective& s, std::uint64_t budget = kDefaultBudget);

/// Greedy policy selection: stage-wise maximization of the expected surrogate
/// over the policy ground set.
PolicyString gps_construct(const PolicyStringObjective& obj);

struct PdaoGpsCheck {
    bool verified = true;
    std::vector<double> gaps;            // per stage: GPS max minus value of the PDAO-induced policy
    PolicyString induced;                // PDAO choices on realized states, action 0 elsewhere
    std::optional<std::size_t> first_failure;
    std::string message;
};

/// Checks that the PDAO scheme, read as a policy string, attains the GPS
/// maximum at every stage given its own prefix.
PdaoGpsCheck check_pdao_is_gps(const SurrogateObjective& s, std::uint64_t budget = kDefaultBudget);

struct AdpPdaoCheck {
    bool equal = true;
    std::optional<NoisePath> mismatch;
};

/// ADP forward actions equal PDAO actions on every noise path.
AdpPdaoCheck check_adp_is_pdao(const MdpModel& model, const EvtgApproximator& w,
                       std::uint64_t budget = kDefaultBudget);

struct MonotonicityCheck {
    bool holds = true;
    double worst_slack = 0.0;
    /// Violating pair: the first m and the first n policies of `policies` (m < n).
    std::optional<std::size_t> witness_m;
    std::optional<std::size_t> witness_n;
    PolicyString witness_policies;
};

/// Verifies, over every policy string and every split m < n <= K, that the
/// expected drop in W from stage m to n is at most the expected reward
/// collected in stages m+1..n. The case m = 0 (empty prefix, value 0) is
/// included, so this holds iff the expected surrogate is prefix-monotone.
MonotonicityCheck check_monotonicity_condition(const MdpModel& model, const EvtgApproximator& w,
                                               std::uint64_t budget = kDefaultBudget);

struct AdpBoundReport {
    CurvatureReport curvature;
    bool bound_computed = false;
    double optimal_policy_value = 0.0;   // Bellman
    double bruteforce_optimal_value = 0.0;
    double adp_value = 0.0;
    double ratio = 0.0;
    bool monotone_certificate = false;
    double worst_slack = 0.0;
    bool theorem2_verified = false;
    bool prop1_verified = false;
    bool bound_holds = true;  // vacuous when not certified
    std::vector<std::string> flags;
};

/// Runs the full bounding pipeline for an ADP scheme. When the policy-string
/// enumeration exceeds `budget` the curvature part is skipped and
/// `bound_computed` is false.
AdpBoundReport adp_bound_report(const MdpModel& model, const EvtgApproximator& w,
                               std::uint64_t budget = kDefaultBudget);

}  // namespace adpbound
