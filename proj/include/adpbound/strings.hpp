#pragma once

// Greedy string optimization: greedy and brute-force strategies, structural
// property checks, total/forward curvature and the curvature-based bound on
// the greedy-to-optimal ratio.
//
// Strings are sequences of action indices drawn from a finite ground set
// {0, ..., ground_size-1}. Every enumeration goes through StringTable, which
// evaluates the objective exactly once per string of length <= horizon.

#include "adpbound/common.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace adpbound {

using ActionId = std::uint32_t;
using ActionString = std::vector<ActionId>;

/// True iff `prefix` is a prefix of `s`.
bool is_prefix(std::span<const ActionId> prefix, std::span<const ActionId> s);

/// Black-box string objective f with f(empty) = 0.
class StringObjective {
public:
    using Evaluator = std::function<double(std::span<const ActionId>)>;

    StringObjective(Evaluator evaluate, std::size_t ground_size, std::size_t horizon);

    /// Returns 0 for the empty string without consulting the evaluator.
    double operator()(std::span<const ActionId> s) const;

    std::size_t ground_size() const noexcept { return ground_size_; }
    std::size_t horizon() const noexcept { return horizon_; }

private:
    Evaluator evaluate_;
    std::size_t ground_size_;
    std::size_t horizon_;
};

/// Exhaustive table of f over every string of length 0..horizon.
/// Index of a string of length l is offset(l) + its base-n rank, so the table
/// is laid out in length-then-lexicographic order.
class StringTable {
public:
    static StringTable build(const StringObjective& f, std::size_t horizon,
                             std::uint64_t budget = kDefaultBudget);

    /// Number of strings of length <= horizon over a ground set of size n.
    static std::uint64_t string_count(std::size_t n, std::size_t horizon);

    double at(std::span<const ActionId> s) const;
    double at(std::size_t length, std::uint64_t rank) const;

    std::size_t ground_size() const noexcept { return ground_size_; }
    std::size_t horizon() const noexcept { return horizon_; }
    std::uint64_t strings_of_length(std::size_t length) const { return powers_[length]; }

    /// Rank-th string of the given length in lexicographic order.
    ActionString decode(std::size_t length, std::uint64_t rank) const;

private:
    std::size_t ground_size_ = 0;
    std::size_t horizon_ = 0;
    std::vector<std::uint64_t> powers_;   // n^l
    std::vector<std::uint64_t> offsets_;  // sum_{j<l} n^j
    std::vector<double> values_;
};

struct GreedyTrace {
    ActionString string;
    std::vector<double> prefix_values;             // f(G_{1:i}), i = 1..K
    std::vector<std::vector<ActionId>> tie_sets;   // argmax set per stage
};

bool operator==(const GreedyTrace& a, const GreedyTrace& b);

struct OptimalString {
    ActionString string;
    double value = 0.0;
};

/// Witness of a failed property check. For prefix-monotonicity `action` is
/// empty and the violation is f(extended) < f(prefix). For diminishing return
/// the violation is f(prefix+a) - f(prefix) < f(extended+a) - f(extended).
struct PropertyWitness {
    ActionString prefix;
    ActionString extended;
    std::optional<ActionId> action;
    double slack = 0.0;  // negative on violation
};

struct PropertyCheck {
    bool holds = true;
    std::optional<PropertyWitness> witness;  // first violation in enumeration order
};

/// Value of a curvature maximum. `defined` is false when every term was
/// skipped, in which case `value` is 0.
struct CurvatureValue {
    double value = 0.0;
    std::uint64_t skipped = 0;
    std::uint64_t terms = 0;
    bool defined = false;
    ActionString argmax_string;  // maximizing M (eta) or M_{i+1:j} (sigma)
    std::size_t argmax_stage = 0;  // i
};

struct CurvatureReport {
    double eta = 0.0;
    double sigma = 0.0;
    bool eta_defined = false;
    bool sigma_defined = false;
    std::uint64_t skipped_term_count = 0;
    double bound_finite_K = 0.0;
    double bound_asymptotic = 0.0;
    double greedy_value = 0.0;
    double optimal_value = 0.0;
    double ratio = 0.0;
    bool prefix_monotone = false;
    bool diminishing_return = false;
    bool eta_nonpositive = false;     // eta < -kEtaZeroBand
    bool degenerate_zero_optimum = false;
    bool bound_holds = true;          // ratio >= bound - tol, or vacuous (not monotone)
    ActionString greedy_string;
    ActionString optimal_string;
    std::vector<std::string> flags;
};

/// One checked inequality of the greedy bound's proof chain.
struct InequalityCheck {
    std::string name;     // "first_step", "step", "chained", "final"
    std::size_t stage = 0;  // i for "step"
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;   // lhs - rhs
    bool holds = true;
};

GreedyTrace greedy_string(const StringObjective& f, std::size_t horizon);

/// Builds the trace for a given string, verifying that every stage picks a
/// maximizer. Returns nullopt if some stage is not within kTolerance of the max.
std::optional<GreedyTrace> trace_for_string(const StringObjective& f, std::span<const ActionId> s);

/// Maximizer of f over strings of length exactly `horizon`; lexicographic tie-break.
OptimalString optimal_string_bruteforce(const StringObjective& f, std::size_t horizon,
                                        std::uint64_t budget = kDefaultBudget);
OptimalString optimal_string_bruteforce(const StringTable& table);

PropertyCheck check_prefix_monotone(const StringObjective& f, std::size_t horizon,
                                    std::uint64_t budget = kDefaultBudget);
PropertyCheck check_prefix_monotone(const StringTable& table);

PropertyCheck check_diminishing_return(const StringObjective& f, std::size_t horizon,
                                       std::uint64_t budget = kDefaultBudget);
PropertyCheck check_diminishing_return(const StringTable& table);

/// Total curvature along the greedy trajectory. The maximum runs over
/// M of length exactly K and 1 <= i <= K-1; terms with f(G_{1:i}) <= tol are skipped.
CurvatureValue total_curvature_eta(const StringObjective& f, const GreedyTrace& greedy,
                                   std::size_t horizon, std::uint64_t budget = kDefaultBudget);
CurvatureValue total_curvature_eta(const StringTable& table, const GreedyTrace& greedy);

/// Forward curvature along the greedy trajectory; terms whose chained marginal
/// (the denominator) is <= tol are skipped.
CurvatureValue forward_curvature_sigma(const StringObjective& f, const GreedyTrace& greedy,
                                       std::size_t horizon, std::uint64_t budget = kDefaultBudget);
CurvatureValue forward_curvature_sigma(const StringTable& table, const GreedyTrace& greedy);

/// (1/eta)(1 - (1 - eta(1-sigma)/K)^K), or 1 - sigma when |eta| < kEtaZeroBand.
double curvature_bound(double eta, double sigma, std::size_t horizon);

/// (1 - exp(-eta(1-sigma)))/eta, or 1 - sigma when |eta| < kEtaZeroBand.
double asymptotic_bound(double eta, double sigma);

/// Full pipeline: greedy, brute-force optimum, both property checks, both
/// curvatures and both bounds.
CurvatureReport verify_greedy_bound(const StringObjective& f, std::size_t horizon,
                                std::uint64_t budget = kDefaultBudget);

/// Same pipeline for a pre-built table and a given greedy trace.
CurvatureReport analyze_greedy(const StringTable& table, const GreedyTrace& greedy);

/// Numeric check of the inequalities that chain the greedy prefix values
/// to the bound: the first-step bound, each one-step recursion, the chained
/// sum and the final bound. Uses the curvatures from `report`.
std::vector<InequalityCheck> bound_chain_inequalities(const StringTable& table,
                                                      const GreedyTrace& greedy,
                                                      const CurvatureReport& report);
std::vector<InequalityCheck> bound_chain_inequalities(const StringObjective& f,
                                                      std::size_t horizon,
                                                      std::uint64_t budget = kDefaultBudget);

}  // namespace adpbound
