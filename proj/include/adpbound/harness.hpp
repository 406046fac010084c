#pragma once

// Experiment orchestration behind the `adpbound` command line tool.

#include "adpbound/generators.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace adpbound {

enum class Command { solve_dp, run_adp, bound_adp, verify_theorem1, check_equivalence, generate };

Command parse_command(std::string_view name);
std::string_view to_string(Command command);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int parse = 2;
inline constexpr int budget = 3;
inline constexpr int assertion = 4;
inline constexpr int degenerate = 5;
}  // namespace exit_code

struct ExperimentConfig {
    Command command = Command::solve_dp;
    std::optional<std::filesystem::path> model_path;
    std::string scheme = "myopic";  // myopic | rollout | linearq | exact_evtg
    std::optional<std::filesystem::path> base_policy_path;
    std::optional<std::filesystem::path> theta_path;
    std::optional<std::size_t> horizon;
    std::uint64_t seed = 0;
    std::uint64_t budget = kDefaultBudget;
    std::optional<std::filesystem::path> output_path;
    std::string format = "json";  // json | csv
    std::optional<InstanceKind> generate;
    std::size_t count = 1;
    InstanceSizes sizes;
    std::optional<std::uint64_t> mc_samples;  // unset: exact only
    std::size_t jobs = 1;
    bool strict = false;
};

/// Runs one command. Reports go to files under `output_path` when set,
/// otherwise to `out`; diagnostics go to `err`. Returns an exit_code value.
int run_command(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace adpbound
