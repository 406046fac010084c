#pragma once

// JSON model files:
//
//   {
//     "states": 2, "actions": 2, "horizon": 2, "initial_state": 0,
//     "noise": {"support": [0], "probs": [1.0]},
//     "transition": [[[0], [1]], [[1], [1]]],     // [state][action][noise] -> state
//     "reward": [[1.0, 0.0], [5.0, 5.0]],          // [state][action]
//     "features": [[1.0], [1.0]],                  // optional, [state][dim]
//     "labels": {"states": [...], "actions": [...]} // optional
//   }

#include "adpbound/mdp.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adpbound {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

MdpModel parse_model(std::string_view text);
MdpModel load_model(const std::filesystem::path& path);

/// Deterministic serialization; parse_model(model_to_json(m)) reproduces m.
std::string model_to_json(const MdpModel& model);

/// [stage][state] -> action. Must have K stages and cover every state.
PolicyString parse_policy(std::string_view text, const MdpModel& model);
PolicyString load_policy(const std::filesystem::path& path, const MdpModel& model);

/// [action][dim] weights.
std::vector<std::vector<double>> parse_theta(std::string_view text);
std::vector<std::vector<double>> load_theta(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace adpbound
