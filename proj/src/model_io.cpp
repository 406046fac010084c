#include "adpbound/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace adpbound {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& obj, const char* name) {
    if (!obj.is_object() || !obj.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
    return obj.at(name);
}

std::size_t as_count(const json& v, const char* name) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw ParseError(std::string("field '") + name + "' must be a nonnegative integer");
    return v.get<std::size_t>();
}

template <typename T>
std::vector<T> as_vector(const json& v, const char* name) {
    if (!v.is_array()) throw ParseError(std::string("field '") + name + "' must be an array");
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if constexpr (std::is_same_v<T, double>) {
            if (!e.is_number()) throw ParseError(std::string("field '") + name + "' must hold numbers");
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!e.is_string()) throw ParseError(std::string("field '") + name + "' must hold strings");
        } else {
            if (!e.is_number_integer()) throw ParseError(std::string("field '") + name + "' must hold integers");
        }
        out.push_back(e.get<T>());
    }
    return out;
}

template <typename T>
std::vector<std::vector<T>> as_matrix(const json& v, const char* name) {
    if (!v.is_array()) throw ParseError(std::string("field '") + name + "' must be a 2-dim array");
    std::vector<std::vector<T>> out;
    for (const auto& row : v) out.push_back(as_vector<T>(row, name));
    return out;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

MdpModel parse_model(std::string_view text) {
    const json doc = parse_json(text);
    const auto states = as_count(field(doc, "states"), "states");
    const auto actions = as_count(field(doc, "actions"), "actions");
    const auto horizon = as_count(field(doc, "horizon"), "horizon");
    const auto initial = as_count(field(doc, "initial_state"), "initial_state");

    const json& noise_obj = field(doc, "noise");
    NoiseDistribution noise{as_vector<int>(field(noise_obj, "support"), "noise.support"),
                            as_vector<double>(field(noise_obj, "probs"), "noise.probs")};

    const json& trans = field(doc, "transition");
    if (!trans.is_array()) throw ParseError("field 'transition' must be a 3-dim array");
    MdpModel::TransitionTable transition;
    for (const auto& row : trans) transition.push_back(as_matrix<int>(row, "transition"));
    auto reward = as_matrix<double>(field(doc, "reward"), "reward");

    std::optional<MdpModel::FeatureTable> features;
    if (doc.contains("features")) features = as_matrix<double>(doc.at("features"), "features");

    std::vector<std::string> state_labels, action_labels;
    if (doc.contains("labels")) {
        const auto& labels = doc.at("labels");
        if (labels.contains("states")) state_labels = as_vector<std::string>(labels.at("states"), "labels.states");
        if (labels.contains("actions")) action_labels = as_vector<std::string>(labels.at("actions"), "labels.actions");
    }

    try {
        return MdpModel(states, actions, horizon, static_cast<State>(initial), std::move(noise), transition,
                        reward, std::move(features), std::move(state_labels), std::move(action_labels));
    } catch (const ModelError& e) {
        throw ParseError(std::string("invalid model: ") + e.what());
    }
}

MdpModel load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

std::string model_to_json(const MdpModel& model) {
    nlohmann::ordered_json doc;
    doc["states"] = model.num_states();
    doc["actions"] = model.num_actions();
    doc["horizon"] = model.horizon();
    doc["initial_state"] = model.initial_state();
    doc["noise"] = {{"support", model.noise().support}, {"probs", model.noise().probs}};
    doc["transition"] = model.transition_table();
    doc["reward"] = model.reward_table();
    if (model.features()) doc["features"] = *model.features();
    if (!model.state_labels().empty() || !model.action_labels().empty()) {
        nlohmann::ordered_json labels = nlohmann::ordered_json::object();
        if (!model.state_labels().empty()) labels["states"] = model.state_labels();
        if (!model.action_labels().empty()) labels["actions"] = model.action_labels();
        doc["labels"] = labels;
    }
    return doc.dump(2) + "\n";
}

PolicyString parse_policy(std::string_view text, const MdpModel& model) {
    const auto rows = as_matrix<long long>(parse_json(text), "base_policy");
    if (rows.size() != model.horizon()) throw ParseError("policy must have one row per stage");
    PolicyString out;
    for (const auto& row : rows) {
        if (row.size() != model.num_states()) throw ParseError("policy row must cover every state");
        MarkovPolicy stage;
        for (long long a : row) {
            if (a < 0 || static_cast<std::size_t>(a) >= model.num_actions())
                throw ParseError("policy action out of range");
            stage.table.push_back(static_cast<Action>(a));
        }
        out.push_back(std::move(stage));
    }
    return out;
}

PolicyString load_policy(const std::filesystem::path& path, const MdpModel& model) {
    return parse_policy(read_file(path), model);
}

std::vector<std::vector<double>> parse_theta(std::string_view text) {
    auto theta = as_matrix<double>(parse_json(text), "theta");
    if (theta.empty()) throw ParseError("theta must not be empty");
    return theta;
}

std::vector<std::vector<double>> load_theta(const std::filesystem::path& path) {
    return parse_theta(read_file(path));
}

}  // namespace adpbound
