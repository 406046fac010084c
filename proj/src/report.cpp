#include "adpbound/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace adpbound {

std::string format_number(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_scalar(std::string& out, const Json& v) {
    switch (v.type()) {
        case Json::value_t::number_float: out += format_number(v.get<double>()); break;
        case Json::value_t::number_integer:
        case Json::value_t::number_unsigned:
        case Json::value_t::boolean:
        case Json::value_t::string:
        case Json::value_t::null: out += v.dump(); break;
        default: break;
    }
}

bool is_scalar_array(const Json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v) {
        if (e.is_object()) return false;
        if (e.is_array() && !is_scalar_array(e)) return false;
    }
    return true;
}

void write_json(std::string& out, const Json& v, int depth) {
    const std::string indent(static_cast<std::size_t>(depth + 1) * 2, ' ');
    const std::string close(static_cast<std::size_t>(depth) * 2, ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += indent;
            out += Json(it.key()).dump();
            out += ": ";
            write_json(out, it.value(), depth + 1);
        }
        out += "\n" + close + "}";
    } else if (v.is_array()) {
        // arrays of scalars (and nested scalar arrays) stay on one line
        if (is_scalar_array(v)) {
            out += "[";
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += ", ";
                first = false;
                write_json(out, e, depth + 1);
            }
            out += "]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& e : v) {
            if (!first) out += ",\n";
            first = false;
            out += indent;
            write_json(out, e, depth + 1);
        }
        out += "\n" + close + "]";
    } else {
        write_scalar(out, v);
    }
}

std::string csv_cell(const Json& v) {
    std::string raw;
    if (v.is_array()) {
        bool nested = false;
        for (const auto& e : v) nested = nested || e.is_array();
        bool first = true;
        for (const auto& e : v) {
            if (!first) raw += nested ? "|" : ";";
            first = false;
            raw += csv_cell(e);
        }
    } else if (v.is_string()) {
        raw = v.get<std::string>();
    } else {
        write_scalar(raw, v);
    }
    if (raw.find_first_of(",\"\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : raw) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        return quoted + "\"";
    }
    return raw;
}

Json number_or_null(double v, bool defined) { return defined && std::isfinite(v) ? Json(v) : Json(nullptr); }

Json strings(const std::vector<std::string>& v) { return Json(v); }

}  // namespace

std::string dump_json(const Json& doc) {
    std::string out;
    write_json(out, doc, 0);
    out += "\n";
    return out;
}

std::string dump_csv(const std::vector<Json>& rows) {
    if (rows.empty()) return "";
    std::vector<std::string> keys;
    for (auto it = rows.front().begin(); it != rows.front().end(); ++it) {
        if (it.value().is_object() || (it.value().is_array() && !is_scalar_array(it.value()))) continue;
        keys.push_back(it.key());
    }
    std::string out;
    for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (i) out += ",";
            if (row.contains(keys[i])) out += csv_cell(row.at(keys[i]));
        }
        out += "\n";
    }
    return out;
}

Json to_json(const AdpBoundReport& r) {
    const auto& c = r.curvature;
    const bool computed = r.bound_computed;
    Json doc;
    doc["eta"] = number_or_null(c.eta, computed && c.eta_defined);
    doc["sigma"] = number_or_null(c.sigma, computed && c.sigma_defined);
    doc["skipped_terms"] = computed ? Json(c.skipped_term_count) : Json(nullptr);
    doc["bound_finite_K"] = number_or_null(c.bound_finite_K, computed);
    doc["bound_asymptotic"] = number_or_null(c.bound_asymptotic, computed);
    doc["optimal_value"] = r.optimal_policy_value;
    doc["adp_value"] = r.adp_value;
    doc["ratio"] = r.ratio;
    doc["monotone_certificate"] = r.monotone_certificate;
    doc["worst_slack"] = number_or_null(r.worst_slack, computed);
    doc["theorem2_verified"] = r.theorem2_verified;
    doc["prop1_verified"] = r.prop1_verified;
    doc["flags"] = strings(r.flags);
    return doc;
}

Json to_json(const CurvatureReport& c) {
    Json doc;
    doc["eta"] = number_or_null(c.eta, c.eta_defined);
    doc["sigma"] = number_or_null(c.sigma, c.sigma_defined);
    doc["skipped_terms"] = c.skipped_term_count;
    doc["bound_finite_K"] = c.bound_finite_K;
    doc["bound_asymptotic"] = c.bound_asymptotic;
    doc["greedy_value"] = c.greedy_value;
    doc["optimal_value"] = c.optimal_value;
    doc["ratio"] = c.ratio;
    doc["prefix_monotone"] = c.prefix_monotone;
    doc["diminishing_return"] = c.diminishing_return;
    doc["eta_nonpositive"] = c.eta_nonpositive;
    doc["bound_holds"] = c.bound_holds;
    doc["greedy_string"] = c.greedy_string;
    doc["optimal_string"] = c.optimal_string;
    doc["flags"] = strings(c.flags);
    return doc;
}

Json to_json(const std::vector<InequalityCheck>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"stage", c.stage}, {"lhs", c.lhs}, {"rhs", c.rhs},
                       {"slack", c.slack}, {"holds", c.holds}});
    }
    return arr;
}

Json to_json(const MdpModel& model, const BellmanSolution& sol) {
    Json doc;
    doc["optimal_value"] = sol.optimal_value(model);
    doc["initial_state"] = model.initial_state();
    Json policy = Json::array();
    for (const auto& stage : sol.policy) policy.push_back(stage.table);
    doc["policy"] = policy;
    doc["value"] = sol.tables.value;
    doc["q"] = sol.tables.q;
    return doc;
}

Json to_json(const AdpRun& run) {
    Json doc;
    doc["expected_value"] = run.expected_value;
    Json paths = Json::array();
    for (const auto& p : run.paths) {
        paths.push_back({{"noise", p.noise.symbols},
                         {"probability", p.noise.probability},
                         {"states", p.states},
                         {"actions", p.actions},
                         {"reward", p.reward}});
    }
    doc["paths"] = paths;
    return doc;
}

}  // namespace adpbound
