#include "adpbound/harness.hpp"

#include "adpbound/model_io.hpp"
#include "adpbound/report.hpp"
#include "adpbound/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>
#include <set>
#include <thread>

namespace adpbound {

namespace fs = std::filesystem;

Command parse_command(std::string_view name) {
    for (auto c : {Command::solve_dp, Command::run_adp, Command::bound_adp, Command::verify_theorem1,
                   Command::check_equivalence, Command::generate}) {
        if (to_string(c) == name) return c;
    }
    throw std::invalid_argument("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(Command command) {
    switch (command) {
        case Command::solve_dp: return "solve-dp";
        case Command::run_adp: return "run-adp";
        case Command::bound_adp: return "bound-adp";
        case Command::verify_theorem1: return "verify-theorem1";
        case Command::check_equivalence: return "check-equivalence";
        case Command::generate: return "generate-mdp";
    }
    return "";
}

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

const std::set<std::string> kDegenerateFlags = {"zero_optimum", "eta_undefined", "sigma_undefined",
                                                "eta_nonpositive", "bound_not_computed"};

const std::set<std::string> kFailureFlags = {"pdao_gps_failed", "adp_pdao_failed", "optimum_mismatch",
                                             "adp_value_mismatch", "certificate_mismatch"};

/// Outcome of one instance: its report plus what it means for the exit status.
struct Outcome {
    Json doc;
    bool failed = false;
    bool degenerate = false;
};

bool has_any(const std::vector<std::string>& flags, const std::set<std::string>& set) {
    return std::any_of(flags.begin(), flags.end(), [&](const auto& f) { return set.count(f) > 0; });
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(seed).split(stream).next();
}

void write_atomically(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, path);
}

std::string render(const Json& doc, const std::string& format) {
    return format == "csv" ? dump_csv({doc}) : dump_json(doc);
}

std::string instance_name(std::size_t i, const std::string& ext) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "instance_%04zu.%s", i, ext.c_str());
    return buf;
}

/// Runs `task` for every index on up to `jobs` threads; results keep index order.
std::vector<Outcome> run_parallel(std::size_t count, std::size_t jobs,
                                  const std::function<Outcome(std::size_t)>& task) {
    std::vector<Outcome> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t threads = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

int finish(const std::vector<Outcome>& outcomes, const ExperimentConfig& config, std::ostream& out, bool sweep) {
    const std::string ext = config.format == "csv" ? "csv" : "json";
    if (!sweep) {
        const std::string text = render(outcomes.front().doc, config.format);
        if (config.output_path) write_atomically(*config.output_path, text);
        else out << text;
    } else {
        std::vector<Json> index;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            Json row;
            row["instance"] = i;
            for (auto it = outcomes[i].doc.begin(); it != outcomes[i].doc.end(); ++it) row[it.key()] = it.value();
            index.push_back(std::move(row));
            if (config.output_path)
                write_atomically(*config.output_path / instance_name(i, ext), render(outcomes[i].doc, config.format));
        }
        // index last, single-threaded
        const std::string csv = dump_csv(index);
        if (config.output_path) write_atomically(*config.output_path / "index.csv", csv);
        else out << csv;
    }

    const bool failed = std::any_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.failed; });
    const bool degenerate = std::any_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.degenerate; });
    if (failed) return exit_code::assertion;
    if (config.strict && degenerate) return exit_code::degenerate;
    return exit_code::ok;
}

// ---------------------------------------------------------------------------
// Model and scheme inputs

MdpModel configured_model(const ExperimentConfig& config) {
    if (!config.model_path) throw UsageError("--model is required");
    auto model = load_model(*config.model_path);
    if (config.horizon && *config.horizon != model.horizon()) {
        try {
            model = model.with_horizon(*config.horizon);
        } catch (const ModelError& e) {
            throw UsageError(e.what());
        }
    }
    return model;
}

/// Models to run: the --model file, or a generated random_mdp batch.
std::vector<MdpModel> configured_models(const ExperimentConfig& config, bool& sweep) {
    if (config.generate) {
        if (*config.generate != InstanceKind::random_mdp)
            throw UsageError("this command generates random_mdp instances only");
        GeneratedInstanceSpec spec{InstanceKind::random_mdp, config.sizes, config.count, config.seed};
        if (config.horizon) spec.sizes.horizon = *config.horizon;
        sweep = true;
        return generate_mdp_instances(spec);
    }
    sweep = false;
    return {configured_model(config)};
}

EvtgApproximator configured_scheme(const ExperimentConfig& config, const MdpModel& model, std::size_t instance,
                                   bool generated) {
    const auto& s = config.scheme;
    if (s == "myopic") return myopic_w(model);
    if (s == "exact_evtg") return exact_evtg_w(model);
    if (s == "rollout") {
        PolicyString base;
        if (config.base_policy_path) base = load_policy(*config.base_policy_path, model);
        else if (generated) base = random_policy_string(model, stream_seed(config.seed, 1'000'000 + instance));
        else base = constant_policy(model, 0, model.horizon());
        return rollout_w(model, RolloutConfig{base}, config.budget);
    }
    if (s == "linearq") {
        std::vector<std::vector<double>> theta;
        if (config.theta_path) theta = load_theta(*config.theta_path);
        else if (generated && model.features()) theta = random_theta(model, stream_seed(config.seed, 2'000'000 + instance));
        else throw UsageError("--scheme linearq needs --theta");
        try {
            return linear_q_w(model, theta);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    throw UsageError("unknown scheme '" + s + "'");
}

// ---------------------------------------------------------------------------
// Commands

int solve_dp(const ExperimentConfig& config, std::ostream& out) {
    const auto model = configured_model(config);
    Outcome o{to_json(model, bellman_solve(model))};
    return finish({o}, config, out, false);
}

int run_adp(const ExperimentConfig& config, std::ostream& out) {
    const auto model = configured_model(config);
    const auto w = configured_scheme(config, model, 0, false);
    const auto run = adp_forward(model, w, config.budget);

    Outcome o;
    o.doc["scheme"] = config.scheme;
    o.doc["expected_value"] = run.expected_value;
    o.doc["optimal_value"] = bellman_solve(model).optimal_value(model);
    if (config.mc_samples) {
        const auto est = simulate_policy_mc(model, adp_policy(model, w), *config.mc_samples, config.seed);
        o.doc["mc_mean"] = est.mean;
        o.doc["mc_std_error"] = est.std_error;
        o.doc["mc_samples"] = est.samples;
    }
    Json policy = Json::array();
    for (const auto& stage : adp_policy(model, w)) policy.push_back(stage.table);
    o.doc["policy"] = policy;
    o.doc["paths"] = to_json(run).at("paths");
    return finish({o}, config, out, false);
}

int bound_adp(const ExperimentConfig& config, std::ostream& out) {
    bool sweep = false;
    const auto models = configured_models(config, sweep);
    auto outcomes = run_parallel(models.size(), config.jobs, [&](std::size_t i) {
        const auto w = configured_scheme(config, models[i], i, sweep);
        const auto rep = adp_bound_report(models[i], w, config.budget);
        Outcome o{to_json(rep)};
        o.failed = !rep.bound_holds || !rep.prop1_verified || (rep.bound_computed && !rep.theorem2_verified) ||
                   has_any(rep.flags, kFailureFlags);
        o.degenerate = has_any(rep.flags, kDegenerateFlags);
        return o;
    });
    return finish(outcomes, config, out, sweep);
}

int check_equivalence(const ExperimentConfig& config, std::ostream& out) {
    bool sweep = false;
    const auto models = configured_models(config, sweep);
    auto outcomes = run_parallel(models.size(), config.jobs, [&](std::size_t i) {
        const auto w = configured_scheme(config, models[i], i, sweep);
        const auto gps = check_pdao_is_gps(SurrogateObjective(models[i], w), config.budget);
        const auto adp = check_adp_is_pdao(models[i], w, config.budget);
        Outcome o;
        o.doc["scheme"] = config.scheme;
        o.doc["theorem2_verified"] = gps.verified;
        o.doc["prop1_verified"] = adp.equal;
        o.doc["gaps"] = gps.gaps;
        o.doc["message"] = gps.message;
        if (adp.mismatch) o.doc["prop1_mismatch_noise"] = adp.mismatch->symbols;
        o.failed = !gps.verified || !adp.equal;
        return o;
    });
    return finish(outcomes, config, out, sweep);
}

int verify_theorem1(const ExperimentConfig& config, std::ostream& out) {
    if (!config.generate || *config.generate == InstanceKind::random_mdp)
        throw UsageError("verify-theorem1 needs --generate with a string instance kind");
    GeneratedInstanceSpec spec{*config.generate, config.sizes, config.count, config.seed};
    if (config.horizon) spec.sizes.horizon = *config.horizon;
    const auto instances = generate_string_instances(spec, config.budget);

    auto outcomes = run_parallel(instances.size(), config.jobs, [&](std::size_t i) {
        const auto& f = instances[i];
        const auto table = StringTable::build(f, spec.sizes.horizon, config.budget);
        const auto greedy = greedy_string(f, spec.sizes.horizon);
        const auto rep = analyze_greedy(table, greedy);
        const auto chain = bound_chain_inequalities(table, greedy, rep);
        double min_slack = chain.front().slack;
        for (const auto& c : chain) min_slack = std::min(min_slack, c.slack);

        Outcome o;
        o.doc["kind"] = std::string(to_string(spec.kind));
        o.doc["horizon"] = spec.sizes.horizon;
        const Json body = to_json(rep);
        for (auto it = body.begin(); it != body.end(); ++it) o.doc[it.key()] = it.value();
        o.doc["chain_min_slack"] = min_slack;
        o.doc["chain"] = to_json(chain);
        if (rep.prefix_monotone) {
            const bool sigma_in_range = rep.sigma >= -kTolerance && rep.sigma <= 1.0 + kTolerance;
            const bool sigma_zero = !rep.diminishing_return || rep.sigma <= kTolerance;
            o.failed = !rep.bound_holds || min_slack < -kTolerance || !sigma_in_range || !sigma_zero;
        }
        o.degenerate = has_any(rep.flags, kDegenerateFlags);
        return o;
    });
    return finish(outcomes, config, out, true);
}

int generate(const ExperimentConfig& config, std::ostream& out) {
    if (!config.generate || *config.generate != InstanceKind::random_mdp)
        throw UsageError("generate writes random_mdp model files; pass --generate random_mdp");
    GeneratedInstanceSpec spec{InstanceKind::random_mdp, config.sizes, config.count, config.seed};
    if (config.horizon) spec.sizes.horizon = *config.horizon;
    const auto models = generate_mdp_instances(spec);

    if (!config.output_path) {
        for (const auto& m : models) out << model_to_json(m);
        return exit_code::ok;
    }
    std::vector<Json> index;
    for (std::size_t i = 0; i < models.size(); ++i) {
        const std::string name = instance_name(i, "json");
        write_atomically(*config.output_path / name, model_to_json(models[i]));
        index.push_back({{"instance", i}, {"file", name}, {"states", models[i].num_states()},
                         {"actions", models[i].num_actions()}, {"noise", models[i].noise_size()},
                         {"horizon", models[i].horizon()}});
    }
    write_atomically(*config.output_path / "index.csv", dump_csv(index));
    return exit_code::ok;
}

}  // namespace

int run_command(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.budget == 0) throw UsageError("--budget must be positive");
        if (config.format != "json" && config.format != "csv") throw UsageError("--format must be json or csv");
        switch (config.command) {
            case Command::solve_dp: return solve_dp(config, out);
            case Command::run_adp: return run_adp(config, out);
            case Command::bound_adp: return bound_adp(config, out);
            case Command::verify_theorem1: return verify_theorem1(config, out);
            case Command::check_equivalence: return check_equivalence(config, out);
            case Command::generate: return generate(config, out);
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return exit_code::budget;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return exit_code::parse;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_code::parse;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code::failure;
    }
    return exit_code::failure;
}

}  // namespace adpbound
