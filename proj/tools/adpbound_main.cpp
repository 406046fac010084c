#include "adpbound/harness.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* sub, adpbound::ExperimentConfig& c) {
    sub->add_option("--K", c.horizon, "Horizon override")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "Seed for generated instances and Monte Carlo draws");
    sub->add_option("--budget", c.budget, "Enumeration budget")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.output_path, "Report file (single) or directory (sweep)");
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--jobs", c.jobs, "Parallel instances in a sweep")->check(CLI::PositiveNumber);
    sub->add_flag("--strict", c.strict, "Exit nonzero on degenerate instances");
}

void add_model(CLI::App* sub, adpbound::ExperimentConfig& c) {
    sub->add_option("--model", c.model_path, "Model JSON file");
}

void add_scheme(CLI::App* sub, adpbound::ExperimentConfig& c) {
    sub->add_option("--scheme", c.scheme, "EVTG approximation")
        ->check(CLI::IsMember({"myopic", "rollout", "linearq", "exact_evtg"}));
    sub->add_option("--base-policy", c.base_policy_path, "Rollout base policy JSON ([stage][state])");
    sub->add_option("--theta", c.theta_path, "Linear-Q weights JSON ([action][feature])");
}

void add_generator(CLI::App* sub, adpbound::ExperimentConfig& c, std::string& kind) {
    sub->add_option("--generate", kind, "Instance kind")
        ->check(CLI::IsMember({"coverage_submodular", "random_monotone_marginals", "random_string_fn", "random_mdp"}));
    sub->add_option("--count", c.count, "Number of generated instances");
    sub->add_option("--ground", c.sizes.ground, "Ground set size for string instances")->check(CLI::PositiveNumber);
    sub->add_option("--states", c.sizes.states, "States per generated MDP")->check(CLI::PositiveNumber);
    sub->add_option("--actions", c.sizes.actions, "Actions per generated MDP")->check(CLI::PositiveNumber);
    sub->add_option("--noise", c.sizes.noise, "Noise symbols per generated MDP")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
    using adpbound::Command;
    adpbound::ExperimentConfig config;
    std::string kind;

    CLI::App app{"Curvature bounds for greedy string optimization and ADP schemes"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve-dp", "Backward Bellman induction");
    add_model(solve, config);

    auto* run = app.add_subcommand("run-adp", "Run an ADP scheme on every noise path");
    add_model(run, config);
    add_scheme(run, config);
    auto* exact = run->add_flag("--exact", "Exact expectation only (default)");
    run->add_option("--mc", config.mc_samples, "Also estimate by Monte Carlo with this many samples")
        ->check(CLI::PositiveNumber)
        ->excludes(exact);

    auto* bound = app.add_subcommand("bound-adp", "Curvature bound report for an ADP scheme");
    add_model(bound, config);
    add_scheme(bound, config);
    add_generator(bound, config, kind);

    auto* verify = app.add_subcommand("verify-theorem1", "Greedy curvature bound sweep over string instances");
    add_generator(verify, config, kind);

    auto* equiv = app.add_subcommand("check-equivalence", "ADP, path-wise greedy and policy greedy agreement");
    add_model(equiv, config);
    add_scheme(equiv, config);
    add_generator(equiv, config, kind);

    auto* gen = app.add_subcommand("generate-mdp", "Write random MDP model files");
    add_generator(gen, config, kind);

    for (auto* sub : {solve, run, bound, verify, equiv, gen}) add_common(sub, config);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : adpbound::exit_code::parse;
    }

    try {
        config.command = adpbound::parse_command(app.get_subcommands().front()->get_name());
        if (!kind.empty()) config.generate = adpbound::parse_instance_kind(kind);
        if (config.horizon) config.sizes.horizon = *config.horizon;
    } catch (const std::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return adpbound::exit_code::parse;
    }
    return adpbound::run_command(config, std::cout, std::cerr);
}
