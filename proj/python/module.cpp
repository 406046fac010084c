#include "adpbound/generators.hpp"
#include "adpbound/model_io.hpp"
#include "adpbound/report.hpp"
#include "adpbound/surrogate.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace adpbound;

namespace {

// Reports cross the boundary as JSON text; the Python side parses it.
std::string as_text(const Json& doc) { return dump_json(doc); }

PolicyString to_policy(const std::vector<std::vector<Action>>& tables) {
    PolicyString p;
    for (const auto& t : tables) p.push_back({t});
    return p;
}

EvtgApproximator scheme(const MdpModel& m, const std::string& name, const std::vector<std::vector<Action>>& base,
                        const std::vector<std::vector<double>>& theta) {
    if (name == "myopic") return myopic_w(m);
    if (name == "exact_evtg") return exact_evtg_w(m);
    if (name == "rollout") return rollout_w(m, {base.empty() ? constant_policy(m, 0, m.horizon()) : to_policy(base)});
    if (name == "linearq") return linear_q_w(m, theta);
    throw std::invalid_argument("unknown scheme '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Curvature bounds for greedy string optimization and ADP schemes";

    py::register_exception<ParseError>(mod, "ParseError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(mod, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<MdpModel>(mod, "MdpModel")
        .def_property_readonly("num_states", &MdpModel::num_states)
        .def_property_readonly("num_actions", &MdpModel::num_actions)
        .def_property_readonly("horizon", &MdpModel::horizon)
        .def_property_readonly("initial_state", &MdpModel::initial_state)
        .def("with_horizon", &MdpModel::with_horizon)
        .def("to_json", &model_to_json);

    mod.def("parse_model", [](const std::string& text) { return parse_model(text); });
    mod.def("load_model", [](const std::string& path) { return load_model(path); });
    mod.def("generate_mdps", [](std::size_t count, std::uint64_t seed, std::size_t states, std::size_t actions,
                                std::size_t noise, std::size_t horizon) {
        InstanceSizes sizes;
        sizes.states = states;
        sizes.actions = actions;
        sizes.noise = noise;
        sizes.horizon = horizon;
        return generate_mdp_instances({InstanceKind::random_mdp, sizes, count, seed});
    }, py::arg("count"), py::arg("seed"), py::arg("states") = 3, py::arg("actions") = 2, py::arg("noise") = 2,
       py::arg("horizon") = 3);

    mod.def("solve_dp", [](const MdpModel& m) { return as_text(to_json(m, bellman_solve(m))); });
    mod.def("evaluate_policy", [](const MdpModel& m, const std::vector<std::vector<Action>>& p, std::uint64_t budget) {
        const auto policy = to_policy(p);
        validate_policy(m, policy);
        return evaluate_policy_exact(m, policy, budget);
    }, py::arg("model"), py::arg("policy"), py::arg("budget") = kDefaultBudget);

    mod.def("run_adp", [](const MdpModel& m, const std::string& name, const std::vector<std::vector<Action>>& base,
                          const std::vector<std::vector<double>>& theta, std::uint64_t budget) {
        return as_text(to_json(adp_forward(m, scheme(m, name, base, theta), budget)));
    }, py::arg("model"), py::arg("scheme") = "myopic", py::arg("base_policy") = std::vector<std::vector<Action>>{},
       py::arg("theta") = std::vector<std::vector<double>>{}, py::arg("budget") = kDefaultBudget);

    mod.def("bound_adp", [](const MdpModel& m, const std::string& name, const std::vector<std::vector<Action>>& base,
                            const std::vector<std::vector<double>>& theta, std::uint64_t budget) {
        return as_text(to_json(adp_bound_report(m, scheme(m, name, base, theta), budget)));
    }, py::arg("model"), py::arg("scheme") = "myopic", py::arg("base_policy") = std::vector<std::vector<Action>>{},
       py::arg("theta") = std::vector<std::vector<double>>{}, py::arg("budget") = kDefaultBudget);

    mod.def("verify_greedy_bound", [](const std::function<double(std::vector<ActionId>)>& f, std::size_t ground,
                                      std::size_t horizon, std::uint64_t budget) {
        // the callable is tabulated once up front, under the GIL
        StringObjective obj([&f](std::span<const ActionId> s) { return f({s.begin(), s.end()}); }, ground, horizon);
        const auto table = StringTable::build(obj, horizon, budget);
        const StringObjective cached([&table](std::span<const ActionId> s) { return table.at(s); }, ground, horizon);
        const auto rep = analyze_greedy(table, greedy_string(cached, horizon));
        Json doc = to_json(rep);
        doc["chain"] = to_json(bound_chain_inequalities(table, greedy_string(cached, horizon), rep));
        return as_text(doc);
    }, py::arg("f"), py::arg("ground_size"), py::arg("horizon"), py::arg("budget") = kDefaultBudget);

    mod.def("curvature_bound", &curvature_bound, py::arg("eta"), py::arg("sigma"), py::arg("horizon"));
    mod.def("asymptotic_bound", &asymptotic_bound, py::arg("eta"), py::arg("sigma"));
}
