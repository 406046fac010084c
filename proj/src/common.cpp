#include "adpbound/common.hpp"

#include <algorithm>
#include <limits>

namespace adpbound {

namespace {

std::string budget_message(std::string_view what, std::uint64_t required, std::uint64_t budget) {
    std::string msg{what};
    msg += ": enumeration needs ";
    msg += required == std::numeric_limits<std::uint64_t>::max() ? std::string{"> 2^64"}
                                                                   : std::to_string(required);
    msg += " evaluations, budget is ";
    msg += std::to_string(budget);
    return msg;
}

}  // namespace

BudgetExceeded::BudgetExceeded(std::string_view what, std::uint64_t required, std::uint64_t budget)
    : std::runtime_error(budget_message(what, required, budget)), required_(required), budget_(budget) {}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (a != 0 && b > kMax / a) return kMax;
    return a * b;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    return b > kMax - a ? kMax : a + b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) out = saturating_mul(out, base);
    return out;
}

void require_budget(std::string_view what, std::uint64_t required, std::uint64_t budget) {
    if (required > budget) throw BudgetExceeded(what, required, budget);
}

std::vector<std::size_t> tie_set(std::span<const double> values) {
    std::vector<std::size_t> out;
    if (values.empty()) return out;
    const double best = *std::max_element(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= best - kTolerance) out.push_back(i);
    }
    return out;
}

std::size_t argmax_min_index(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("argmax over an empty set");
    const double best = *std::max_element(values.begin(), values.end());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] >= best - kTolerance) return i;
    }
    return 0;  // unreachable
}

}  // namespace adpbound
