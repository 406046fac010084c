#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adpbound {

/// Absolute tolerance used for every comparison between computed values.
inline constexpr double kTolerance = 1e-12;

/// |eta| below this is treated as zero and the analytic limit of the bound is used.
inline constexpr double kEtaZeroBand = 1e-9;

/// Default cap on the number of leaf evaluations any exhaustive enumeration may perform.
inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// Thrown when an exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::string_view what, std::uint64_t required, std::uint64_t budget);

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

/// base^exp, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp);

/// a*b and a+b, saturating at UINT64_MAX.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);

void require_budget(std::string_view what, std::uint64_t required, std::uint64_t budget);

/// Indices whose value lies within kTolerance of the maximum, ascending.
std::vector<std::size_t> tie_set(std::span<const double> values);

/// Smallest index whose value lies within kTolerance of the maximum.
/// `values` must be non-empty.
std::size_t argmax_min_index(std::span<const double> values);

}  // namespace adpbound
