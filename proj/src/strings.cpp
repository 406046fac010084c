#include "adpbound/strings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace adpbound {

bool is_prefix(std::span<const ActionId> prefix, std::span<const ActionId> s) {
    return prefix.size() <= s.size() && std::equal(prefix.begin(), prefix.end(), s.begin());
}

StringObjective::StringObjective(Evaluator evaluate, std::size_t ground_size, std::size_t horizon)
    : evaluate_(std::move(evaluate)), ground_size_(ground_size), horizon_(horizon) {
    if (!evaluate_) throw std::invalid_argument("string objective needs an evaluator");
}

double StringObjective::operator()(std::span<const ActionId> s) const {
    if (s.empty()) return 0.0;
    return evaluate_(s);
}

// ---------------------------------------------------------------------------
// StringTable

std::uint64_t StringTable::string_count(std::size_t n, std::size_t horizon) {
    std::uint64_t total = 0;
    for (std::size_t l = 0; l <= horizon; ++l) total = saturating_add(total, saturating_pow(n, l));
    return total;
}

StringTable StringTable::build(const StringObjective& f, std::size_t horizon, std::uint64_t budget) {
    const std::size_t n = f.ground_size();
    if (n == 0) throw std::invalid_argument("empty ground set");
    require_budget("string table", string_count(n, horizon), budget);

    StringTable t;
    t.ground_size_ = n;
    t.horizon_ = horizon;
    std::uint64_t offset = 0;
    for (std::size_t l = 0; l <= horizon; ++l) {
        t.powers_.push_back(saturating_pow(n, l));
        t.offsets_.push_back(offset);
        offset += t.powers_.back();
    }
    t.values_.resize(offset);

    ActionString s;
    for (std::size_t l = 0; l <= horizon; ++l) {
        s.assign(l, 0);
        for (std::uint64_t rank = 0; rank < t.powers_[l]; ++rank) {
            t.values_[t.offsets_[l] + rank] = f(s);
            // odometer increment, last position fastest
            for (std::size_t pos = l; pos-- > 0;) {
                if (++s[pos] < n) break;
                s[pos] = 0;
            }
        }
    }
    return t;
}

double StringTable::at(std::size_t length, std::uint64_t rank) const {
    return values_[offsets_[length] + rank];
}

double StringTable::at(std::span<const ActionId> s) const {
    if (s.size() > horizon_) throw std::out_of_range("string longer than table horizon");
    std::uint64_t rank = 0;
    for (ActionId a : s) {
        if (a >= ground_size_) throw std::out_of_range("action outside ground set");
        rank = rank * ground_size_ + a;
    }
    return at(s.size(), rank);
}

ActionString StringTable::decode(std::size_t length, std::uint64_t rank) const {
    ActionString s(length);
    for (std::size_t pos = length; pos-- > 0;) {
        s[pos] = static_cast<ActionId>(rank % ground_size_);
        rank /= ground_size_;
    }
    return s;
}

namespace {

std::uint64_t rank_of(std::span<const ActionId> s, std::size_t n) {
    std::uint64_t rank = 0;
    for (ActionId a : s) rank = rank * n + a;
    return rank;
}

void require_trace(const StringTable& table, const GreedyTrace& greedy) {
    if (greedy.string.size() != table.horizon())
        throw std::invalid_argument("greedy trace length differs from the horizon");
}

}  // namespace

// ---------------------------------------------------------------------------
// Greedy and optimal strategies

bool operator==(const GreedyTrace& a, const GreedyTrace& b) {
    return a.string == b.string && a.prefix_values == b.prefix_values && a.tie_sets == b.tie_sets;
}

GreedyTrace greedy_string(const StringObjective& f, std::size_t horizon) {
    if (horizon < 1) throw std::invalid_argument("greedy strategy needs K >= 1");
    const std::size_t n = f.ground_size();
    if (n == 0) throw std::invalid_argument("empty ground set");

    GreedyTrace trace;
    ActionString candidate;
    std::vector<double> values(n);
    for (std::size_t stage = 0; stage < horizon; ++stage) {
        candidate = trace.string;
        candidate.push_back(0);
        for (std::size_t b = 0; b < n; ++b) {
            candidate.back() = static_cast<ActionId>(b);
            values[b] = f(candidate);
        }
        auto ties = tie_set(values);
        const auto chosen = static_cast<ActionId>(ties.front());
        trace.string.push_back(chosen);
        trace.prefix_values.push_back(values[chosen]);
        trace.tie_sets.emplace_back(ties.begin(), ties.end());
    }
    return trace;
}

std::optional<GreedyTrace> trace_for_string(const StringObjective& f, std::span<const ActionId> s) {
    const std::size_t n = f.ground_size();
    GreedyTrace trace;
    ActionString candidate;
    std::vector<double> values(n);
    for (ActionId chosen : s) {
        if (chosen >= n) return std::nullopt;
        candidate = trace.string;
        candidate.push_back(0);
        for (std::size_t b = 0; b < n; ++b) {
            candidate.back() = static_cast<ActionId>(b);
            values[b] = f(candidate);
        }
        auto ties = tie_set(values);
        if (std::find(ties.begin(), ties.end(), chosen) == ties.end()) return std::nullopt;
        trace.string.push_back(chosen);
        trace.prefix_values.push_back(values[chosen]);
        trace.tie_sets.emplace_back(ties.begin(), ties.end());
    }
    return trace;
}

OptimalString optimal_string_bruteforce(const StringTable& table) {
    const std::size_t K = table.horizon();
    const std::uint64_t count = table.strings_of_length(K);
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t r = 0; r < count; ++r) best = std::max(best, table.at(K, r));
    for (std::uint64_t r = 0; r < count; ++r) {
        if (table.at(K, r) >= best - kTolerance) return {table.decode(K, r), table.at(K, r)};
    }
    return {};
}

OptimalString optimal_string_bruteforce(const StringObjective& f, std::size_t horizon,
                                        std::uint64_t budget) {
    require_budget("optimal string", saturating_pow(f.ground_size(), horizon), budget);
    return optimal_string_bruteforce(StringTable::build(f, horizon, budget));
}

// ---------------------------------------------------------------------------
// Property checks

PropertyCheck check_prefix_monotone(const StringTable& table) {
    PropertyCheck out;
    for (std::size_t l = 1; l <= table.horizon(); ++l) {
        for (std::uint64_t r = 0; r < table.strings_of_length(l); ++r) {
            const double fn = table.at(l, r);
            // prefix of length m has rank r / n^(l-m)
            for (std::size_t m = 0; m < l; ++m) {
                const std::uint64_t prefix_rank = r / table.strings_of_length(l - m);
                const double slack = fn - table.at(m, prefix_rank);
                if (slack < -kTolerance) {
                    out.holds = false;
                    out.witness = PropertyWitness{table.decode(m, prefix_rank), table.decode(l, r),
                                                  std::nullopt, slack};
                    return out;
                }
            }
        }
    }
    return out;
}

PropertyCheck check_prefix_monotone(const StringObjective& f, std::size_t horizon,
                                    std::uint64_t budget) {
    return check_prefix_monotone(StringTable::build(f, horizon, budget));
}

PropertyCheck check_diminishing_return(const StringTable& table) {
    const std::size_t n = table.ground_size();
    PropertyCheck out;
    if (table.horizon() == 0) return out;
    for (std::size_t l = 1; l + 1 <= table.horizon(); ++l) {
        for (std::uint64_t r = 0; r < table.strings_of_length(l); ++r) {
            const double fn = table.at(l, r);
            for (std::size_t m = 0; m < l; ++m) {
                const std::uint64_t prefix_rank = r / table.strings_of_length(l - m);
                const double fm = table.at(m, prefix_rank);
                for (std::size_t a = 0; a < n; ++a) {
                    const double early = table.at(m + 1, prefix_rank * n + a) - fm;
                    const double late = table.at(l + 1, r * n + a) - fn;
                    const double slack = early - late;
                    if (slack < -kTolerance) {
                        out.holds = false;
                        out.witness = PropertyWitness{table.decode(m, prefix_rank), table.decode(l, r),
                                                      static_cast<ActionId>(a), slack};
                        return out;
                    }
                }
            }
        }
    }
    return out;
}

PropertyCheck check_diminishing_return(const StringObjective& f, std::size_t horizon,
                                       std::uint64_t budget) {
    return check_diminishing_return(StringTable::build(f, horizon, budget));
}

// ---------------------------------------------------------------------------
// Curvatures

CurvatureValue total_curvature_eta(const StringTable& table, const GreedyTrace& greedy) {
    require_trace(table, greedy);
    const std::size_t n = table.ground_size();
    const std::size_t K = table.horizon();
    const auto Kd = static_cast<double>(K);
    const std::uint64_t full = table.strings_of_length(K);

    CurvatureValue out;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 <= K; ++i) {
        const std::span<const ActionId> prefix(greedy.string.data(), i);
        const std::uint64_t prefix_rank = rank_of(prefix, n);
        const double fg = table.at(i, prefix_rank);
        if (fg <= kTolerance) {
            out.skipped += full;
            continue;
        }
        const double remaining = static_cast<double>(K - i);
        const std::uint64_t tail_count = table.strings_of_length(K - i);
        for (std::uint64_t r = 0; r < full; ++r) {
            const double fm = table.at(K, r);
            const double fcont = table.at(K, prefix_rank * tail_count + r % tail_count);
            const double term = (Kd / remaining) * (1.0 - (fcont - (remaining / Kd) * fm) / fg);
            ++out.terms;
            if (term > best) {
                best = term;
                out.argmax_string = table.decode(K, r);
                out.argmax_stage = i;
            }
        }
    }
    out.defined = out.terms > 0;
    out.value = out.defined ? best : 0.0;
    return out;
}

CurvatureValue total_curvature_eta(const StringObjective& f, const GreedyTrace& greedy,
                                   std::size_t horizon, std::uint64_t budget) {
    return total_curvature_eta(StringTable::build(f, horizon, budget), greedy);
}

CurvatureValue forward_curvature_sigma(const StringTable& table, const GreedyTrace& greedy) {
    require_trace(table, greedy);
    const std::size_t n = table.ground_size();
    const std::size_t K = table.horizon();

    CurvatureValue out;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < K; ++i) {
        const std::span<const ActionId> prefix(greedy.string.data(), i);
        const std::uint64_t prefix_rank = rank_of(prefix, n);
        const double fg = table.at(i, prefix_rank);
        for (std::size_t j = i + 1; j <= K; ++j) {
            const std::size_t len = j - i;
            const std::uint64_t seg_count = table.strings_of_length(len);
            for (std::uint64_t r = 0; r < seg_count; ++r) {
                const std::uint64_t last = r % n;
                const double denom = table.at(j, prefix_rank * seg_count + r) -
                                     table.at(j - 1, prefix_rank * (seg_count / n) + r / n);
                if (denom <= kTolerance) {
                    ++out.skipped;
                    continue;
                }
                const double numer = table.at(i + 1, prefix_rank * n + last) - fg;
                const double term = 1.0 - numer / denom;
                ++out.terms;
                if (term > best) {
                    best = term;
                    out.argmax_string = table.decode(len, r);
                    out.argmax_stage = i;
                }
            }
        }
    }
    out.defined = out.terms > 0;
    out.value = out.defined ? best : 0.0;
    return out;
}

CurvatureValue forward_curvature_sigma(const StringObjective& f, const GreedyTrace& greedy,
                                       std::size_t horizon, std::uint64_t budget) {
    return forward_curvature_sigma(StringTable::build(f, horizon, budget), greedy);
}

// ---------------------------------------------------------------------------
// Bounds

double curvature_bound(double eta, double sigma, std::size_t horizon) {
    if (horizon < 1) throw std::invalid_argument("bound needs K >= 1");
    if (std::abs(eta) < kEtaZeroBand) return 1.0 - sigma;
    const auto K = static_cast<double>(horizon);
    return (1.0 - std::pow(1.0 - eta * (1.0 - sigma) / K, K)) / eta;
}

double asymptotic_bound(double eta, double sigma) {
    if (std::abs(eta) < kEtaZeroBand) return 1.0 - sigma;
    return (1.0 - std::exp(-eta * (1.0 - sigma))) / eta;
}

CurvatureReport analyze_greedy(const StringTable& table, const GreedyTrace& greedy) {
    require_trace(table, greedy);
    const std::size_t K = table.horizon();
    CurvatureReport rep;

    const auto eta = total_curvature_eta(table, greedy);
    const auto sigma = forward_curvature_sigma(table, greedy);
    rep.eta = eta.value;
    rep.sigma = sigma.value;
    rep.eta_defined = eta.defined;
    rep.sigma_defined = sigma.defined;
    rep.skipped_term_count = eta.skipped + sigma.skipped;
    if (!eta.defined) rep.flags.emplace_back("eta_undefined");
    if (!sigma.defined) rep.flags.emplace_back("sigma_undefined");
    rep.eta_nonpositive = eta.defined && eta.value <= -kEtaZeroBand;
    if (rep.eta_nonpositive) rep.flags.emplace_back("eta_nonpositive");

    rep.bound_finite_K = curvature_bound(rep.eta, rep.sigma, K);
    rep.bound_asymptotic = asymptotic_bound(rep.eta, rep.sigma);

    rep.greedy_string = greedy.string;
    rep.greedy_value = table.at(greedy.string);
    const auto opt = optimal_string_bruteforce(table);
    rep.optimal_string = opt.string;
    rep.optimal_value = opt.value;

    rep.prefix_monotone = check_prefix_monotone(table).holds;
    rep.diminishing_return = check_diminishing_return(table).holds;
    if (!rep.prefix_monotone) {
        rep.flags.emplace_back("not_prefix_monotone");
        rep.flags.emplace_back("optimum_over_length_K_only");
    }

    if (rep.optimal_value <= kTolerance && rep.greedy_value <= kTolerance) {
        rep.ratio = 1.0;
        rep.degenerate_zero_optimum = true;
        rep.flags.emplace_back("zero_optimum");
    } else {
        rep.ratio = rep.greedy_value / rep.optimal_value;
    }
    rep.bound_holds = !rep.prefix_monotone || rep.ratio >= rep.bound_finite_K - kTolerance;
    return rep;
}

CurvatureReport verify_greedy_bound(const StringObjective& f, std::size_t horizon, std::uint64_t budget) {
    const auto table = StringTable::build(f, horizon, budget);
    return analyze_greedy(table, greedy_string(f, horizon));
}

std::vector<InequalityCheck> bound_chain_inequalities(const StringTable& table,
                                                      const GreedyTrace& greedy,
                                                      const CurvatureReport& report) {
    require_trace(table, greedy);
    const std::size_t K = table.horizon();
    const auto Kd = static_cast<double>(K);
    const double step = (1.0 - report.sigma) / Kd;
    const double decay = 1.0 - report.eta * step;
    const double fo = report.optimal_value;
    const auto& g = greedy.prefix_values;

    std::vector<InequalityCheck> out;
    auto push = [&](std::string name, std::size_t stage, double lhs, double rhs) {
        out.push_back({std::move(name), stage, lhs, rhs, lhs - rhs, lhs - rhs >= -kTolerance});
    };

    push("first_step", 1, g[0], step * fo);
    for (std::size_t i = 1; i + 1 <= K; ++i) {
        push("step", i, g[i], step * fo + decay * g[i - 1]);
    }
    double chained = std::pow(decay, Kd - 1.0) * g[0];
    for (std::size_t j = 0; j + 1 < K; ++j) chained += std::pow(decay, static_cast<double>(j)) * step * fo;
    push("chained", K, g[K - 1], chained);
    push("final", K, g[K - 1], report.bound_finite_K * fo);
    return out;
}

std::vector<InequalityCheck> bound_chain_inequalities(const StringObjective& f, std::size_t horizon,
                                                      std::uint64_t budget) {
    const auto table = StringTable::build(f, horizon, budget);
    const auto greedy = greedy_string(f, horizon);
    return bound_chain_inequalities(table, greedy, analyze_greedy(table, greedy));
}

}  // namespace adpbound
