#pragma once

// Numeric checks of the Local Lemma conditions and the parameter window used
// to make them hold for the girth/independence event families.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "model.hpp"

namespace distgirth {

inline constexpr double default_tolerance = 1e-12;
// Upper limit on delta_i * P(A_i) in the log-form lemma.
inline constexpr double bollobas_cap = 0.69;

// Abstract event system: probabilities and dependency neighbourhoods only.
struct LLLSystem {
    std::vector<double> probabilities;
    std::vector<std::vector<std::uint32_t>> neighbors;

    std::size_t size() const noexcept { return probabilities.size(); }
};

inline LLLSystem to_lll_system(const EventSystem& sys) {
    LLLSystem out;
    out.probabilities.reserve(sys.events.size());
    for (const auto& e : sys.events) out.probabilities.push_back(e.probability);
    for (const auto& nb : sys.dependencies.neighborhoods) out.neighbors.push_back(nb.all);
    return out;
}

enum class AssignmentStyle { General, Bollobas };

struct LLLAssignment {
    AssignmentStyle style = AssignmentStyle::General;
    std::vector<double> values;  // gamma_i (General) or delta_i (Bollobas)
};

struct MarginReport {
    bool holds = false;
    // General: gamma_i prod(1 - gamma_j) - P(A_i).
    // Bollobas: ln delta_i - sum 2 delta_j P(A_j).
    std::vector<double> margins;
    std::vector<std::size_t> failing;                 // margin below -tolerance
    std::vector<std::size_t> hypothesis_violations;   // Bollobas: delta_i P(A_i) outside (0, 0.69)
    double log_bound = 0.0;                           // ln of the product lower bound
    double bound = 0.0;                               // product lower bound on P(no event), when holds
    std::optional<double> min_margin;
};

namespace detail {

inline void check_shape(const LLLSystem& sys, const LLLAssignment& a, AssignmentStyle expected) {
    if (a.style != expected) throw InvalidArgument("assignment has the wrong style for this check");
    if (a.values.size() != sys.size()) throw InvalidArgument("assignment size differs from event count");
    if (sys.neighbors.size() != sys.size()) throw InvalidArgument("neighbourhood count differs from event count");
    for (const auto& nb : sys.neighbors)
        for (auto j : nb)
            if (j >= sys.size()) throw InvalidArgument("neighbour index out of range");
}

inline void finish(MarginReport& r, double tolerance) {
    for (std::size_t i = 0; i < r.margins.size(); ++i) {
        if (r.margins[i] < -tolerance) r.failing.push_back(i);
        r.min_margin = r.min_margin ? std::min(*r.min_margin, r.margins[i]) : r.margins[i];
    }
    r.holds = r.failing.empty() && r.hypothesis_violations.empty();
    r.bound = r.holds ? std::exp(r.log_bound) : 0.0;
}

} // namespace detail

// P(A_i) <= gamma_i prod_{j in J(i)} (1 - gamma_j) for every i.
inline MarginReport check_general_lll(const LLLSystem& sys, const LLLAssignment& a,
                                      double tolerance = default_tolerance) {
    detail::check_shape(sys, a, AssignmentStyle::General);
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (!(a.values[i] > 0.0 && a.values[i] < 1.0))
            throw InvalidArgument("gamma_" + std::to_string(i) + " must lie in (0, 1)");
    MarginReport r;
    r.margins.resize(sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i) {
        double log_rhs = std::log(a.values[i]);
        for (auto j : sys.neighbors[i]) log_rhs += std::log1p(-a.values[j]);
        r.margins[i] = std::exp(log_rhs) - sys.probabilities[i];
        r.log_bound += std::log1p(-a.values[i]);
    }
    detail::finish(r, tolerance);
    return r;
}

// ln delta_i >= sum_{j in J(i)} 2 delta_j P(A_j), with 0 < delta_i P(A_i) < 0.69.
inline MarginReport check_bollobas_lll(const LLLSystem& sys, const LLLAssignment& a,
                                       double tolerance = default_tolerance) {
    detail::check_shape(sys, a, AssignmentStyle::Bollobas);
    MarginReport r;
    r.margins.resize(sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i) {
        const double t = a.values[i] * sys.probabilities[i];
        if (!(a.values[i] > 0.0 && t > 0.0 && t < bollobas_cap)) r.hypothesis_violations.push_back(i);
        double rhs = 0.0;
        for (auto j : sys.neighbors[i]) rhs += 2.0 * a.values[j] * sys.probabilities[j];
        r.margins[i] = (a.values[i] > 0.0 ? std::log(a.values[i]) : -HUGE_VAL) - rhs;
        r.log_bound += (t < 1.0) ? std::log1p(-t) : -HUGE_VAL;
    }
    detail::finish(r, tolerance);
    return r;
}

// gamma_i = delta_i P(A_i)
inline LLLAssignment bollobas_to_general(const LLLSystem& sys, const LLLAssignment& a) {
    detail::check_shape(sys, a, AssignmentStyle::Bollobas);
    LLLAssignment g{AssignmentStyle::General, {}};
    g.values.reserve(sys.size());
    for (std::size_t i = 0; i < sys.size(); ++i) g.values.push_back(a.values[i] * sys.probabilities[i]);
    return g;
}

// Applies the substitution and re-checks the general condition. Requires the
// log-form condition to hold; a false return means the reduction failed.
inline bool bollobas_implies_general(const LLLSystem& sys, const LLLAssignment& a,
                                     double tolerance = default_tolerance) {
    if (!check_bollobas_lll(sys, a, tolerance).holds)
        throw InvalidArgument("the log-form condition does not hold for this assignment");
    return check_general_lll(sys, bollobas_to_general(sys, a), tolerance).holds;
}

// ---------------------------------------------------------------------------
// Dependency-count bounds

struct DependencyBounds {
    BigInt on_subset_events;                                   // C(N, l): any event vs. X_j
    std::map<int, BigInt> subset_on_cycles;                    // s -> a_i 2^{(s-2)4n}
    std::map<std::pair<int, int>, BigInt> cycle_on_cycles;     // (s1, s2) -> s1 2^{4n(s2-2)}
};

inline DependencyBounds dependency_count_bounds(int n, int k, std::uint64_t vertex_count, std::uint64_t l,
                                                std::uint64_t a_i) {
    if (n < 1 || k < 3) throw InvalidArgument("need n >= 1 and k >= 3");
    DependencyBounds b;
    b.on_subset_events = binomial(static_cast<unsigned>(vertex_count), static_cast<unsigned>(l));
    for (int s = 3; s <= k; ++s) {
        const BigInt power = BigInt(1) << (4 * n * (s - 2));
        b.subset_on_cycles[s] = BigInt(a_i) * power;
        for (int s1 = 3; s1 <= k; ++s1) b.cycle_on_cycles[{s1, s}] = BigInt(s1) * power;
    }
    return b;
}

// Diagnostic surrogate for the o(1) correction in the cycle-on-cycle count:
// log2(count) / (4n(s-2)) - 1.
inline double measured_exponent_correction(std::uint64_t count, int n, int s) {
    if (count == 0 || s < 3 || n < 1) throw InvalidArgument("need count > 0, s >= 3, n >= 1");
    return std::log2(static_cast<double>(count)) / (4.0 * n * (s - 2)) - 1.0;
}

// ---------------------------------------------------------------------------
// Parameter window

struct RecipeParameters {
    int k = 3;
    int n = 1;
    double epsilon = 0.0;
    double delta = 0.0;
    double f = 0.0;
    double gamma = 0.0;
    std::uint64_t l = 1;

    double p() const { return std::pow(gamma, 4.0 * n); }
    double lower() const { return (2.0 - delta) / (4.0 - epsilon); }
    double upper() const { return std::pow(2.0, -(k - 2.0) / (k - 1.0 - f)); }
    // (2 - delta)/(4 - epsilon) < gamma < 2^{-(k-2)/(k-1-f)}, with f < k - 1
    bool valid() const {
        return k >= 3 && n >= 1 && epsilon > 0.0 && epsilon < 4.0 && delta > 0.0 && f > 0.0 && f < k - 1.0 &&
               gamma > 0.0 && gamma < 1.0 && lower() < gamma && gamma < upper();
    }
};

struct GammaInterval {
    double lower = 0.0;
    double upper = 0.0;
    bool nonempty = false;
};

inline double exponent_upper(int k, double f) { return std::pow(2.0, -(k - 2.0) / (k - 1.0 - f)); }

inline GammaInterval feasible_gamma_interval(int k, double epsilon, double delta, double f) {
    if (k < 3) throw InvalidArgument("k must be at least 3");
    if (!(epsilon > 0.0 && epsilon < 4.0)) throw InvalidArgument("epsilon must lie in (0, 4)");
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
    if (!(f > 0.0 && f < k - 1.0)) throw InvalidArgument("f must lie in (0, k - 1)");
    GammaInterval r;
    r.lower = (2.0 - delta) / (4.0 - epsilon);
    r.upper = exponent_upper(k, f);
    r.nonempty = r.lower < r.upper;
    return r;
}

// s - 2 + (s - 1 - f) log2(gamma); negative for s = 3..k is the exponent condition.
inline double verify_exponent_condition(int s, double f, double gamma) {
    if (s < 3) throw InvalidArgument("s must be at least 3");
    if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
    return s - 2.0 + (s - 1.0 - f) * std::log2(gamma);
}

// l = ceil((2 - delta)^{4n}), at least 1.
inline std::uint64_t subset_size(double delta, int n) {
    if (delta >= 2.0) return 1;
    const double v = std::ceil(std::pow(2.0 - delta, 4.0 * n));
    return v < 1.0 ? 1 : static_cast<std::uint64_t>(v);
}

// Picks epsilon at the midpoint of (0, 4 - 2^{1 + (k-2)/(k-1)}), f as half the
// largest value keeping the gamma window nonempty, gamma at the window midpoint
// (lower endpoint clamped at 0).
inline RecipeParameters choose_parameters(int k, double delta, int n = 1) {
    if (k < 3) throw InvalidArgument("k must be at least 3");
    if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
    if (n < 1) throw InvalidArgument("n must be at least 1");
    const double eps_max = 4.0 - std::pow(2.0, 1.0 + (k - 2.0) / (k - 1.0));
    if (!(eps_max > 0.0)) throw InvalidArgument("no feasible epsilon for k = " + std::to_string(k));
    RecipeParameters out;
    out.k = k;
    out.n = n;
    out.delta = delta;
    out.epsilon = eps_max / 2.0;
    const double lower = (2.0 - delta) / (4.0 - out.epsilon);
    double f_max = k - 1.0;
    if (lower > 0.0) {
        if (!(lower < exponent_upper(k, 0.0)))
            throw InvalidArgument("no feasible window for k = " + std::to_string(k) + ", delta = " + std::to_string(delta));
        f_max = k - 1.0 - (k - 2.0) / (-std::log2(lower));
    }
    out.f = f_max / 2.0;
    out.gamma = (std::max(lower, 0.0) + exponent_upper(k, out.f)) / 2.0;
    out.l = subset_size(delta, n);
    if (!out.valid()) throw InvalidArgument("parameter choice failed validation");
    return out;
}

// ---------------------------------------------------------------------------
// Recipe multipliers and the finite check

// delta^x = exp(gamma^{4n(1+f)} a), i.e. exp(p^{1+f} a).
inline double subset_multiplier(double p, double f, std::uint64_t a) {
    return std::exp(std::pow(p, 1.0 + f) * static_cast<double>(a));
}

inline double subset_multiplier_from_gamma(double gamma, int n, double f, std::uint64_t a) {
    return std::exp(std::pow(gamma, 4.0 * n * (1.0 + f)) * static_cast<double>(a));
}

inline constexpr double cycle_multiplier = std::numbers::e;

struct RecipeMultipliers {
    LLLAssignment assignment{AssignmentStyle::Bollobas, {}};
    std::vector<std::size_t> hypothesis_violations;  // delta_i P(A_i) outside (0, 0.69)
};

inline RecipeMultipliers recipe_multipliers(const EventSystem& sys, double f) {
    if (!(f > 0.0)) throw InvalidArgument("f must be positive");
    RecipeMultipliers out;
    out.assignment.values.reserve(sys.events.size());
    for (std::size_t i = 0; i < sys.events.size(); ++i) {
        const auto& ev = sys.events[i];
        const double d = ev.kind == EventKind::Cycle ? cycle_multiplier
                                                     : subset_multiplier(sys.p, f, ev.variable_set.size());
        out.assignment.values.push_back(d);
        const double t = d * ev.probability;
        if (!(t > 0.0 && t < bollobas_cap)) out.hypothesis_violations.push_back(i);
    }
    return out;
}

// Smallest n in [1, n_max] at which e p^3 < 0.69 (cycle events, p = gamma^{4n})
// and delta^x (1-p)^a < 0.69 for a = min_edges(n). nullopt if none.
inline std::optional<int> first_n_hypothesis_holds(double gamma, double f, const std::function<double(int)>& min_edges,
                                                   int n_max) {
    for (int n = 1; n <= n_max; ++n) {
        const double p = std::pow(gamma, 4.0 * n);
        const double a = min_edges(n);
        const double ty = cycle_multiplier * p * p * p;
        const double log_tx = std::pow(p, 1.0 + f) * a + a * std::log1p(-p);
        if (ty > 0.0 && ty < bollobas_cap && log_tx < std::log(bollobas_cap)) return n;
    }
    return std::nullopt;
}

struct FiniteReport {
    bool holds = false;
    bool infeasible = false;  // an unavoidable subset event is present
    std::vector<double> margins;  // LHS - RHS per event, event order
    std::vector<std::size_t> hypothesis_violations;
    MarginReport bollobas;  // the log-form lemma with exact probabilities
};

// Evaluates both lines of the inequality system with the actual a_j and the
// actual neighbourhoods: for each event,
//   ln delta_i - 2 sum_{J^x} delta^x_j e^{-p a_j} - 2 sum_s sum_{J^y_s} e p^s.
inline FiniteReport verify_finite_system(const EventSystem& sys, double f, double tolerance = default_tolerance) {
    FiniteReport r;
    r.infeasible = sys.unavoidable_count() > 0;
    const auto mult = recipe_multipliers(sys, f);
    r.hypothesis_violations = mult.hypothesis_violations;
    const auto& delta = mult.assignment.values;

    std::vector<double> term(sys.events.size());
    for (std::size_t j = 0; j < sys.events.size(); ++j) {
        const auto& ev = sys.events[j];
        term[j] = ev.kind == EventKind::Cycle
                      ? cycle_multiplier * std::pow(sys.p, static_cast<double>(ev.meta))
                      : delta[j] * std::exp(-sys.p * static_cast<double>(ev.variable_set.size()));
    }
    r.margins.resize(sys.events.size());
    bool ok = true;
    for (std::size_t i = 0; i < sys.events.size(); ++i) {
        const auto& nb = sys.dependencies.neighborhoods.at(i);
        double rhs = 0.0;
        for (auto j : nb.subset_events) rhs += 2.0 * term[j];
        for (const auto& [s, js] : nb.cycle_events)
            for (auto j : js) rhs += 2.0 * term[j];
        r.margins[i] = std::log(delta[i]) - rhs;
        if (r.margins[i] < -tolerance) ok = false;
    }
    r.bollobas = check_bollobas_lll(to_lll_system(sys), mult.assignment, tolerance);
    r.holds = ok && !r.infeasible && r.hypothesis_violations.empty();
    return r;
}

} // namespace distgirth
