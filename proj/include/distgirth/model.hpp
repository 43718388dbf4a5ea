#pragma once

// The random subgraph model: every edge of a base graph is kept independently
// with probability p = gamma^{4n}, plus the two bad-event families evaluated
// on it (an l-subset stays independent; an s-cycle survives entirely).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "solvers.hpp"

namespace distgirth {

// Edge-inclusion parameters. p is always derived (gamma^{4n}) unless an
// explicit override is given, in which case gamma reports p^{1/(4n)}.
class ModelParams {
public:
    static ModelParams with_gamma(double gamma, int n, std::uint64_t seed) {
        if (!(gamma > 0.0 && gamma < 1.0)) throw InvalidArgument("gamma must lie in (0, 1)");
        if (n < 1) throw InvalidArgument("n must be at least 1");
        return ModelParams(gamma, std::nullopt, n, seed);
    }

    static ModelParams with_p(double p, int n, std::uint64_t seed) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("p must lie in [0, 1]");
        if (n < 1) throw InvalidArgument("n must be at least 1");
        return ModelParams(0.0, p, n, seed);
    }

    int n() const noexcept { return n_; }
    std::uint64_t seed() const noexcept { return seed_; }
    bool has_p_override() const noexcept { return p_override_.has_value(); }

    double p() const noexcept { return p_override_ ? *p_override_ : std::pow(gamma_, 4.0 * n_); }
    double gamma() const noexcept { return p_override_ ? std::pow(*p_override_, 1.0 / (4.0 * n_)) : gamma_; }

    ModelParams with_seed(std::uint64_t seed) const {
        ModelParams m = *this;
        m.seed_ = seed;
        return m;
    }

private:
    ModelParams(double gamma, std::optional<double> p, int n, std::uint64_t seed)
        : gamma_(gamma), p_override_(p), n_(n), seed_(seed) {}

    double gamma_;
    std::optional<double> p_override_;
    int n_;
    std::uint64_t seed_;
};

// Reproducible edge coin flips.
//
// Generator: std::mt19937_64 seeded with the 64-bit seed. Each draw takes the
// next 64-bit output x and forms u = (x >> 11) * 2^-53 in [0, 1); the edge is
// present iff u < p. A fresh sample draws once per edge in increasing edge
// index. Resampling continues the same stream, drawing the resampled edges in
// increasing index order. Restart r of a multi-start search uses seed + r.
class EdgeStream {
public:
    explicit EdgeStream(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) noexcept { return seed + restart; }

inline EdgeSubset sample_subgraph(const Graph& g, const ModelParams& m) {
    EdgeStream stream(m.seed());
    const double p = m.p();
    EdgeSubset sub(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (stream.bernoulli(p)) sub.insert(e);
    return sub;
}

// ln P(G) = |E| ln p + (M - |E|) ln(1 - p), M the base edge count.
inline double log_probability(const EdgeSubset& sub, double p) {
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p must lie in (0, 1)");
    const auto kept = static_cast<double>(sub.size());
    const auto total = static_cast<double>(sub.base().edge_count());
    return kept * std::log(p) + (total - kept) * std::log1p(-p);
}

// ---------------------------------------------------------------------------
// Events

enum class EventKind { IndependentSet, Cycle };

struct BadEvent {
    EventKind kind = EventKind::Cycle;
    // Base edge indices the event depends on, sorted. IndependentSet: the a_i
    // edges spanned by W_i. Cycle: the s edges of the cycle.
    std::vector<std::uint32_t> variable_set;
    // l for subset events, s for cycle events.
    std::uint32_t meta = 0;
    double probability = 0.0;
    // W_i, or the cycle as a vertex sequence.
    std::vector<VertexId> vertices;

    // An independent-set event with no internal edge happens with probability 1.
    bool unavoidable() const noexcept { return kind == EventKind::IndependentSet && variable_set.empty(); }

    bool occurs(const Bitset& mask) const {
        if (kind == EventKind::Cycle)
            return std::all_of(variable_set.begin(), variable_set.end(), [&](std::uint32_t e) { return mask.test(e); });
        return std::none_of(variable_set.begin(), variable_set.end(), [&](std::uint32_t e) { return mask.test(e); });
    }
};

inline double event_probability(EventKind kind, std::size_t variables, double p) {
    const auto a = static_cast<double>(variables);
    return kind == EventKind::Cycle ? std::pow(p, a) : std::pow(1.0 - p, a);
}

struct EnumerationGuard {
    std::uint64_t max_events = 2'000'000;
};

// One event per l-subset W_i, in lexicographic order of W_i.
inline std::vector<BadEvent> enumerate_independent_set_events(const Graph& g, std::size_t l, double p,
                                                               EnumerationGuard guard = {}) {
    if (l < 1 || l > g.size()) throw InvalidArgument("subset size must lie in [1, N]");
    if (binomial(static_cast<unsigned>(g.size()), static_cast<unsigned>(l)) > guard.max_events)
        throw ResourceError("C(N, l) exceeds the event enumeration guard");
    std::vector<BadEvent> out;
    std::vector<VertexId> subset(l);
    for (std::size_t i = 0; i < l; ++i) subset[i] = static_cast<VertexId>(i);
    const auto n = static_cast<VertexId>(g.size());
    while (true) {
        BadEvent ev;
        ev.kind = EventKind::IndependentSet;
        ev.meta = static_cast<std::uint32_t>(l);
        ev.vertices = subset;
        for (std::size_t a = 0; a < l; ++a)
            for (std::size_t b = a + 1; b < l; ++b)
                if (auto idx = g.edge_index(subset[a], subset[b])) ev.variable_set.push_back(static_cast<std::uint32_t>(*idx));
        std::sort(ev.variable_set.begin(), ev.variable_set.end());
        ev.probability = event_probability(ev.kind, ev.variable_set.size(), p);
        out.push_back(std::move(ev));

        // next combination
        std::size_t i = l;
        while (i > 0 && subset[i - 1] == n - l + (i - 1)) --i;
        if (i == 0) break;
        ++subset[i - 1];
        for (std::size_t j = i; j < l; ++j) subset[j] = subset[j - 1] + 1;
    }
    return out;
}

// One event per distinct cycle of each length 3..k, ordered by length and then
// by the canonical cycle enumeration order.
inline std::vector<BadEvent> enumerate_cycle_events(const Graph& g, int k, double p, EnumerationGuard guard = {}) {
    if (k < 3) throw InvalidArgument("k must be at least 3");
    std::vector<BadEvent> out;
    for (int s = 3; s <= k; ++s) {
        for_each_cycle(g, s, [&](std::span<const VertexId> cycle) {
            if (out.size() >= guard.max_events) throw ResourceError("cycle events exceed the enumeration guard");
            BadEvent ev;
            ev.kind = EventKind::Cycle;
            ev.meta = static_cast<std::uint32_t>(s);
            ev.vertices.assign(cycle.begin(), cycle.end());
            for (std::size_t i = 0; i < cycle.size(); ++i)
                ev.variable_set.push_back(
                    static_cast<std::uint32_t>(*g.edge_index(cycle[i], cycle[(i + 1) % cycle.size()])));
            std::sort(ev.variable_set.begin(), ev.variable_set.end());
            ev.probability = event_probability(ev.kind, ev.variable_set.size(), p);
            out.push_back(std::move(ev));
            return true;
        });
    }
    return out;
}

// J(i) split into independent-set neighbours and cycle neighbours by length.
struct Neighborhood {
    std::vector<std::uint32_t> all;
    std::vector<std::uint32_t> subset_events;
    std::map<std::uint32_t, std::vector<std::uint32_t>> cycle_events;  // keyed by s
};

struct DependencyGraph {
    std::vector<Neighborhood> neighborhoods;

    std::size_t size() const noexcept { return neighborhoods.size(); }
    const std::vector<std::uint32_t>& neighbors(std::size_t i) const { return neighborhoods.at(i).all; }
};

// Events are dependent iff their variable sets share an edge.
inline DependencyGraph dependency_graph(std::span<const BadEvent> events) {
    std::uint32_t max_edge = 0;
    for (const auto& ev : events)
        for (auto e : ev.variable_set) max_edge = std::max(max_edge, e + 1);
    std::vector<std::vector<std::uint32_t>> by_edge(max_edge);
    for (std::uint32_t i = 0; i < events.size(); ++i)
        for (auto e : events[i].variable_set) by_edge[e].push_back(i);

    DependencyGraph d;
    d.neighborhoods.resize(events.size());
    std::vector<std::uint32_t> stamp(events.size(), std::numeric_limits<std::uint32_t>::max());
    for (std::uint32_t i = 0; i < events.size(); ++i) {
        auto& nb = d.neighborhoods[i];
        stamp[i] = i;
        for (auto e : events[i].variable_set)
            for (auto j : by_edge[e])
                if (stamp[j] != i) {
                    stamp[j] = i;
                    nb.all.push_back(j);
                }
        std::sort(nb.all.begin(), nb.all.end());
        for (auto j : nb.all) {
            if (events[j].kind == EventKind::IndependentSet)
                nb.subset_events.push_back(j);
            else
                nb.cycle_events[events[j].meta].push_back(j);
        }
    }
    return d;
}

// A fully enumerated event family on G_{4n} (or any graph) at edge
// probability p.
struct EventSystem {
    int n = 1;
    double p = 0.0;
    int k = 0;                     // largest forbidden cycle length, 0 if no cycle events
    std::optional<std::size_t> l;  // subset size, absent if no subset events
    std::vector<BadEvent> events;
    DependencyGraph dependencies;
    std::vector<std::string> warnings;

    std::size_t unavoidable_count() const {
        return static_cast<std::size_t>(
            std::count_if(events.begin(), events.end(), [](const BadEvent& e) { return e.unavoidable(); }));
    }
};

inline EventSystem build_event_system(const Graph& g, int n, double p, int k, std::optional<std::size_t> l,
                                      EnumerationGuard guard = {}) {
    EventSystem sys;
    sys.n = n;
    sys.p = p;
    sys.k = k;
    sys.l = l;
    if (l) sys.events = enumerate_independent_set_events(g, *l, p, guard);
    if (k >= 3) {
        auto cycles = enumerate_cycle_events(g, k, p, guard);
        sys.events.insert(sys.events.end(), std::make_move_iterator(cycles.begin()),
                          std::make_move_iterator(cycles.end()));
    }
    sys.dependencies = dependency_graph(sys.events);
    if (const auto bad = sys.unavoidable_count(); bad > 0)
        sys.warnings.push_back("l = " + std::to_string(*l) + " does not exceed the independence number: " +
                               std::to_string(bad) + " subset events have no internal edge and cannot be avoided");
    return sys;
}

} // namespace distgirth
