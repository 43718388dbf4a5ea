#pragma once

// Constructive search for subgraphs of G_{4n} with girth > k and small
// independence number, and the certificates that record them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "model.hpp"
#include "solvers.hpp"

namespace distgirth {

enum class SearchMethod { MoserTardos, Deletion, External };

inline const char* to_string(SearchMethod m) {
    switch (m) {
    case SearchMethod::MoserTardos: return "mt";
    case SearchMethod::Deletion: return "delete";
    case SearchMethod::External: return "external";
    }
    return "?";
}

// How a subgraph was produced; copied verbatim into its certificate.
struct Provenance {
    SearchMethod method = SearchMethod::External;
    std::uint64_t seed = 0;
    bool p_override = false;
    double gamma_or_p = 0.0;  // p if p_override, else gamma
    std::uint64_t resamples = 0;
    std::uint64_t deletions = 0;
};

inline Provenance provenance_of(SearchMethod method, const ModelParams& m) {
    Provenance p;
    p.method = method;
    p.seed = m.seed();
    p.p_override = m.has_p_override();
    p.gamma_or_p = m.has_p_override() ? m.p() : m.gamma();
    return p;
}

struct GirthCertificate {
    int n = 1;
    int k = 3;
    std::uint64_t vertex_count = 0;
    Bitset mask;                       // over the base edge list
    std::uint64_t edge_count = 0;      // edges kept
    ExtendedCount girth{0};            // > k
    std::uint64_t l = 0;               // alpha <= l
    std::uint64_t alpha = 0;
    bool alpha_exact = true;
    std::uint64_t chi_lower = 0;       // ceil(N / l)
    double empirical_rate = 0.0;       // chi_lower^{1/(4n)}
    Provenance provenance;
    std::string solver = solver_version;
};

enum class RejectionReason { ShortCycle, IndependentSetTooLarge, AlphaUnresolved };

inline const char* to_string(RejectionReason r) {
    switch (r) {
    case RejectionReason::ShortCycle: return "short_cycle";
    case RejectionReason::IndependentSetTooLarge: return "independent_set_too_large";
    case RejectionReason::AlphaUnresolved: return "alpha_unresolved";
    }
    return "?";
}

struct CertificationRejection {
    RejectionReason reason = RejectionReason::ShortCycle;
    std::string message;
    std::vector<VertexId> witness;  // the short cycle or the oversized independent set
};

struct Certification {
    std::optional<GirthCertificate> certificate;
    std::optional<CertificationRejection> rejection;

    bool accepted() const noexcept { return certificate.has_value(); }
};

// Checks girth(sub) > k and alpha(sub) <= l with the exact solvers. Without l
// the exact independence number is used as l. An alpha that cannot be settled
// within the budget is a rejection.
inline Certification certify(const BaseGraph& base, const EdgeSubset& sub, int k, std::optional<std::uint64_t> l = {},
                             SolveBudget budget = {}, Provenance provenance = {}) {
    if (k < 2) throw InvalidArgument("k must be at least 2");
    if (&sub.base() != &base.graph())
        throw InvalidArgument("subset does not belong to this base graph");
    if (l && *l < 1) throw InvalidArgument("l must be at least 1");
    Certification out;
    const Graph g = sub.to_graph();

    const auto gr = girth(g);
    if (!gr.value.is_infinite() && gr.value.value() <= static_cast<std::uint64_t>(k)) {
        out.rejection = CertificationRejection{RejectionReason::ShortCycle,
                                               "subgraph has a cycle of length " + std::to_string(gr.value.value()) +
                                                   " <= k = " + std::to_string(k),
                                               gr.witness};
        return out;
    }

    const auto alpha = independence_number(g, budget);
    if (l && alpha.value.value() > *l) {
        out.rejection = CertificationRejection{RejectionReason::IndependentSetTooLarge,
                                               "independent set of size " + std::to_string(alpha.value.value()) +
                                                   " exceeds l = " + std::to_string(*l),
                                               alpha.witness};
        return out;
    }
    if (!alpha.exact) {
        out.rejection = CertificationRejection{RejectionReason::AlphaUnresolved,
                                               "independence number not settled within the solver budget", {}};
        return out;
    }

    GirthCertificate c;
    c.n = base.n();
    c.k = k;
    c.vertex_count = base.size();
    c.mask = sub.mask();
    c.edge_count = sub.size();
    c.girth = gr.value;
    c.alpha = alpha.value.value();
    c.alpha_exact = true;
    c.l = l ? *l : std::max<std::uint64_t>(c.alpha, 1);
    const auto ratio = chromatic_lower_bound_ratio(base.size(), base.dimension(), c.l);
    c.chi_lower = ratio.bound;
    c.empirical_rate = std::pow(static_cast<double>(c.chi_lower), 1.0 / base.dimension());
    c.provenance = provenance;
    out.certificate = std::move(c);
    return out;
}

// Recomputes girth and alpha of a certificate's subgraph and checks every
// stated field. Returns an empty string when consistent, else the first
// discrepancy.
inline std::string reverify_certificate(const BaseGraph& base, const GirthCertificate& c, SolveBudget budget = {}) {
    if (c.n != base.n() || c.vertex_count != base.size()) return "base graph mismatch";
    if (c.mask.size() != base.graph().edge_count()) return "mask length mismatch";
    const EdgeSubset sub(base.graph(), c.mask);
    if (sub.size() != c.edge_count) return "edge count mismatch";
    const Graph g = sub.to_graph();
    const auto gr = girth(g);
    if (!(gr.value == c.girth)) return "girth mismatch";
    if (!gr.value.is_infinite() && gr.value.value() <= static_cast<std::uint64_t>(c.k)) return "girth not above k";
    const auto alpha = independence_number(g, budget);
    if (!alpha.exact) return "alpha not settled";
    if (alpha.value.value() != c.alpha) return "alpha mismatch";
    if (c.alpha > c.l) return "alpha exceeds l";
    if (c.chi_lower != (c.vertex_count + c.l - 1) / c.l) return "chi lower bound mismatch";
    return {};
}

// ---------------------------------------------------------------------------
// Deletion method

struct DeletionResult {
    EdgeSubset subgraph;
    std::uint64_t deletions = 0;
    Certification certification;
};

// Samples once, then removes the smallest-index edge of a shortest cycle
// until no cycle of length <= k remains.
inline DeletionResult deletion_method(const BaseGraph& base, const ModelParams& m, int k,
                                      std::optional<std::uint64_t> l = {}, SolveBudget budget = {}) {
    if (k < 2) throw InvalidArgument("k must be at least 2");
    EdgeSubset sub = sample_subgraph(base.graph(), m);
    std::uint64_t deletions = 0;
    while (true) {
        const auto cycle = shortest_cycle(sub.to_graph());
        if (cycle.empty() || cycle.size() > static_cast<std::size_t>(k)) break;
        std::size_t smallest = base.graph().edge_count();
        for (std::size_t i = 0; i < cycle.size(); ++i)
            smallest = std::min(smallest, *base.graph().edge_index(cycle[i], cycle[(i + 1) % cycle.size()]));
        sub.erase(smallest);
        ++deletions;
    }
    auto prov = provenance_of(SearchMethod::Deletion, m);
    prov.deletions = deletions;
    auto cert = certify(base, sub, k, l, budget, prov);
    return DeletionResult{std::move(sub), deletions, std::move(cert)};
}

// ---------------------------------------------------------------------------
// Moser-Tardos resampling

struct MoserTardosOptions {
    std::uint64_t max_resamples = 1'000'000;
    // Also forbid independent l-subsets (needs l and an enumerable C(N, l)).
    bool subset_events = false;
    EnumerationGuard guard{};
    SolveBudget certify_budget{};
    std::size_t trace_limit = 1'000'000;
};

struct SearchReport {
    bool success = false;
    std::optional<GirthCertificate> certificate;
    std::optional<CertificationRejection> rejection;
    std::string failure;  // empty on success
    std::uint64_t resamples = 0;
    std::size_t event_count = 0;
    std::size_t final_violated = 0;
    std::vector<std::uint32_t> violated_trace;  // violated events before each resample
    std::uint64_t seed = 0;
};

namespace detail {

// Tracks which events are violated as edges flip.
class ViolationTracker {
public:
    ViolationTracker(const std::vector<BadEvent>& events, std::size_t edge_count, const Bitset& mask)
        : events_(events), by_edge_(edge_count), present_(events.size(), 0) {
        for (std::uint32_t i = 0; i < events.size(); ++i) {
            for (auto e : events[i].variable_set) {
                by_edge_[e].push_back(i);
                if (mask.test(e)) ++present_[i];
            }
            if (violated(i)) violated_.insert(i);
        }
    }

    bool any() const noexcept { return !violated_.empty(); }
    std::size_t count() const noexcept { return violated_.size(); }
    std::uint32_t lowest() const { return *violated_.begin(); }

    void flip(std::uint32_t edge, bool now_present) {
        for (auto i : by_edge_[edge]) {
            const bool before = violated(i);
            present_[i] += now_present ? 1 : -1;
            const bool after = violated(i);
            if (before && !after) violated_.erase(i);
            if (!before && after) violated_.insert(i);
        }
    }

private:
    bool violated(std::uint32_t i) const {
        const auto& ev = events_[i];
        return ev.kind == EventKind::Cycle ? present_[i] == static_cast<int>(ev.variable_set.size()) : present_[i] == 0;
    }

    const std::vector<BadEvent>& events_;
    std::vector<std::vector<std::uint32_t>> by_edge_;
    std::vector<int> present_;
    std::set<std::uint32_t> violated_;
};

} // namespace detail

// Resamples the variables of the lowest-index violated event until no event
// is violated or max_resamples is reached, then certifies.
inline SearchReport moser_tardos_search(const BaseGraph& base, const ModelParams& m, int k,
                                        std::optional<std::uint64_t> l, MoserTardosOptions options = {}) {
    SearchReport report;
    report.seed = m.seed();
    const Graph& g = base.graph();
    const double p = m.p();

    std::vector<BadEvent> events = enumerate_cycle_events(g, k, p, options.guard);
    if (options.subset_events) {
        if (!l) throw InvalidArgument("subset events need l");
        if (*l <= g.size()) {
            auto subsets = enumerate_independent_set_events(g, *l, p, options.guard);
            for (const auto& ev : subsets)
                if (ev.unavoidable()) {
                    report.failure = "unavoidable independent-set events: l does not exceed alpha(G_4n)";
                    report.event_count = events.size() + subsets.size();
                    return report;
                }
            events.insert(events.end(), subsets.begin(), subsets.end());
        }
    }
    report.event_count = events.size();

    EdgeStream stream(m.seed());
    EdgeSubset sub(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e)
        if (stream.bernoulli(p)) sub.insert(e);

    detail::ViolationTracker tracker(events, g.edge_count(), sub.mask());
    while (tracker.any()) {
        if (report.resamples >= options.max_resamples) {
            report.final_violated = tracker.count();
            report.failure = "resample budget exhausted with " + std::to_string(tracker.count()) + " violated events";
            return report;
        }
        if (report.violated_trace.size() < options.trace_limit)
            report.violated_trace.push_back(static_cast<std::uint32_t>(tracker.count()));
        const auto& ev = events[tracker.lowest()];
        for (auto e : ev.variable_set) {
            const bool now = stream.bernoulli(p);
            if (now != sub.contains(e)) {
                if (now)
                    sub.insert(e);
                else
                    sub.erase(e);
                tracker.flip(e, now);
            }
        }
        ++report.resamples;
    }

    auto prov = provenance_of(SearchMethod::MoserTardos, m);
    prov.resamples = report.resamples;
    auto cert = certify(base, sub, k, l, options.certify_budget, prov);
    if (cert.accepted()) {
        report.success = true;
        report.certificate = std::move(cert.certificate);
    } else {
        report.rejection = std::move(cert.rejection);
        report.failure = "certification rejected: " + report.rejection->message;
    }
    return report;
}

// Runs restarts 0..restarts-1 (seed + r), up to `jobs` at a time, and returns
// the first success in restart order, or the last failure.
template <typename Attempt>
SearchReport run_restarts(const ModelParams& m, std::uint64_t restarts, unsigned jobs, Attempt&& attempt) {
    if (restarts == 0) throw InvalidArgument("need at least one restart");
    jobs = std::max(1u, jobs);
    SearchReport last;
    for (std::uint64_t first = 0; first < restarts; first += jobs) {
        const std::uint64_t last_in_batch = std::min<std::uint64_t>(restarts, first + jobs);
        std::vector<std::future<SearchReport>> batch;
        for (std::uint64_t r = first; r < last_in_batch; ++r) {
            const auto params = m.with_seed(restart_seed(m.seed(), r));
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred,
                                       [&attempt, params] { return attempt(params); }));
        }
        for (auto& f : batch) {
            auto rep = f.get();
            if (rep.success) return rep;
            last = std::move(rep);
        }
    }
    return last;
}

} // namespace distgirth
