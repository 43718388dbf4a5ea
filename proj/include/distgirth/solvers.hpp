#pragma once

// Exact graph computations: girth, short-cycle counts, independence number,
// chromatic number and induced edge counts. These double as certificate
// verifiers, so every witness they return is checkable against the input.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "bitset.hpp"
#include "errors.hpp"
#include "graph.hpp"

namespace distgirth {

inline constexpr const char* solver_version = "distgirth-solvers/1.0";

// A nonnegative count that may also be infinite (girth of a forest).
class ExtendedCount {
public:
    constexpr ExtendedCount(std::uint64_t v) noexcept : value_(v), infinite_(false) {}
    static constexpr ExtendedCount infinite() noexcept { return ExtendedCount(); }

    constexpr bool is_infinite() const noexcept { return infinite_; }
    std::uint64_t value() const {
        if (infinite_) throw InvalidArgument("value is infinite");
        return value_;
    }

    friend constexpr bool operator==(const ExtendedCount&, const ExtendedCount&) = default;
    // infinity compares above every finite value
    friend constexpr bool operator<(const ExtendedCount& a, const ExtendedCount& b) noexcept {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend constexpr bool operator>(const ExtendedCount& a, const ExtendedCount& b) noexcept { return b < a; }

private:
    constexpr ExtendedCount() noexcept : value_(0), infinite_(true) {}
    std::uint64_t value_;
    bool infinite_;
};

struct SolveBudget {
    std::uint64_t node_limit = 0;  // search-tree nodes, 0 = unlimited
    double time_limit = 0.0;       // seconds, 0 = unlimited
};

enum class WitnessKind { None, Cycle, IndependentSet, Coloring };

struct SolveResult {
    ExtendedCount value{0};
    bool exact = true;
    // When exact is false: best proven upper bound (alpha, chi). value then
    // holds the best lower bound.
    std::optional<std::uint64_t> upper_bound;
    WitnessKind witness_kind = WitnessKind::None;
    // Cycle: vertex sequence. IndependentSet: sorted vertex ids.
    // Coloring: color (0-based) of each vertex.
    std::vector<VertexId> witness;
    std::uint64_t nodes = 0;
};

namespace detail {

class BudgetTracker {
public:
    explicit BudgetTracker(SolveBudget b) : budget_(b), start_(std::chrono::steady_clock::now()) {}

    // Counts one node; returns false once the budget is exhausted.
    bool tick() {
        if (exhausted_) return false;
        ++nodes_;
        if (budget_.node_limit != 0 && nodes_ > budget_.node_limit) exhausted_ = true;
        if (budget_.time_limit > 0.0 && (nodes_ & 1023u) == 0) {
            const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
            if (dt.count() > budget_.time_limit) exhausted_ = true;
        }
        return !exhausted_;
    }
    bool exhausted() const noexcept { return exhausted_; }
    std::uint64_t nodes() const noexcept { return nodes_; }

private:
    SolveBudget budget_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

} // namespace detail

// ---------------------------------------------------------------------------
// Witness checks

inline bool is_cycle(const Graph& g, std::span<const VertexId> cycle) {
    if (cycle.size() < 3) return false;
    Bitset seen(g.size());
    for (auto v : cycle) {
        if (v >= g.size() || seen.test(v)) return false;
        seen.set(v);
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
        if (!g.adjacent(cycle[i], cycle[(i + 1) % cycle.size()])) return false;
    return true;
}

inline bool is_independent_set(const Graph& g, std::span<const VertexId> set) {
    Bitset members(g.size());
    for (auto v : set) {
        if (v >= g.size() || members.test(v)) return false;
        members.set(v);
    }
    for (auto v : set)
        if (g.row(v).intersects(members)) return false;
    return true;
}

inline bool is_proper_coloring(const Graph& g, std::span<const VertexId> colors) {
    if (colors.size() != g.size()) return false;
    for (const auto& e : g.edges())
        if (colors[e.u] == colors[e.v]) return false;
    return true;
}

inline bool verify_witness(const Graph& g, const SolveResult& r) {
    switch (r.witness_kind) {
    case WitnessKind::None: return true;
    case WitnessKind::Cycle: return is_cycle(g, r.witness);
    case WitnessKind::IndependentSet: return is_independent_set(g, r.witness);
    case WitnessKind::Coloring: return is_proper_coloring(g, r.witness);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Girth

// Shortest cycle by breadth-first search from every vertex. Returns an empty
// vector for forests.
inline std::vector<VertexId> shortest_cycle(const Graph& g) {
    const std::size_t n = g.size();
    constexpr std::uint32_t unseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(n, unseen);
    std::vector<VertexId> parent(n, 0);
    std::vector<VertexId> queue;
    queue.reserve(n);

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    VertexId best_root = 0, best_u = 0, best_w = 0;
    std::vector<VertexId> best_parent;

    for (VertexId root = 0; root < n && best > 3; ++root) {
        if (g.degree(root) < 2) continue;
        queue.clear();
        for (auto& d : dist) d = unseen;
        dist[root] = 0;
        parent[root] = root;
        queue.push_back(root);
        bool improved = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId u = queue[head];
            if (2 * std::uint64_t{dist[u]} + 1 >= best) break;
            for (VertexId w : g.neighbors(u)) {
                if (dist[w] == unseen) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if (w != parent[u] && dist[w] >= dist[u]) {
                    const std::uint64_t len = std::uint64_t{dist[u]} + dist[w] + 1;
                    if (len < best) {
                        best = len;
                        best_root = root;
                        best_u = u;
                        best_w = w;
                        improved = true;
                    }
                }
            }
        }
        if (improved) best_parent = parent;
    }
    if (best == std::numeric_limits<std::uint64_t>::max()) return {};

    // root -> ... -> u, then w -> ... back towards root (excluding root)
    std::vector<VertexId> left, right;
    for (VertexId x = best_u; x != best_root; x = best_parent[x]) left.push_back(x);
    left.push_back(best_root);
    std::reverse(left.begin(), left.end());
    for (VertexId x = best_w; x != best_root; x = best_parent[x]) right.push_back(x);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

inline SolveResult girth(const Graph& g) {
    SolveResult r;
    auto cycle = shortest_cycle(g);
    if (cycle.empty()) {
        r.value = ExtendedCount::infinite();
        return r;
    }
    r.value = cycle.size();
    r.witness_kind = WitnessKind::Cycle;
    r.witness = std::move(cycle);
    return r;
}

inline SolveResult girth(const EdgeSubset& sub) { return girth(sub.to_graph()); }

// ---------------------------------------------------------------------------
// Short cycles

inline constexpr int default_max_cycle_length = 8;

// Calls f(cycle) once per cycle of length s, as a vertex sequence starting at
// its smallest vertex and with cycle[1] < cycle[s-1]. Stops early when f
// returns false.
template <typename F>
void for_each_cycle(const Graph& g, int s, F&& f) {
    if (s < 3) throw InvalidArgument("cycle length must be at least 3");
    const std::size_t n = g.size();
    std::vector<VertexId> path;
    path.reserve(static_cast<std::size_t>(s));
    Bitset on_path(n);
    bool stop = false;

    std::function<void(VertexId)> extend = [&](VertexId cur) {
        if (stop) return;
        const VertexId start = path.front();
        if (path.size() == static_cast<std::size_t>(s)) {
            if (g.adjacent(cur, start) && path[1] < path.back()) {
                if (!f(std::span<const VertexId>(path))) stop = true;
            }
            return;
        }
        for (VertexId w : g.neighbors(cur)) {
            if (w <= start || on_path.test(w)) continue;
            path.push_back(w);
            on_path.set(w);
            extend(w);
            on_path.reset(w);
            path.pop_back();
            if (stop) return;
        }
    };

    for (VertexId v = 0; v < n && !stop; ++v) {
        path.assign(1, v);
        on_path.set(v);
        extend(v);
        on_path.reset(v);
    }
}

struct CycleCount {
    std::uint64_t labeled = 0;   // rooted, directed sequences: 2s per cycle
    std::uint64_t distinct = 0;  // edge-set cycles
};

inline CycleCount count_cycles(const Graph& g, int s, int max_length = default_max_cycle_length) {
    if (s < 3 || s > max_length)
        throw InvalidArgument("cycle length must lie in [3, " + std::to_string(max_length) + "], got " +
                              std::to_string(s));
    CycleCount c;
    for_each_cycle(g, s, [&](std::span<const VertexId>) {
        ++c.distinct;
        return true;
    });
    c.labeled = c.distinct * 2 * static_cast<std::uint64_t>(s);
    return c;
}

// ---------------------------------------------------------------------------
// Maximum clique / independence number

namespace detail {

// Bitset branch and bound for maximum clique with greedy sequential coloring
// bounds. Vertices are branched in descending degree order (ties by index).
class MaxClique {
public:
    MaxClique(const std::vector<Bitset>& adjacency, SolveBudget budget) : tracker_(budget) {
        const std::size_t n = adjacency.size();
        order_.resize(n);
        std::iota(order_.begin(), order_.end(), VertexId{0});
        std::stable_sort(order_.begin(), order_.end(), [&](VertexId a, VertexId b) {
            return adjacency[a].count() > adjacency[b].count();
        });
        std::vector<VertexId> position(n);
        for (std::size_t i = 0; i < n; ++i) position[order_[i]] = static_cast<VertexId>(i);
        adj_.assign(n, Bitset(n));
        for (std::size_t i = 0; i < n; ++i)
            adjacency[order_[i]].for_each([&](std::size_t w) { adj_[i].set(position[w]); });
    }

    void seed(const std::vector<VertexId>& clique) {
        // clique given in original ids
        if (clique.size() > best_.size()) {
            best_.clear();
            std::vector<VertexId> position(order_.size());
            for (std::size_t i = 0; i < order_.size(); ++i) position[order_[i]] = static_cast<VertexId>(i);
            for (auto v : clique) best_.push_back(position[v]);
        }
    }

    void run() {
        const std::size_t n = adj_.size();
        if (n == 0) return;
        Bitset all(n);
        all.set_all();
        std::vector<VertexId> verts;
        std::vector<std::uint32_t> colors;
        color_sort(all, verts, colors);
        root_bound_ = colors.empty() ? 0 : colors.back();
        std::vector<VertexId> current;
        expand(current, all);
    }

    bool exact() const noexcept { return !tracker_.exhausted(); }
    std::uint64_t nodes() const noexcept { return tracker_.nodes(); }
    std::uint64_t root_bound() const noexcept { return std::max<std::uint64_t>(root_bound_, best_.size()); }

    std::vector<VertexId> best() const {
        std::vector<VertexId> out;
        for (auto v : best_) out.push_back(order_[v]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    // Greedy coloring of p in vertex order; verts sorted by nondecreasing color.
    void color_sort(const Bitset& p, std::vector<VertexId>& verts, std::vector<std::uint32_t>& colors) const {
        verts.clear();
        colors.clear();
        Bitset uncolored = p;
        std::uint32_t color = 0;
        while (uncolored.any()) {
            ++color;
            Bitset q = uncolored;
            while (q.any()) {
                const auto v = q.first();
                uncolored.reset(v);
                q.reset(v);
                q.subtract(adj_[v]);
                verts.push_back(static_cast<VertexId>(v));
                colors.push_back(color);
            }
        }
    }

    void expand(std::vector<VertexId>& current, Bitset p) {
        if (!tracker_.tick()) return;
        std::vector<VertexId> verts;
        std::vector<std::uint32_t> colors;
        color_sort(p, verts, colors);
        for (std::size_t i = verts.size(); i-- > 0;) {
            if (current.size() + colors[i] <= best_.size()) return;
            const VertexId v = verts[i];
            current.push_back(v);
            Bitset next = p;
            next &= adj_[v];
            if (next.none()) {
                if (current.size() > best_.size()) best_ = current;
            } else {
                expand(current, std::move(next));
            }
            current.pop_back();
            if (tracker_.exhausted()) return;
            p.reset(v);
        }
    }

    detail::BudgetTracker tracker_;
    std::vector<VertexId> order_;
    std::vector<Bitset> adj_;
    std::vector<VertexId> best_;
    std::uint64_t root_bound_ = 0;
};

inline std::vector<Bitset> complement_rows(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<Bitset> rows(n, Bitset(n));
    for (std::size_t v = 0; v < n; ++v) {
        rows[v].set_all();
        rows[v].subtract(g.row(static_cast<VertexId>(v)));
        rows[v].reset(v);
    }
    return rows;
}

inline std::vector<Bitset> rows_of(const Graph& g) {
    std::vector<Bitset> rows;
    rows.reserve(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) rows.push_back(g.row(static_cast<VertexId>(v)));
    return rows;
}

// Minimum-degree greedy independent set.
inline std::vector<VertexId> greedy_independent_set(const Graph& g) {
    const std::size_t n = g.size();
    Bitset alive(n);
    alive.set_all();
    std::vector<VertexId> out;
    while (alive.any()) {
        std::size_t best = n, best_deg = std::numeric_limits<std::size_t>::max();
        alive.for_each([&](std::size_t v) {
            const auto d = g.row(static_cast<VertexId>(v)).intersection_count(alive);
            if (d < best_deg) {
                best_deg = d;
                best = v;
            }
        });
        out.push_back(static_cast<VertexId>(best));
        alive.reset(best);
        alive.subtract(g.row(static_cast<VertexId>(best)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

// Exact alpha(G) as a maximum clique of the complement; degrades to a lower
// bound (exact = false, upper_bound set) when the budget runs out.
inline SolveResult independence_number(const Graph& g, SolveBudget budget = {}) {
    SolveResult r;
    r.witness_kind = WitnessKind::IndependentSet;
    if (g.size() == 0) return r;
    detail::MaxClique solver(detail::complement_rows(g), budget);
    solver.seed(detail::greedy_independent_set(g));
    solver.run();
    r.witness = solver.best();
    r.value = r.witness.size();
    r.exact = solver.exact();
    r.nodes = solver.nodes();
    if (!r.exact) r.upper_bound = solver.root_bound();
    return r;
}

inline SolveResult independence_number(const EdgeSubset& sub, SolveBudget budget = {}) {
    return independence_number(sub.to_graph(), budget);
}

// Maximum clique of g itself (witness is the clique, sorted).
inline SolveResult max_clique(const Graph& g, SolveBudget budget = {}) {
    SolveResult r;
    if (g.size() == 0) return r;
    detail::MaxClique solver(detail::rows_of(g), budget);
    solver.run();
    r.witness = solver.best();
    r.value = r.witness.size();
    r.exact = solver.exact();
    r.nodes = solver.nodes();
    if (!r.exact) r.upper_bound = solver.root_bound();
    return r;
}

// ---------------------------------------------------------------------------
// Chromatic number

namespace detail {

inline std::vector<VertexId> dsatur_greedy(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<VertexId> color(n, std::numeric_limits<VertexId>::max());
    std::vector<Bitset> seen(n, Bitset(n + 1));
    std::vector<std::size_t> sat(n, 0);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (color[v] != std::numeric_limits<VertexId>::max()) continue;
            if (pick == n || sat[v] > sat[pick] ||
                (sat[v] == sat[pick] && g.degree(static_cast<VertexId>(v)) > g.degree(static_cast<VertexId>(pick))))
                pick = v;
        }
        VertexId c = 0;
        while (seen[pick].test(c)) ++c;
        color[pick] = c;
        for (VertexId w : g.neighbors(static_cast<VertexId>(pick)))
            if (!seen[w].test(c)) {
                seen[w].set(c);
                ++sat[w];
            }
    }
    return color;
}

// DSATUR backtracking decision procedure for k-colorability.
class KColoring {
public:
    KColoring(const Graph& g, std::uint32_t k, BudgetTracker& tracker)
        : g_(g), k_(k), tracker_(tracker), color_(g.size(), uncolored),
          counts_(g.size() * k, 0), sat_(g.size(), 0) {}

    // true: colorable (coloring() holds a witness); false: not colorable or budget exhausted.
    bool solve() { return assign(0, 0); }
    const std::vector<VertexId>& coloring() const noexcept { return color_; }

private:
    static constexpr VertexId uncolored = std::numeric_limits<VertexId>::max();

    bool assign(std::size_t colored, std::uint32_t used) {
        if (colored == g_.size()) return true;
        if (!tracker_.tick()) return false;
        // max saturation, then max degree, then smallest index
        std::size_t pick = g_.size();
        for (std::size_t v = 0; v < g_.size(); ++v) {
            if (color_[v] != uncolored) continue;
            if (pick == g_.size() || sat_[v] > sat_[pick] ||
                (sat_[v] == sat_[pick] &&
                 g_.degree(static_cast<VertexId>(v)) > g_.degree(static_cast<VertexId>(pick))))
                pick = v;
        }
        if (sat_[pick] >= k_) return false;
        const std::uint32_t limit = std::min(k_, used + 1);
        for (std::uint32_t c = 0; c < limit; ++c) {
            if (counts_[pick * k_ + c] != 0) continue;
            set_color(pick, c);
            if (assign(colored + 1, std::max(used, c + 1))) return true;
            clear_color(pick, c);
            if (tracker_.exhausted()) return false;
        }
        return false;
    }

    void set_color(std::size_t v, std::uint32_t c) {
        color_[v] = c;
        for (VertexId w : g_.neighbors(static_cast<VertexId>(v)))
            if (counts_[w * k_ + c]++ == 0) ++sat_[w];
    }
    void clear_color(std::size_t v, std::uint32_t c) {
        color_[v] = uncolored;
        for (VertexId w : g_.neighbors(static_cast<VertexId>(v)))
            if (--counts_[w * k_ + c] == 0) --sat_[w];
    }

    const Graph& g_;
    std::uint32_t k_;
    BudgetTracker& tracker_;
    std::vector<VertexId> color_;
    std::vector<std::uint32_t> counts_;
    std::vector<std::uint32_t> sat_;
};

} // namespace detail

// Exact chi(G): tries k = (clique lower bound) ... (DSATUR upper bound - 1)
// with a k-colorability search. On budget exhaustion returns the proven lower
// bound in value and the greedy bound in upper_bound.
inline SolveResult chromatic_number(const Graph& g, SolveBudget budget = {}) {
    SolveResult r;
    r.witness_kind = WitnessKind::Coloring;
    if (g.size() == 0) return r;

    auto greedy = detail::dsatur_greedy(g);
    const std::uint64_t upper = *std::max_element(greedy.begin(), greedy.end()) + 1u;
    detail::BudgetTracker tracker(budget);

    SolveBudget clique_budget = budget;
    if (clique_budget.time_limit > 0.0) clique_budget.time_limit /= 2;
    auto clique = max_clique(g, clique_budget);
    std::uint64_t lower = std::max<std::uint64_t>(1, clique.value.value());
    r.nodes += clique.nodes;

    for (std::uint64_t k = lower; k < upper; ++k) {
        detail::KColoring search(g, static_cast<std::uint32_t>(k), tracker);
        if (search.solve()) {
            r.value = k;
            r.witness = search.coloring();
            r.nodes += tracker.nodes();
            return r;
        }
        if (tracker.exhausted()) {
            r.value = k;  // every k' < k was refuted
            r.exact = false;
            r.upper_bound = upper;
            r.witness = std::move(greedy);
            r.nodes += tracker.nodes();
            return r;
        }
    }
    r.value = upper;
    r.witness = std::move(greedy);
    r.nodes += tracker.nodes();
    return r;
}

inline SolveResult chromatic_number(const EdgeSubset& sub, SolveBudget budget = {}) {
    return chromatic_number(sub.to_graph(), budget);
}

// ---------------------------------------------------------------------------
// Counting bounds

struct RatioBound {
    std::uint64_t bound = 0;  // ceil(N / alpha_bound)
    double rate = 0.0;        // (N / alpha_bound)^{1/dimension}
};

inline RatioBound chromatic_lower_bound_ratio(std::uint64_t vertex_count, int dimension, std::uint64_t alpha_bound) {
    if (alpha_bound < 1) throw InvalidArgument("alpha bound must be at least 1");
    if (dimension < 1) throw InvalidArgument("dimension must be positive");
    RatioBound r;
    r.bound = (vertex_count + alpha_bound - 1) / alpha_bound;
    r.rate = std::pow(static_cast<double>(vertex_count) / static_cast<double>(alpha_bound), 1.0 / dimension);
    return r;
}

inline RatioBound chromatic_lower_bound_ratio(const BaseGraph& g, std::uint64_t alpha_bound) {
    return chromatic_lower_bound_ratio(g.size(), g.dimension(), alpha_bound);
}

// |E(g restricted to subset)|. Repeated ids count once.
inline std::uint64_t edges_within(const Graph& g, std::span<const VertexId> subset) {
    Bitset members(g.size());
    for (auto v : subset) {
        if (v >= g.size()) throw InvalidArgument("vertex index " + std::to_string(v) + " out of range");
        members.set(v);
    }
    std::uint64_t twice = 0;
    members.for_each([&](std::size_t v) { twice += g.row(static_cast<VertexId>(v)).intersection_count(members); });
    return twice / 2;
}

struct MinEdgesOptions {
    // Exhaustive enumeration refuses above this many l-subsets.
    std::uint64_t guard = 5'000'000;
    // Allow local search when the guard is exceeded.
    bool allow_heuristic = false;
};

struct MinEdgesResult {
    std::uint64_t min_edges = 0;
    std::vector<VertexId> witness;  // sorted
    bool exact = true;
};

namespace detail {

inline MinEdgesResult min_edges_exhaustive(const Graph& g, std::size_t l) {
    const std::size_t n = g.size();
    MinEdgesResult best;
    best.min_edges = std::numeric_limits<std::uint64_t>::max();
    std::vector<VertexId> chosen;
    Bitset members(n);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t next, std::uint64_t edges) {
        if (edges >= best.min_edges) return;
        if (chosen.size() == l) {
            best.min_edges = edges;
            best.witness = chosen;
            return;
        }
        for (std::size_t v = next; v + (l - chosen.size()) <= n; ++v) {
            const auto added = g.row(static_cast<VertexId>(v)).intersection_count(members);
            chosen.push_back(static_cast<VertexId>(v));
            members.set(v);
            rec(v + 1, edges + added);
            members.reset(v);
            chosen.pop_back();
        }
    };
    rec(0, 0);
    return best;
}

// Peel the vertex of largest internal degree down to size l, then apply
// improving swaps until none remains.
inline MinEdgesResult min_edges_local_search(const Graph& g, std::size_t l) {
    const std::size_t n = g.size();
    Bitset in(n);
    in.set_all();
    for (std::size_t size = n; size > l; --size) {
        std::size_t worst = n, worst_deg = 0;
        in.for_each([&](std::size_t v) {
            const auto d = g.row(static_cast<VertexId>(v)).intersection_count(in);
            if (worst == n || d > worst_deg) {
                worst = v;
                worst_deg = d;
            }
        });
        in.reset(worst);
    }
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t v = 0; v < n && !improved; ++v) {
            if (!in.test(v)) continue;
            const auto dv = g.row(static_cast<VertexId>(v)).intersection_count(in);
            for (std::size_t u = 0; u < n; ++u) {
                if (in.test(u)) continue;
                const auto du = g.row(static_cast<VertexId>(u)).intersection_count(in) -
                                (g.adjacent(static_cast<VertexId>(u), static_cast<VertexId>(v)) ? 1 : 0);
                if (du < dv) {
                    in.reset(v);
                    in.set(u);
                    improved = true;
                    break;
                }
            }
        }
    }
    MinEdgesResult r;
    r.witness = in.to_indices();
    r.min_edges = edges_within(g, r.witness);
    r.exact = false;
    return r;
}

} // namespace detail

// Minimum number of edges spanned by an l-subset of vertices.
inline MinEdgesResult min_edges_over_subsets(const Graph& g, std::size_t l, MinEdgesOptions options = {}) {
    if (l < 1 || l > g.size())
        throw InvalidArgument("subset size must lie in [1, " + std::to_string(g.size()) + "]");
    if (binomial(static_cast<unsigned>(g.size()), static_cast<unsigned>(l)) <= options.guard)
        return detail::min_edges_exhaustive(g, l);
    if (!options.allow_heuristic)
        throw ResourceError("C(" + std::to_string(g.size()) + ", " + std::to_string(l) +
                            ") exceeds the enumeration guard; enable the heuristic mode");
    return detail::min_edges_local_search(g, l);
}

// ---------------------------------------------------------------------------
// Forbidden families

struct GirthReduction {
    std::vector<std::uint64_t> shortest_cycles;  // l_i per forbidden graph
    std::uint64_t required_girth_ceiling = 0;    // k* = max l_i; girth > k* avoids every H_i
};

inline GirthReduction family_girth_reduction(std::span<const Graph> forbidden) {
    if (forbidden.empty()) throw InvalidArgument("forbidden family is empty");
    GirthReduction r;
    for (std::size_t i = 0; i < forbidden.size(); ++i) {
        const auto gi = girth(forbidden[i]);
        if (gi.value.is_infinite())
            throw ForestError("forbidden graph " + std::to_string(i) + " is a forest");
        r.shortest_cycles.push_back(gi.value.value());
        r.required_girth_ceiling = std::max(r.required_girth_ceiling, gi.value.value());
    }
    return r;
}

} // namespace distgirth
