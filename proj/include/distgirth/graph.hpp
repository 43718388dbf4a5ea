#pragma once

// Simple undirected graphs, the base distance graphs G_{4n} and edge subsets.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bitset.hpp"
#include "errors.hpp"

namespace distgirth {

using BigInt = boost::multiprecision::cpp_int;
using VertexId = std::uint32_t;

struct Edge {
    VertexId u = 0;
    VertexId v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph. Edges are stored canonically (u < v,
// sorted lexicographically); the position in edges() is the edge index used
// by EdgeSubset masks and event variable sets.
class Graph {
public:
    Graph() = default;

    Graph(std::size_t vertex_count, std::vector<Edge> edges) : rows_(vertex_count, Bitset(vertex_count)) {
        for (auto& e : edges) {
            if (e.u >= vertex_count || e.v >= vertex_count)
                throw InvalidArgument("edge endpoint out of range: " + std::to_string(e.u) + "-" + std::to_string(e.v));
            if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
            if (e.u > e.v) std::swap(e.u, e.v);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw InvalidArgument("duplicate edge");
        edges_ = std::move(edges);

        row_start_.assign(vertex_count + 1, 0);
        std::vector<std::size_t> degree(vertex_count, 0);
        for (const auto& e : edges_) {
            ++row_start_[e.u + 1];
            ++degree[e.u];
            ++degree[e.v];
            rows_[e.u].set(e.v);
            rows_[e.v].set(e.u);
        }
        for (std::size_t v = 0; v < vertex_count; ++v) row_start_[v + 1] += row_start_[v];

        adj_start_.assign(vertex_count + 1, 0);
        for (std::size_t v = 0; v < vertex_count; ++v) adj_start_[v + 1] = adj_start_[v] + degree[v];
        adj_.resize(adj_start_.back());
        std::vector<std::size_t> fill(adj_start_.begin(), adj_start_.end() - 1);
        // Edges are sorted, so each neighbor list comes out in increasing order
        // once lower neighbors (from edges (w, v), w < v) precede upper ones.
        for (const auto& e : edges_) adj_[fill[e.v]++] = e.u;
        for (const auto& e : edges_) adj_[fill[e.u]++] = e.v;
        for (std::size_t v = 0; v < vertex_count; ++v)
            std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(adj_start_[v]),
                      adj_.begin() + static_cast<std::ptrdiff_t>(adj_start_[v + 1]));
    }

    std::size_t size() const noexcept { return rows_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t index) const { return edges_.at(index); }

    std::span<const VertexId> neighbors(VertexId v) const noexcept {
        return {adj_.data() + adj_start_[v], adj_start_[v + 1] - adj_start_[v]};
    }
    std::size_t degree(VertexId v) const noexcept { return adj_start_[v + 1] - adj_start_[v]; }
    bool adjacent(VertexId u, VertexId v) const noexcept { return rows_[u].test(v); }
    const Bitset& row(VertexId v) const noexcept { return rows_[v]; }

    std::optional<std::size_t> edge_index(VertexId u, VertexId v) const noexcept {
        if (u == v || u >= size() || v >= size()) return std::nullopt;
        if (u > v) std::swap(u, v);
        const auto first = edges_.begin() + static_cast<std::ptrdiff_t>(row_start_[u]);
        const auto last = edges_.begin() + static_cast<std::ptrdiff_t>(row_start_[u + 1]);
        const auto it = std::lower_bound(first, last, Edge{u, v});
        if (it == last || it->v != v) return std::nullopt;
        return static_cast<std::size_t>(it - edges_.begin());
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.size() == b.size() && a.edges_ == b.edges_; }

private:
    std::vector<Bitset> rows_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> row_start_{0};
    std::vector<std::size_t> adj_start_{0};
    std::vector<VertexId> adj_;
};

// Convenience constructors for small test and example graphs.
inline Graph cycle_graph(std::size_t length) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < length; ++i)
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>((i + 1) % length)});
    return Graph(length, std::move(edges));
}

inline Graph path_graph(std::size_t vertices) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < vertices; ++i)
        edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)});
    return Graph(vertices, std::move(edges));
}

// ---------------------------------------------------------------------------
// G_{4n}

// A 0/1 vector of length 4n with exactly 2n ones. Coordinate x_{i+1} is bit i
// of `bits`, so the string form lists x_1 first.
class BitVertex {
public:
    static constexpr int max_length = 64;

    BitVertex(std::uint64_t bits, int length) : bits_(bits), length_(length) {
        if (length <= 0 || length > max_length || length % 4 != 0)
            throw InvalidArgument("vertex length must be a positive multiple of 4 up to 64, got " +
                                  std::to_string(length));
        if (length < max_length && (bits >> length) != 0)
            throw InvalidArgument("vertex has bits beyond its length");
        if (std::popcount(bits) != length / 2)
            throw InvalidArgument("vertex must have exactly " + std::to_string(length / 2) + " ones");
    }

    static BitVertex from_string(std::string_view s) {
        if (s.size() > static_cast<std::size_t>(max_length)) throw InvalidArgument("vertex string too long");
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                bits |= std::uint64_t{1} << i;
            else if (s[i] != '0')
                throw InvalidArgument("vertex string may only contain '0' and '1'");
        }
        return BitVertex(bits, static_cast<int>(s.size()));
    }

    std::uint64_t bits() const noexcept { return bits_; }
    int length() const noexcept { return length_; }
    int weight() const noexcept { return std::popcount(bits_); }
    bool coord(int i) const noexcept { return (bits_ >> i) & 1u; }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(length_), '0');
        for (int i = 0; i < length_; ++i)
            if (coord(i)) s[static_cast<std::size_t>(i)] = '1';
        return s;
    }

    friend bool operator==(const BitVertex&, const BitVertex&) = default;

private:
    std::uint64_t bits_;
    int length_;
};

// |{i : x_i = y_i = 1}|
inline int scalar_product(const BitVertex& x, const BitVertex& y) {
    if (x.length() != y.length())
        throw InvalidArgument("scalar product of vectors of different lengths " + std::to_string(x.length()) + " and " +
                              std::to_string(y.length()));
    return std::popcount(x.bits() & y.bits());
}

inline int squared_distance(const BitVertex& x, const BitVertex& y) {
    if (x.length() != y.length()) throw InvalidArgument("squared distance of vectors of different lengths");
    return std::popcount(x.bits() ^ y.bits());
}

// A distance graph with 0/1 coordinates: the vertex list of G_{4n} (or a
// loaded subset of it) plus the edge structure.
class BaseGraph {
public:
    BaseGraph(int n, std::vector<BitVertex> vertices, Graph graph)
        : n_(n), vertices_(std::move(vertices)), graph_(std::move(graph)) {
        if (n < 1) throw InvalidArgument("n must be at least 1");
        if (vertices_.size() != graph_.size()) throw InvalidArgument("vertex list and graph disagree in size");
        for (const auto& v : vertices_)
            if (v.length() != 4 * n) throw InvalidArgument("vertex length must equal 4n");
    }

    int n() const noexcept { return n_; }
    int dimension() const noexcept { return 4 * n_; }
    std::size_t size() const noexcept { return graph_.size(); }
    std::span<const BitVertex> vertices() const noexcept { return vertices_; }
    const BitVertex& vertex(VertexId v) const { return vertices_.at(v); }
    const Graph& graph() const noexcept { return graph_; }

    std::optional<VertexId> find(const BitVertex& x) const {
        // vertices of build_base_graph are sorted by bit pattern; fall back to a scan otherwise
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), x,
                                   [](const BitVertex& a, const BitVertex& b) { return a.bits() < b.bits(); });
        if (it != vertices_.end() && *it == x) return static_cast<VertexId>(it - vertices_.begin());
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (vertices_[i] == x) return static_cast<VertexId>(i);
        return std::nullopt;
    }

private:
    int n_;
    std::vector<BitVertex> vertices_;
    Graph graph_;
};

struct BuildOptions {
    // Refuse 4n above this unless raised explicitly.
    int max_dimension = 16;
};

// Vertices in colexicographic order of their supports, which is increasing
// order of `bits`.
inline BaseGraph build_base_graph(int n, BuildOptions options = {}) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    const int dim = 4 * n;
    if (dim > options.max_dimension)
        throw ResourceError("4n = " + std::to_string(dim) + " exceeds the size guard of " +
                            std::to_string(options.max_dimension) + "; raise max_dimension to override");
    if (dim > BitVertex::max_length) throw ResourceError("4n above 64 is not representable");

    std::vector<BitVertex> vertices;
    std::uint64_t mask = (std::uint64_t{1} << (2 * n)) - 1;
    const std::uint64_t end = dim == 64 ? 0 : (std::uint64_t{1} << dim);
    while (true) {
        vertices.emplace_back(mask, dim);
        // Gosper's hack: next integer with the same popcount
        const std::uint64_t c = mask & (~mask + 1);
        const std::uint64_t r = mask + c;
        if (r == 0 || (end != 0 && r >= end)) break;
        const std::uint64_t next = (((r ^ mask) >> 2) / c) | r;
        if (end != 0 && next >= end) break;
        mask = next;
    }

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (std::popcount(vertices[i].bits() & vertices[j].bits()) == n)
                edges.push_back({static_cast<VertexId>(i), static_cast<VertexId>(j)});

    Graph graph(vertices.size(), std::move(edges));
    return BaseGraph(n, std::move(vertices), std::move(graph));
}

// Checks that every edge joins vertices at squared distance 2n and returns 2n.
// Throws naming the first offending edge otherwise.
inline int verify_unit_distance(const BaseGraph& g) {
    const int expected = 2 * g.n();
    for (const auto& e : g.graph().edges()) {
        const int d = squared_distance(g.vertex(e.u), g.vertex(e.v));
        if (d != expected)
            throw InvalidArgument("edge " + g.vertex(e.u).to_string() + " - " + g.vertex(e.v).to_string() +
                                  " has squared distance " + std::to_string(d) + ", expected " +
                                  std::to_string(expected));
    }
    return expected;
}

struct EmbeddedPoints {
    std::size_t dimension = 0;
    std::vector<std::vector<int>> coords;
};

// Places each vertex in R^{4n+j} by appending j zero coordinates.
inline EmbeddedPoints embed_codimension(const BaseGraph& g, std::size_t j) {
    EmbeddedPoints out;
    out.dimension = static_cast<std::size_t>(g.dimension()) + j;
    out.coords.reserve(g.size());
    for (const auto& v : g.vertices()) {
        std::vector<int> p(out.dimension, 0);
        for (int i = 0; i < v.length(); ++i) p[static_cast<std::size_t>(i)] = v.coord(i) ? 1 : 0;
        out.coords.push_back(std::move(p));
    }
    return out;
}

inline long long squared_distance(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) throw InvalidArgument("points of different dimension");
    long long s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const long long d = static_cast<long long>(a[i]) - b[i];
        s += d * d;
    }
    return s;
}

inline BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline double log_binomial(double n, double k) {
    return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

struct CountFormulas {
    BigInt vertices;       // C(4n, 2n)
    BigInt edges;          // unordered: C(4n,2n) C(2n,n)^2 / 2
    BigInt ordered_edges;  // the displayed C(4n,2n) C(2n,n)^2
    BigInt degree;         // C(2n,n)^2
    double vertex_rate;    // N^{1/(4n)}, tends to 2
    double edge_rate;      // (2M)^{1/(4n)}, tends to 4
};

inline CountFormulas count_formulas(int n) {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    const auto un = static_cast<unsigned>(n);
    CountFormulas c;
    c.vertices = binomial(4 * un, 2 * un);
    const BigInt half = binomial(2 * un, un);
    c.degree = half * half;
    c.ordered_edges = c.vertices * c.degree;
    c.edges = c.ordered_edges / 2;
    const double dim = 4.0 * n;
    const double log_n = log_binomial(dim, 2.0 * n);
    const double log_deg = 2.0 * log_binomial(2.0 * n, n);
    c.vertex_rate = std::exp(log_n / dim);
    c.edge_rate = std::exp((log_n + log_deg) / dim);
    return c;
}

// A subset of a graph's edges, as a membership mask over graph.edges().
// Holds a non-owning pointer: the graph must outlive the subset.
class EdgeSubset {
public:
    explicit EdgeSubset(const Graph& base) : base_(&base), mask_(base.edge_count()) {}
    EdgeSubset(const Graph& base, Bitset mask) : base_(&base), mask_(std::move(mask)) {
        if (mask_.size() != base.edge_count()) throw InvalidArgument("mask length differs from base edge count");
    }

    static EdgeSubset full(const Graph& base) {
        EdgeSubset s(base);
        s.mask_.set_all();
        return s;
    }

    const Graph& base() const noexcept { return *base_; }
    const Bitset& mask() const noexcept { return mask_; }
    std::size_t size() const noexcept { return mask_.count(); }

    bool contains(std::size_t edge) const {
        check(edge);
        return mask_.test(edge);
    }
    void insert(std::size_t edge) {
        check(edge);
        mask_.set(edge);
    }
    void erase(std::size_t edge) {
        check(edge);
        mask_.reset(edge);
    }

    // The realized subgraph on the full vertex set.
    Graph to_graph() const {
        std::vector<Edge> edges;
        edges.reserve(size());
        mask_.for_each([&](std::size_t i) { edges.push_back(base_->edge(i)); });
        return Graph(base_->size(), std::move(edges));
    }

    friend bool operator==(const EdgeSubset& a, const EdgeSubset& b) {
        return a.base_ == b.base_ && a.mask_ == b.mask_;
    }

private:
    void check(std::size_t edge) const {
        if (edge >= mask_.size()) throw InvalidArgument("edge index " + std::to_string(edge) + " out of range");
    }

    const Graph* base_;
    Bitset mask_;
};

} // namespace distgirth
