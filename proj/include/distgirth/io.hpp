#pragma once

// DIMACS and JSON formats.
//
// DIMACS: `p edge N M`, then one `e u v` line per edge with 1-based ids in
// canonical edge order. `c` comment lines and blank lines are accepted on
// input and never written.
//
// Edge masks are hex strings: byte j covers edges 8j..8j+7 with edge 8j+b in
// bit b, bytes written in order as two lowercase hex digits.

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "graph.hpp"
#include "lll.hpp"
#include "model.hpp"
#include "search.hpp"
#include "solvers.hpp"

namespace distgirth::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// DIMACS

inline void write_dimacs(std::ostream& os, const Graph& g) {
    os << "p edge " << g.size() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) os << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
}

inline std::string to_dimacs(const Graph& g) {
    std::ostringstream os;
    write_dimacs(os, g);
    return os.str();
}

inline Graph read_dimacs(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t n = 0, m = 0, header_line = 0;
    std::vector<Edge> edges;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            if (have_header) throw ParseError("duplicate problem line", line_no);
            std::string format;
            long long nn = -1, mm = -1;
            if (!(ls >> format >> nn >> mm) || (format != "edge" && format != "col") || nn < 0 || mm < 0)
                throw ParseError("expected `p edge N M`", line_no);
            n = static_cast<std::size_t>(nn);
            m = static_cast<std::size_t>(mm);
            have_header = true;
            header_line = line_no;
        } else if (tag == "e") {
            if (!have_header) throw ParseError("edge before problem line", line_no);
            long long u = 0, v = 0;
            if (!(ls >> u >> v)) throw ParseError("expected `e u v`", line_no);
            if (u < 1 || v < 1 || static_cast<std::size_t>(u) > n || static_cast<std::size_t>(v) > n)
                throw ParseError("vertex id out of range 1.." + std::to_string(n), line_no);
            if (u == v) throw ParseError("self-loop", line_no);
            edges.push_back({static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1)});
        } else {
            throw ParseError("unknown line type `" + tag + "`", line_no);
        }
        std::string rest;
        if (ls >> rest) throw ParseError("trailing tokens", line_no);
    }
    if (!have_header) throw ParseError("missing problem line");
    if (edges.size() != m)
        throw ParseError("header declares " + std::to_string(m) + " edges but " + std::to_string(edges.size()) +
                         " were listed",
                         header_line);
    try {
        return Graph(n, std::move(edges));
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

inline Graph parse_dimacs(const std::string& text) {
    std::istringstream is(text);
    return read_dimacs(is);
}

// Maps a DIMACS subgraph (same vertex numbering as the base) onto a base edge mask.
inline EdgeSubset subset_from_graph(const Graph& base, const Graph& sub) {
    if (sub.size() != base.size()) throw InvalidArgument("subgraph vertex count differs from the base graph");
    EdgeSubset out(base);
    for (const auto& e : sub.edges()) {
        const auto idx = base.edge_index(e.u, e.v);
        if (!idx)
            throw InvalidArgument("edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1) +
                                  " is not an edge of the base graph");
        out.insert(*idx);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Masks

inline std::string mask_to_hex(const Bitset& mask) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    const std::size_t bytes = (mask.size() + 7) / 8;
    out.reserve(bytes * 2);
    for (std::size_t j = 0; j < bytes; ++j) {
        unsigned byte = 0;
        for (std::size_t b = 0; b < 8 && 8 * j + b < mask.size(); ++b)
            if (mask.test(8 * j + b)) byte |= 1u << b;
        out.push_back(digits[byte >> 4]);
        out.push_back(digits[byte & 15u]);
    }
    return out;
}

inline Bitset mask_from_hex(const std::string& hex, std::size_t size) {
    if (hex.size() != 2 * ((size + 7) / 8))
        throw ParseError("edge mask has " + std::to_string(hex.size()) + " hex digits, expected " +
                         std::to_string(2 * ((size + 7) / 8)));
    auto nibble = [](char c) -> unsigned {
        if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
        if (c >= 'A' && c <= 'F') return static_cast<unsigned>(c - 'A' + 10);
        throw ParseError(std::string("invalid hex digit `") + c + "` in edge mask");
    };
    Bitset mask(size);
    for (std::size_t j = 0; j < hex.size() / 2; ++j) {
        const unsigned byte = nibble(hex[2 * j]) << 4 | nibble(hex[2 * j + 1]);
        for (std::size_t b = 0; b < 8; ++b) {
            if (!((byte >> b) & 1u)) continue;
            if (8 * j + b >= size) throw ParseError("edge mask sets bits beyond the edge count");
            mask.set(8 * j + b);
        }
    }
    return mask;
}

// ---------------------------------------------------------------------------
// JSON helpers

namespace detail {

inline bool is_nonnegative_integer(const json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

inline const json& require(const json& obj, const std::string& path, const char* key) {
    if (!obj.is_object()) throw ParseError(path + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(path + "/" + key + ": required field missing");
    return *it;
}

inline double require_number(const json& obj, const std::string& path, const char* key) {
    const auto& v = require(obj, path, key);
    if (!v.is_number()) throw ParseError(path + "/" + key + ": expected a number");
    return v.get<double>();
}

inline std::uint64_t require_unsigned(const json& obj, const std::string& path, const char* key) {
    const auto& v = require(obj, path, key);
    if (!is_nonnegative_integer(v)) throw ParseError(path + "/" + key + ": expected a nonnegative integer");
    return v.get<std::uint64_t>();
}

inline std::string require_string(const json& obj, const std::string& path, const char* key) {
    const auto& v = require(obj, path, key);
    if (!v.is_string()) throw ParseError(path + "/" + key + ": expected a string");
    return v.get<std::string>();
}

inline json count_json(const ExtendedCount& c) {
    return c.is_infinite() ? json("infinite") : json(c.value());
}

inline ExtendedCount count_from_json(const json& v, const std::string& path) {
    if (v.is_string() && v.get<std::string>() == "infinite") return ExtendedCount::infinite();
    if (is_nonnegative_integer(v)) return ExtendedCount(v.get<std::uint64_t>());
    throw ParseError(path + ": expected a nonnegative integer or \"infinite\"");
}

// JSON has no infinities; non-finite margins are written as null.
inline json real_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

} // namespace detail

inline json vertices_to_json(const BaseGraph& g) {
    json j;
    j["n"] = g.n();
    j["dimension"] = g.dimension();
    json list = json::array();
    for (const auto& v : g.vertices()) list.push_back(v.to_string());
    j["vertices"] = std::move(list);
    return j;
}

inline const char* to_string(WitnessKind k) {
    switch (k) {
    case WitnessKind::None: return "none";
    case WitnessKind::Cycle: return "cycle";
    case WitnessKind::IndependentSet: return "independent_set";
    case WitnessKind::Coloring: return "coloring";
    }
    return "?";
}

// Witness vertex ids are written 1-based, matching DIMACS.
inline json solve_result_to_json(const SolveResult& r) {
    json j;
    j["value"] = detail::count_json(r.value);
    j["exact"] = r.exact;
    if (r.upper_bound) j["upper_bound"] = *r.upper_bound;
    if (r.witness_kind != WitnessKind::None) {
        json w;
        w["kind"] = to_string(r.witness_kind);
        json items = json::array();
        for (auto v : r.witness) items.push_back(r.witness_kind == WitnessKind::Coloring ? v : v + 1);
        w[r.witness_kind == WitnessKind::Coloring ? "colors" : "vertices"] = std::move(items);
        j["witness"] = std::move(w);
    } else {
        j["witness"] = nullptr;
    }
    j["nodes"] = r.nodes;
    return j;
}

// ---------------------------------------------------------------------------
// Event systems

inline const char* to_string(EventKind k) { return k == EventKind::Cycle ? "cycle" : "independent_set"; }

inline json event_system_to_json(const EventSystem& sys) {
    json j;
    j["n"] = sys.n;
    j["p"] = sys.p;
    j["k"] = sys.k;
    if (sys.l)
        j["l"] = *sys.l;
    else
        j["l"] = nullptr;
    json events = json::array();
    for (const auto& ev : sys.events) {
        json e;
        e["kind"] = to_string(ev.kind);
        e["meta"] = ev.meta;
        e["variable_set"] = ev.variable_set;
        e["probability"] = ev.probability;
        json verts = json::array();
        for (auto v : ev.vertices) verts.push_back(v + 1);
        e["vertices"] = std::move(verts);
        events.push_back(std::move(e));
    }
    j["events"] = std::move(events);
    j["warnings"] = sys.warnings;
    return j;
}

// Reads {n?, p?, k?, l?, events: [{kind, variable_set, probability, meta?, vertices?}]}
// and recomputes dependencies from the variable sets.
inline EventSystem event_system_from_json(const json& j) {
    EventSystem sys;
    if (!j.is_object()) throw ParseError("/: expected an object");
    if (j.contains("n")) sys.n = static_cast<int>(detail::require_unsigned(j, "", "n"));
    if (j.contains("p")) sys.p = detail::require_number(j, "", "p");
    if (j.contains("k") && !j["k"].is_null()) sys.k = static_cast<int>(detail::require_unsigned(j, "", "k"));
    if (j.contains("l") && !j["l"].is_null()) sys.l = detail::require_unsigned(j, "", "l");
    const auto& events = detail::require(j, "", "events");
    if (!events.is_array()) throw ParseError("/events: expected an array");
    for (std::size_t i = 0; i < events.size(); ++i) {
        const std::string path = "/events/" + std::to_string(i);
        const auto& e = events[i];
        BadEvent ev;
        const auto kind = detail::require_string(e, path, "kind");
        if (kind == "cycle")
            ev.kind = EventKind::Cycle;
        else if (kind == "independent_set")
            ev.kind = EventKind::IndependentSet;
        else
            throw ParseError(path + "/kind: expected \"cycle\" or \"independent_set\"");
        const auto& vars = detail::require(e, path, "variable_set");
        if (!vars.is_array()) throw ParseError(path + "/variable_set: expected an array");
        for (std::size_t t = 0; t < vars.size(); ++t) {
            if (!detail::is_nonnegative_integer(vars[t]))
                throw ParseError(path + "/variable_set/" + std::to_string(t) + ": expected a nonnegative integer");
            ev.variable_set.push_back(vars[t].get<std::uint32_t>());
        }
        std::sort(ev.variable_set.begin(), ev.variable_set.end());
        ev.variable_set.erase(std::unique(ev.variable_set.begin(), ev.variable_set.end()), ev.variable_set.end());
        ev.probability = detail::require_number(e, path, "probability");
        if (!(ev.probability >= 0.0 && ev.probability <= 1.0))
            throw ParseError(path + "/probability: must lie in [0, 1]");
        ev.meta = e.contains("meta") ? static_cast<std::uint32_t>(detail::require_unsigned(e, path, "meta"))
                                     : static_cast<std::uint32_t>(ev.variable_set.size());
        if (e.contains("vertices") && e["vertices"].is_array())
            for (const auto& v : e["vertices"]) ev.vertices.push_back(v.get<VertexId>() - 1);
        sys.events.push_back(std::move(ev));
    }
    sys.dependencies = dependency_graph(sys.events);
    return sys;
}

inline LLLAssignment assignment_from_json(const json& j) {
    LLLAssignment a;
    const auto style = detail::require_string(j, "", "style");
    if (style == "general")
        a.style = AssignmentStyle::General;
    else if (style == "bollobas")
        a.style = AssignmentStyle::Bollobas;
    else
        throw ParseError("/style: expected \"general\" or \"bollobas\"");
    const auto& values = detail::require(j, "", "values");
    if (!values.is_array()) throw ParseError("/values: expected an array");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!values[i].is_number()) throw ParseError("/values/" + std::to_string(i) + ": expected a number");
        a.values.push_back(values[i].get<double>());
    }
    return a;
}

inline json margin_report_to_json(const MarginReport& r, AssignmentStyle style) {
    json j;
    j["style"] = style == AssignmentStyle::General ? "general" : "bollobas";
    j["holds"] = r.holds;
    j["bound"] = r.bound;
    j["log_bound"] = detail::real_json(r.log_bound);
    j["min_margin"] = r.min_margin ? detail::real_json(*r.min_margin) : json(nullptr);
    json margins = json::array();
    for (double m : r.margins) margins.push_back(detail::real_json(m));
    j["margins"] = std::move(margins);
    j["failing"] = r.failing;
    j["hypothesis_violations"] = r.hypothesis_violations;
    return j;
}

inline json finite_report_to_json(const FiniteReport& r, double f) {
    json j;
    j["mode"] = "recipe_multipliers";
    j["f"] = f;
    j["holds"] = r.holds;
    j["infeasible"] = r.infeasible;
    json margins = json::array();
    for (double m : r.margins) margins.push_back(detail::real_json(m));
    j["finite_margins"] = std::move(margins);
    j["hypothesis_violations"] = r.hypothesis_violations;
    j["bollobas"] = margin_report_to_json(r.bollobas, AssignmentStyle::Bollobas);
    return j;
}

inline json recipe_parameters_to_json(const RecipeParameters& p) {
    json j;
    j["k"] = p.k;
    j["n"] = p.n;
    j["epsilon"] = p.epsilon;
    j["delta"] = p.delta;
    j["f"] = p.f;
    j["gamma"] = p.gamma;
    j["l"] = p.l;
    j["p"] = p.p();
    j["gamma_lower"] = p.lower();
    j["gamma_upper"] = p.upper();
    j["valid"] = p.valid();
    return j;
}

// ---------------------------------------------------------------------------
// Certificates

inline json certificate_to_json(const GirthCertificate& c) {
    json j;
    j["n"] = c.n;
    j["k"] = c.k;
    j["l"] = c.l;
    j["alpha"] = c.alpha;
    j["alpha_exact"] = c.alpha_exact;
    j["chi_lower"] = c.chi_lower;
    j["empirical_rate"] = c.empirical_rate;
    j["girth"] = detail::count_json(c.girth);
    j["vertex_count"] = c.vertex_count;
    j["edge_count"] = c.edge_count;
    j["seed"] = c.provenance.seed;
    if (c.provenance.method == SearchMethod::External) {
        j["gamma_or_p"] = nullptr;
    } else {
        json gp;
        gp[c.provenance.p_override ? "p" : "gamma"] = c.provenance.gamma_or_p;
        j["gamma_or_p"] = std::move(gp);
    }
    j["method"] = to_string(c.provenance.method);
    j["resamples"] = c.provenance.resamples;
    j["deletions"] = c.provenance.deletions;
    j["edge_mask_hex"] = mask_to_hex(c.mask);
    j["solver_versions"] = json::array({c.solver});
    return j;
}

inline GirthCertificate certificate_from_json(const json& j, std::size_t base_edge_count) {
    GirthCertificate c;
    c.n = static_cast<int>(detail::require_unsigned(j, "", "n"));
    c.k = static_cast<int>(detail::require_unsigned(j, "", "k"));
    c.l = detail::require_unsigned(j, "", "l");
    c.alpha = detail::require_unsigned(j, "", "alpha");
    const auto& exact = detail::require(j, "", "alpha_exact");
    if (!exact.is_boolean()) throw ParseError("/alpha_exact: expected a boolean");
    c.alpha_exact = exact.get<bool>();
    c.chi_lower = detail::require_unsigned(j, "", "chi_lower");
    c.empirical_rate = detail::require_number(j, "", "empirical_rate");
    c.girth = detail::count_from_json(detail::require(j, "", "girth"), "/girth");
    c.vertex_count = detail::require_unsigned(j, "", "vertex_count");
    c.edge_count = detail::require_unsigned(j, "", "edge_count");
    c.provenance.seed = detail::require_unsigned(j, "", "seed");
    const auto& gp = detail::require(j, "", "gamma_or_p");
    if (gp.is_object() && gp.contains("p")) {
        c.provenance.p_override = true;
        c.provenance.gamma_or_p = detail::require_number(gp, "/gamma_or_p", "p");
    } else if (!gp.is_null()) {
        c.provenance.gamma_or_p = detail::require_number(gp, "/gamma_or_p", "gamma");
    }
    const auto method = detail::require_string(j, "", "method");
    if (method == "mt")
        c.provenance.method = SearchMethod::MoserTardos;
    else if (method == "delete")
        c.provenance.method = SearchMethod::Deletion;
    else
        c.provenance.method = SearchMethod::External;
    if (j.contains("resamples")) c.provenance.resamples = detail::require_unsigned(j, "", "resamples");
    if (j.contains("deletions")) c.provenance.deletions = detail::require_unsigned(j, "", "deletions");
    c.mask = mask_from_hex(detail::require_string(j, "", "edge_mask_hex"), base_edge_count);
    const auto& versions = detail::require(j, "", "solver_versions");
    if (!versions.is_array() || versions.empty() || !versions[0].is_string())
        throw ParseError("/solver_versions: expected a nonempty array of strings");
    c.solver = versions[0].get<std::string>();
    return c;
}

inline json rejection_to_json(const CertificationRejection& r) {
    json j;
    j["reason"] = to_string(r.reason);
    j["message"] = r.message;
    json w = json::array();
    for (auto v : r.witness) w.push_back(v + 1);
    j["witness"] = std::move(w);
    return j;
}

inline json failure_report_to_json(const SearchReport& r, int n, int k, std::optional<std::uint64_t> l,
                                   const char* method) {
    json j;
    j["status"] = "failure";
    j["n"] = n;
    j["k"] = k;
    j["l"] = l ? json(*l) : json(nullptr);
    j["method"] = method;
    j["seed"] = r.seed;
    j["reason"] = r.failure;
    j["resamples"] = r.resamples;
    j["event_count"] = r.event_count;
    j["final_violated"] = r.final_violated;
    j["rejection"] = r.rejection ? rejection_to_json(*r.rejection) : json(nullptr);
    // summary of the violated-event trace
    json trace;
    trace["length"] = r.violated_trace.size();
    trace["first"] = r.violated_trace.empty() ? json(nullptr) : json(r.violated_trace.front());
    trace["last"] = r.violated_trace.empty() ? json(nullptr) : json(r.violated_trace.back());
    j["violated_trace"] = std::move(trace);
    return j;
}

} // namespace distgirth::io
