// distgirth command-line interface.
//
// Exit codes: 0 success (or verdict holds), 2 verdict fails or certification
// rejected, 1 usage or I/O error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <distgirth/distgirth.hpp>

namespace dg = distgirth;
namespace io = distgirth::io;
namespace fs = std::filesystem;

namespace {

constexpr const char* output_dir_env = "DISTGIRTH_OUTPUT_DIR";
constexpr std::uint64_t default_seed = 1;

enum Exit : int { ok = 0, usage = 1, verdict_fails = 2 };

fs::path resolve_output(const std::string& path) {
    fs::path p(path);
    if (p.is_relative())
        if (const char* dir = std::getenv(output_dir_env); dir != nullptr && *dir != '\0') p = fs::path(dir) / p;
    return p;
}

// Writes to the file (relative paths land in $DISTGIRTH_OUTPUT_DIR when set) or stdout.
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const auto p = resolve_output(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream os(p, std::ios::binary);
    if (!os) throw dg::Error("cannot open " + p.string() + " for writing");
    os << text;
    if (!os) throw dg::Error("failed writing " + p.string());
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw dg::Error("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

io::json read_json(const std::string& path) {
    try {
        return io::json::parse(read_file(path));
    } catch (const io::json::parse_error& e) {
        throw dg::ParseError(path + ": " + e.what());
    }
}

dg::Graph read_graph(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw dg::Error("cannot open " + path);
    try {
        return io::read_dimacs(is);
    } catch (const dg::ParseError& e) {
        throw dg::ParseError(path + ": " + e.what());
    }
}

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

struct ModelArgs {
    std::optional<double> gamma;
    std::optional<double> p;
    std::optional<std::uint64_t> seed;

    void add(CLI::App* cmd, bool with_seed) {
        auto* g = cmd->add_option("--gamma", gamma, "edge probability is gamma^(4n)")->check(CLI::Range(0.0, 1.0));
        auto* q = cmd->add_option("--p", p, "explicit edge probability (overrides gamma^(4n))")->check(CLI::Range(0.0, 1.0));
        g->excludes(q);
        if (with_seed) cmd->add_option("--seed", seed, "64-bit PRNG seed (default 1)");
    }

    dg::ModelParams params(int n) const {
        const std::uint64_t s = seed.value_or(default_seed);
        if (!seed) std::cerr << "seed = " << s << " (default)\n";
        if (p) return dg::ModelParams::with_p(*p, n, s);
        if (gamma) return dg::ModelParams::with_gamma(*gamma, n, s);
        throw dg::InvalidArgument("one of --gamma or --p is required");
    }

    double probability(int n) const {
        if (p) return *p;
        if (gamma) return std::pow(*gamma, 4.0 * n);
        throw dg::InvalidArgument("one of --gamma or --p is required");
    }
};

struct BudgetArgs {
    std::uint64_t node_limit = 0;
    double time_limit = 0.0;

    void add(CLI::App* cmd) {
        cmd->add_option("--node-limit", node_limit, "search-tree node budget, 0 = unlimited");
        cmd->add_option("--time-limit", time_limit, "seconds, 0 = unlimited")->check(CLI::NonNegativeNumber);
    }
    dg::SolveBudget budget() const { return {node_limit, time_limit}; }
};

// ---------------------------------------------------------------------------

struct GenArgs {
    int n = 0;
    int max_dimension = 16;
    std::string out;
    std::string vertices;
};

int run_gen(const GenArgs& a) {
    const auto g = dg::build_base_graph(a.n, {a.max_dimension});
    emit(a.out, io::to_dimacs(g.graph()));
    if (!a.vertices.empty()) emit(a.vertices, dump(io::vertices_to_json(g)));
    return ok;
}

struct SolveArgs {
    std::string graph;
    std::string what = "girth";
    int s = 3;
    int max_s = dg::default_max_cycle_length;
    BudgetArgs budget;
    std::string out;
};

int run_solve(const SolveArgs& a) {
    const auto g = read_graph(a.graph);
    io::json j;
    if (a.what == "girth") {
        j = io::solve_result_to_json(dg::girth(g));
    } else if (a.what == "alpha") {
        j = io::solve_result_to_json(dg::independence_number(g, a.budget.budget()));
    } else if (a.what == "chi") {
        j = io::solve_result_to_json(dg::chromatic_number(g, a.budget.budget()));
    } else {
        const auto c = dg::count_cycles(g, a.s, a.max_s);
        j["s"] = a.s;
        j["labeled"] = c.labeled;
        j["distinct"] = c.distinct;
    }
    emit(a.out, dump(j));
    return ok;
}

struct SampleArgs {
    int n = 0;
    ModelArgs model;
    int max_dimension = 16;
    std::string out;
    std::string dimacs;
};

int run_sample(const SampleArgs& a) {
    const auto g = dg::build_base_graph(a.n, {a.max_dimension});
    const auto m = a.model.params(a.n);
    const auto sub = dg::sample_subgraph(g.graph(), m);
    io::json j;
    j["n"] = a.n;
    j["p"] = m.p();
    j["gamma"] = m.gamma();
    j["p_override"] = m.has_p_override();
    j["seed"] = m.seed();
    j["base_edge_count"] = g.graph().edge_count();
    j["edge_count"] = sub.size();
    j["log_probability"] = (m.p() > 0.0 && m.p() < 1.0) ? io::json(dg::log_probability(sub, m.p())) : io::json(nullptr);
    j["edge_mask_hex"] = io::mask_to_hex(sub.mask());
    emit(a.out, dump(j));
    if (!a.dimacs.empty()) emit(a.dimacs, io::to_dimacs(sub.to_graph()));
    return ok;
}

struct EventsArgs {
    int n = 0;
    int k = 3;
    std::optional<std::uint64_t> l;
    ModelArgs model;
    std::uint64_t guard = dg::EnumerationGuard{}.max_events;
    std::string out;
};

int run_events(const EventsArgs& a) {
    const auto g = dg::build_base_graph(a.n);
    const double p = a.model.probability(a.n);
    if (!(p >= 0.0 && p <= 1.0)) throw dg::InvalidArgument("p must lie in [0, 1]");
    const auto sys = dg::build_event_system(g.graph(), a.n, p, a.k, a.l, {a.guard});
    for (const auto& w : sys.warnings) std::cerr << "warning: " << w << '\n';
    emit(a.out, dump(io::event_system_to_json(sys)));
    return ok;
}

struct LllArgs {
    std::string events;
    std::string assignment;
    bool recipe = false;
    double f = 0.01;
    double tolerance = dg::default_tolerance;
    std::string out;
};

int run_lll(const LllArgs& a) {
    const auto sys = io::event_system_from_json(read_json(a.events));
    if (a.recipe) {
        const auto r = dg::verify_finite_system(sys, a.f, a.tolerance);
        emit(a.out, dump(io::finite_report_to_json(r, a.f)));
        return r.holds ? ok : verdict_fails;
    }
    if (a.assignment.empty()) throw dg::InvalidArgument("pass --assignment FILE or --recipe-multipliers");
    const auto asg = io::assignment_from_json(read_json(a.assignment));
    const auto lll = dg::to_lll_system(sys);
    const auto r = asg.style == dg::AssignmentStyle::General ? dg::check_general_lll(lll, asg, a.tolerance)
                                                             : dg::check_bollobas_lll(lll, asg, a.tolerance);
    emit(a.out, dump(io::margin_report_to_json(r, asg.style)));
    return r.holds ? ok : verdict_fails;
}

struct ParamsArgs {
    int k = 3;
    double delta = 0.1;
    int n = 1;
    std::string out;
};

int run_params(const ParamsArgs& a) {
    const auto p = dg::choose_parameters(a.k, a.delta, a.n);
    auto j = io::recipe_parameters_to_json(p);
    io::json exps = io::json::object();
    for (int s = 3; s <= a.k; ++s) exps[std::to_string(s)] = dg::verify_exponent_condition(s, p.f, p.gamma);
    j["exponent_condition"] = std::move(exps);
    emit(a.out, dump(j));
    return ok;
}

struct ScanArgs {
    int k_min = 3;
    int k_max = 10;
    double delta = 0.1;
    std::vector<double> eps{0.25, 0.5, 1.0, 2.0};
    std::vector<double> f{0.01, 0.1};
    bool as_json = false;
    std::string out;
};

int run_scan(const ScanArgs& a) {
    if (a.k_min < 3 || a.k_max < a.k_min) throw dg::InvalidArgument("need 3 <= k-min <= k-max");
    io::json rows = io::json::array();
    auto add_row = [&](int k, double eps, double f, bool recipe) {
        io::json r;
        r["k"] = k;
        r["epsilon"] = eps;
        r["delta"] = a.delta;
        r["f"] = f;
        r["recipe"] = recipe;
        try {
            const auto iv = dg::feasible_gamma_interval(k, eps, a.delta, f);
            r["lower"] = iv.lower;
            r["upper"] = iv.upper;
            r["nonempty"] = iv.nonempty;
        } catch (const dg::InvalidArgument&) {
            r["lower"] = nullptr;
            r["upper"] = nullptr;
            r["nonempty"] = false;
        }
        rows.push_back(std::move(r));
    };
    for (int k = a.k_min; k <= a.k_max; ++k) {
        for (double eps : a.eps)
            for (double f : a.f) add_row(k, eps, f, false);
        const auto rec = dg::choose_parameters(k, a.delta);
        add_row(k, rec.epsilon, rec.f, true);
        rows.back()["gamma"] = rec.gamma;
    }
    if (a.as_json) {
        emit(a.out, dump(rows));
        return ok;
    }
    std::ostringstream os;
    os << std::left << std::setw(4) << "k" << std::setw(12) << "epsilon" << std::setw(12) << "f" << std::setw(12)
       << "lower" << std::setw(12) << "upper" << "window\n";
    os << std::fixed << std::setprecision(6);
    for (const auto& r : rows) {
        os << std::setw(4) << r["k"].get<int>() << std::setw(12) << r["epsilon"].get<double>() << std::setw(12)
           << r["f"].get<double>();
        if (r["lower"].is_null())
            os << std::setw(24) << "(invalid f)";
        else
            os << std::setw(12) << r["lower"].get<double>() << std::setw(12) << r["upper"].get<double>();
        os << (r["nonempty"].get<bool>() ? "nonempty" : "empty") << (r["recipe"].get<bool>() ? "  <- recipe" : "")
           << '\n';
    }
    emit(a.out, os.str());
    return ok;
}

struct SearchArgs {
    int n = 0;
    int k = 3;
    std::optional<std::uint64_t> l;
    ModelArgs model;
    std::string method = "delete";
    bool subset_events = false;
    std::uint64_t max_resamples = 1'000'000;
    std::uint64_t restarts = 1;
    unsigned jobs = 1;
    BudgetArgs budget;
    std::string out;
    std::string dimacs;
};

int run_search(const SearchArgs& a) {
    const auto base = dg::build_base_graph(a.n);
    const auto m = a.model.params(a.n);
    auto attempt = [&](const dg::ModelParams& params) {
        if (a.method == "mt") {
            dg::MoserTardosOptions opt;
            opt.max_resamples = a.max_resamples;
            opt.subset_events = a.subset_events;
            opt.certify_budget = a.budget.budget();
            return dg::moser_tardos_search(base, params, a.k, a.l, opt);
        }
        auto res = dg::deletion_method(base, params, a.k, a.l, a.budget.budget());
        dg::SearchReport rep;
        rep.seed = params.seed();
        rep.success = res.certification.accepted();
        if (rep.success) {
            rep.certificate = std::move(res.certification.certificate);
        } else {
            rep.rejection = std::move(res.certification.rejection);
            rep.failure = "certification rejected: " + rep.rejection->message;
        }
        return rep;
    };
    const auto rep = dg::run_restarts(m, a.restarts, a.jobs, attempt);
    if (!rep.success) {
        emit(a.out, dump(io::failure_report_to_json(rep, a.n, a.k, a.l, a.method.c_str())));
        return verdict_fails;
    }
    emit(a.out, dump(io::certificate_to_json(*rep.certificate)));
    if (!a.dimacs.empty())
        emit(a.dimacs, io::to_dimacs(dg::EdgeSubset(base.graph(), rep.certificate->mask).to_graph()));
    return ok;
}

struct CertifyArgs {
    std::string certificate;
    std::string graph;
    int n = 0;
    int k = 3;
    std::optional<std::uint64_t> l;
    BudgetArgs budget;
    std::string out;
};

int run_certify(const CertifyArgs& a) {
    if (!a.certificate.empty()) {
        const auto j = read_json(a.certificate);
        const int n = static_cast<int>(j.at("n").get<std::uint64_t>());
        const auto base = dg::build_base_graph(n);
        const auto cert = io::certificate_from_json(j, base.graph().edge_count());
        const auto problem = dg::reverify_certificate(base, cert, a.budget.budget());
        io::json r;
        r["verified"] = problem.empty();
        r["problem"] = problem.empty() ? io::json(nullptr) : io::json(problem);
        emit(a.out, dump(r));
        return problem.empty() ? ok : verdict_fails;
    }
    if (a.graph.empty() || a.n < 1) throw dg::InvalidArgument("pass --certificate FILE, or --graph FILE with --n");
    const auto base = dg::build_base_graph(a.n);
    const auto sub = io::subset_from_graph(base.graph(), read_graph(a.graph));
    const auto c = dg::certify(base, sub, a.k, a.l, a.budget.budget());
    if (!c.accepted()) {
        io::json r;
        r["status"] = "rejected";
        r["rejection"] = io::rejection_to_json(*c.rejection);
        emit(a.out, dump(r));
        return verdict_fails;
    }
    emit(a.out, dump(io::certificate_to_json(*c.certificate)));
    return ok;
}

struct ExportArgs {
    std::string certificate;
    std::string graph;
    std::string out;
};

int run_export(const ExportArgs& a) {
    if (!a.certificate.empty()) {
        const auto j = read_json(a.certificate);
        const auto base = dg::build_base_graph(static_cast<int>(j.at("n").get<std::uint64_t>()));
        const auto cert = io::certificate_from_json(j, base.graph().edge_count());
        emit(a.out, io::to_dimacs(dg::EdgeSubset(base.graph(), cert.mask).to_graph()));
        return ok;
    }
    if (a.graph.empty()) throw dg::InvalidArgument("pass --certificate FILE or --graph FILE");
    emit(a.out, io::to_dimacs(read_graph(a.graph)));
    return ok;
}

// Flat `key = value` lines; '#' starts a comment.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw dg::Error("cannot open config file " + path);
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(is, line)) {
        ++no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw dg::ParseError(path + ": expected key = value", no);
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distance graphs with large girth: construction, solvers, Local Lemma checks and certified search"};
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_version_flag("--version", std::string(dg::solver_version));
    std::string config;
    app.add_option("--config", config, "flat key = value file mirroring the subcommand's flags");

    GenArgs gen;
    auto* c_gen = app.add_subcommand("gen", "write G_{4n} as DIMACS (and its vertices as JSON)");
    c_gen->add_option("--n", gen.n, "quarter dimension")->required()->check(CLI::Range(1, 64));
    c_gen->add_option("--max-dimension", gen.max_dimension, "size guard on 4n");
    c_gen->add_option("--out", gen.out, "DIMACS output (default stdout)");
    c_gen->add_option("--vertices", gen.vertices, "vertex JSON output");

    SolveArgs solve;
    auto* c_solve = app.add_subcommand("solve", "girth, independence number, chromatic number or cycle counts");
    c_solve->add_option("--graph", solve.graph, "DIMACS file")->required();
    c_solve->add_option("--what", solve.what)->check(CLI::IsMember({"girth", "alpha", "chi", "cycles"}));
    c_solve->add_option("--s", solve.s, "cycle length for --what cycles");
    c_solve->add_option("--max-s", solve.max_s, "largest accepted cycle length");
    solve.budget.add(c_solve);
    c_solve->add_option("--out", solve.out);

    SampleArgs sample;
    auto* c_sample = app.add_subcommand("sample", "sample a random subgraph of G_{4n}");
    c_sample->add_option("--n", sample.n)->required()->check(CLI::Range(1, 64));
    sample.model.add(c_sample, true);
    c_sample->add_option("--max-dimension", sample.max_dimension);
    c_sample->add_option("--out", sample.out, "JSON output (default stdout)");
    c_sample->add_option("--dimacs", sample.dimacs, "DIMACS of the realized subgraph");

    EventsArgs events;
    auto* c_events = app.add_subcommand("events", "enumerate the bad-event system on G_{4n}");
    c_events->add_option("--n", events.n)->required()->check(CLI::Range(1, 64));
    c_events->add_option("--k", events.k, "cycle events for lengths 3..k")->check(CLI::Range(3, 64));
    c_events->add_option("--l", events.l, "independent-set events on l-subsets")->check(CLI::PositiveNumber);
    events.model.add(c_events, false);
    c_events->add_option("--guard", events.guard, "maximum number of events");
    c_events->add_option("--out", events.out);

    LllArgs lll;
    auto* c_lll = app.add_subcommand("lll-check", "check Local Lemma conditions on an event system");
    c_lll->add_option("--events", lll.events, "event-system JSON")->required();
    auto* asg = c_lll->add_option("--assignment", lll.assignment, "assignment JSON {style, values}");
    auto* pm = c_lll->add_flag("--recipe-multipliers", lll.recipe, "use delta^y = e, delta^x = exp(p^(1+f) a)");
    asg->excludes(pm);
    c_lll->add_option("--f", lll.f, "exponent slack f for the recipe multipliers")->check(CLI::PositiveNumber);
    c_lll->add_option("--tolerance", lll.tolerance)->check(CLI::NonNegativeNumber);
    c_lll->add_option("--out", lll.out);

    ParamsArgs params;
    auto* c_params = app.add_subcommand("params", "choose (epsilon, f, gamma, l) for given k and delta");
    c_params->add_option("--k", params.k)->required()->check(CLI::Range(3, 1000));
    c_params->add_option("--delta", params.delta)->required()->check(CLI::PositiveNumber);
    c_params->add_option("--n", params.n)->check(CLI::Range(1, 64));
    c_params->add_option("--out", params.out);

    ScanArgs scan;
    auto* c_scan = app.add_subcommand("scan", "tabulate the gamma window over a (k, epsilon, f) grid");
    c_scan->add_option("--k-min", scan.k_min);
    c_scan->add_option("--k-max", scan.k_max);
    c_scan->add_option("--delta", scan.delta)->check(CLI::PositiveNumber);
    c_scan->add_option("--eps", scan.eps, "epsilon grid")->delimiter(',');
    c_scan->add_option("--f", scan.f, "f grid")->delimiter(',');
    c_scan->add_flag("--json", scan.as_json);
    c_scan->add_option("--out", scan.out);

    SearchArgs search;
    auto* c_search = app.add_subcommand("search", "search for a certified subgraph with girth > k");
    c_search->add_option("--n", search.n)->required()->check(CLI::Range(1, 64));
    c_search->add_option("--k", search.k)->check(CLI::Range(2, 64));
    c_search->add_option("--l", search.l, "required bound alpha <= l (default: exact alpha)")->check(CLI::PositiveNumber);
    search.model.add(c_search, true);
    c_search->add_option("--method", search.method)->check(CLI::IsMember({"mt", "delete"}));
    c_search->add_flag("--subset-events", search.subset_events, "Moser-Tardos also resamples independent l-subsets");
    c_search->add_option("--max-resamples", search.max_resamples);
    c_search->add_option("--restarts", search.restarts, "restart r uses seed + r")->check(CLI::PositiveNumber);
    c_search->add_option("--jobs", search.jobs, "parallel restarts")->check(CLI::PositiveNumber);
    search.budget.add(c_search);
    c_search->add_option("--out", search.out, "certificate or failure report JSON");
    c_search->add_option("--dimacs", search.dimacs, "DIMACS of the certified subgraph");

    CertifyArgs cert;
    auto* c_cert = app.add_subcommand("certify", "certify a subgraph, or re-verify a certificate");
    c_cert->add_option("--certificate", cert.certificate, "certificate JSON to re-verify");
    c_cert->add_option("--graph", cert.graph, "subgraph of G_{4n} in DIMACS");
    c_cert->add_option("--n", cert.n)->check(CLI::Range(1, 64));
    c_cert->add_option("--k", cert.k)->check(CLI::Range(2, 64));
    c_cert->add_option("--l", cert.l)->check(CLI::PositiveNumber);
    cert.budget.add(c_cert);
    c_cert->add_option("--out", cert.out);

    ExportArgs exp;
    auto* c_export = app.add_subcommand("export", "DIMACS of a certificate's subgraph, or canonical re-serialization");
    c_export->add_option("--certificate", exp.certificate);
    c_export->add_option("--graph", exp.graph);
    c_export->add_option("--out", exp.out);

    // Splice config values in front of the command-line flags so that flags win.
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] != "--config") continue;
            const auto entries = read_config(args[i + 1]);
            const auto sub_pos = std::find_if(args.begin(), args.end(), [&](const std::string& s) {
                return app.get_subcommand_no_throw(s) != nullptr;
            });
            if (sub_pos == args.end()) break;
            auto* sub = app.get_subcommand(*sub_pos);
            std::vector<std::string> injected;
            for (const auto& [key, value] : entries)
                if (sub->get_option_no_throw("--" + key) != nullptr) injected.push_back("--" + key + "=" + value);
            args.insert(sub_pos + 1, injected.begin(), injected.end());
            break;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    std::reverse(args.begin(), args.end());

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*c_gen) return run_gen(gen);
        if (*c_solve) return run_solve(solve);
        if (*c_sample) return run_sample(sample);
        if (*c_events) return run_events(events);
        if (*c_lll) return run_lll(lll);
        if (*c_params) return run_params(params);
        if (*c_scan) return run_scan(scan);
        if (*c_search) return run_search(search);
        if (*c_cert) return run_certify(cert);
        if (*c_export) return run_export(exp);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}
