#include <cstdlib>
#include <sstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "loopmass/error.hpp"

namespace {

using cli::json;

enum Exit { kPass = 0, kFail = 1, kPrecondition = 2, kBudget = 3, kStatistics = 4 };

int threads_from_env() {
    const char* s = std::getenv("LOOPMASS_THREADS");
    if (!s || !*s) return int(std::max(1u, std::thread::hardware_concurrency()));
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (*end || v < 1) throw cli::ConfigError("LOOPMASS_THREADS must be a positive integer");
    return int(v);
}

json parse_pair(const std::string& s, bool integer) {
    auto c = s.find(',');
    if (c == std::string::npos) throw cli::ConfigError("expected 'a,b', got '" + s + "'");
    try {
        if (integer) return json::array({std::stoi(s.substr(0, c)), std::stoi(s.substr(c + 1))});
        return json::array({std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))});
    } catch (const std::exception&) {
        throw cli::ConfigError("cannot parse '" + s + "'");
    }
}

// flag values collected per leaf, written into the config after --set
struct Flags {
    std::string config;
    std::vector<std::string> sets;
    std::string csv;
    double n = 0, kappa = 0, a = 0, h = 0, tol = 0, dt = 0, T = 0, band = 0;
    int order = 0, lmax = 0, runs = 0, trace_runs = 0;
    std::uint64_t seed = 0, node_limit = 0;
    std::string pattern, eta, dom, mode, dump, sweep;
    std::vector<std::string> points, marks;
    std::vector<int> distances;
};

struct Leaf {
    std::string name;
    CLI::App* app;
    Flags flags;
};

void add_common(Leaf& l) {
    auto* a = l.app;
    a->add_option("--config", l.flags.config, "JSON configuration file");
    a->add_option("--set", l.flags.sets, "override, key.path=value")->take_all();
    a->add_option("--csv", l.flags.csv, "write a CSV table to this path");
}

void add_model(Leaf& l) {
    l.app->add_option("--n", l.flags.n, "loop weight n in [0, 2]");
    l.app->add_option("--kappa", l.flags.kappa, "SLE parameter in [8/3, 4]");
}

void add_points(Leaf& l) { l.app->add_option("--points", l.flags.points, "points as re,im")->take_all(); }

void add_stencil(Leaf& l) {
    l.app->add_option("--h", l.flags.h, "stencil step (absolute)");
    l.app->add_option("--order", l.flags.order, "stencil order, 2 or 4");
    l.app->add_option("--tol", l.flags.tol, "pass threshold on the normalized residual");
}

void add_lattice(Leaf& l) {
    l.app->add_option("--dom", l.flags.dom, "domain ROWSxCOLS");
    l.app->add_option("--lmax", l.flags.lmax, "maximal polygon length");
    l.app->add_option("--n", l.flags.n, "loop weight fixing x_c");
    l.app->add_option("--mode", l.flags.mode, "free or half_plane");
    l.app->add_option("--node-limit", l.flags.node_limit, "backtracking node budget");
    l.app->add_option("--dump", l.flags.dump, "polygon dump file");
}

void add_sle(Leaf& l) {
    l.app->add_option("--kappa", l.flags.kappa, "driving speed");
    l.app->add_option("--dt", l.flags.dt, "time step");
    l.app->add_option("--T", l.flags.T, "duration");
    l.app->add_option("--runs", l.flags.runs, "number of runs");
    l.app->add_option("--seed", l.flags.seed, "base seed");
}

bool given(const CLI::App* a, const char* opt) {
    const auto* o = a->get_option_no_throw(opt);
    return o && o->count() > 0;
}

json build_config(const Leaf& l) {
    const auto* a = l.app;
    const auto& f = l.flags;
    json cfg = json::object();
    if (!f.config.empty()) cfg = cli::load_file(f.config);
    if (!cfg.is_object()) throw cli::ConfigError("configuration must be a JSON object");
    for (auto& s : f.sets) cli::apply_set(cfg, s);
    bool lattice = l.name.rfind("lattice", 0) == 0, sle = l.name.rfind("sle", 0) == 0;
    json over = json::object();
    if (given(a, "--n")) (lattice ? over["lattice"]["n"] : over["model"]["n"]) = f.n;
    if (given(a, "--kappa")) (sle ? over["sle"]["kappa"] : over["model"]["kappa"]) = f.kappa;
    if (given(a, "--a")) over["a"] = f.a;
    if (given(a, "--points")) {
        json p = json::array();
        for (auto& s : f.points) p.push_back(parse_pair(s, false));
        over["points"] = p;
    }
    if (given(a, "--pattern")) over["pattern"] = f.pattern;
    if (given(a, "--eta")) over["eta"] = parse_pair(f.eta, false);
    if (given(a, "--sweep")) {
        // param:from:to:steps
        std::vector<std::string> parts;
        std::stringstream ss(f.sweep);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() != 4) throw cli::ConfigError("--sweep expects param:from:to:steps");
        try {
            over["sweep"] = {{"param", parts[0]}, {"from", std::stod(parts[1])}, {"to", std::stod(parts[2])},
                             {"steps", std::stoi(parts[3])}};
        } catch (const std::exception&) {
            throw cli::ConfigError("cannot parse --sweep " + f.sweep);
        }
    }
    if (given(a, "--h")) over["stencil"]["h"] = f.h;
    if (given(a, "--order")) over["stencil"]["order"] = f.order;
    if (given(a, "--tol")) (l.name == "verify ope-c" ? over["ope"]["tolerance"] : over["stencil"]["tolerance"]) = f.tol;
    if (given(a, "--dom")) over["lattice"]["dom"] = f.dom;
    if (given(a, "--lmax")) over["lattice"]["lmax"] = f.lmax;
    if (given(a, "--mode")) over["lattice"]["mode"] = f.mode;
    if (given(a, "--node-limit")) over["lattice"]["node_limit"] = f.node_limit;
    if (given(a, "--dump")) over["lattice"]["dump"] = f.dump;
    if (given(a, "--marks")) {
        json m = json::array();
        for (auto& s : f.marks) m.push_back(parse_pair(s, true));
        over["lattice"]["marks"] = m;
    }
    if (given(a, "--distances")) over["lattice"]["distances"] = f.distances;
    if (given(a, "--dt")) over["sle"]["dt"] = f.dt;
    if (given(a, "--T")) over["sle"]["T"] = f.T;
    if (given(a, "--runs")) over["sle"]["runs"] = f.runs;
    if (given(a, "--seed")) over["sle"]["seed"] = f.seed;
    if (given(a, "--band")) over["sle"]["band"] = f.band;
    if (given(a, "--trace-runs")) over["sle"]["trace_runs"] = f.trace_runs;
    cli::merge_into(cfg, over);
    return cfg;
}

int exit_for(loopmass::ErrorKind k) {
    switch (k) {
        case loopmass::ErrorKind::Budget: return kBudget;
        case loopmass::ErrorKind::TooManySwallowed: return kStatistics;
        default: return kPrecondition;
    }
}

void report_error(const std::string& command, const std::string& kind, const std::string& msg) {
    json e = {{"command", command}, {"status", "error"}, {"error", kind}, {"message", msg}};
    std::cout << e.dump(2) << std::endl;
    std::cerr << msg << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loopmass: O(n) loop-model correlators, loop masses and their lattice/SLE cross-checks"};
    app.set_help_flag("--help", "show help");
    app.require_subcommand(1);
    std::vector<std::unique_ptr<Leaf>> leaves;
    auto leaf = [&](CLI::App* group, const std::string& group_name, const std::string& name, const std::string& help) {
        auto l = std::make_unique<Leaf>();
        l->name = group_name + " " + name;
        l->app = group->add_subcommand(name, help);
        add_common(*l);
        leaves.push_back(std::move(l));
        return leaves.back().get();
    };

    auto* eval = app.add_subcommand("eval", "evaluate correlators and masses")->require_subcommand(1);
    for (auto [name, help] : std::vector<std::pair<std::string, std::string>>{
             {"two-point", "bulk twist two-point function"},
             {"four-point", "bulk twist four-point function"},
             {"ising", "Ising spin four-point closed form"},
             {"boundary", "upper-half-plane twist two-point function"},
             {"w", "bulk loop mass for a two-sided pattern"},
             {"w-boundary", "boundary loop mass"},
             {"q", "the q function at a cross ratio"}}) {
        auto* l = leaf(eval, "eval", name, help);
        if (name != "ising" && name != "w" && name != "w-boundary" && name != "q") add_model(*l);
        if (name != "q") add_points(*l);
        if (name == "two-point" || name == "four-point" || name == "boundary")
            l->app->add_option("--a", l->flags.a, "short-distance cutoff");
        if (name == "w") l->app->add_option("--pattern", l->flags.pattern, "12|34, 13|24 or 14|23");
        if (name == "q") l->app->add_option("--eta", l->flags.eta, "cross ratio re,im");
        l->app->add_option("--sweep", l->flags.sweep, "param:from:to:steps over eta_re/eta_im or z1_re/z1_im");
    }

    auto* verify = app.add_subcommand("verify", "finite-difference and identity checks")->require_subcommand(1);
    for (auto name : {"bpz", "boundary-bpz", "w-pde", "w-real-pde", "ope-c"}) {
        auto* l = leaf(verify, "verify", name, std::string("check ") + name);
        std::string n = name;
        if (n == "bpz" || n == "boundary-bpz" || n == "ope-c") add_model(*l);
        if (n != "ope-c") {
            add_points(*l);
            add_stencil(*l);
        } else {
            l->app->add_option("--tol", l->flags.tol, "absolute tolerance on c");
        }
    }

    auto* lattice = app.add_subcommand("lattice", "honeycomb polygon enumeration")->require_subcommand(1);
    for (auto name : {"enumerate", "classes", "fit-2pt", "compare-w"}) {
        auto* l = leaf(lattice, "lattice", name, std::string("lattice ") + name);
        add_lattice(*l);
        std::string n = name;
        if (n == "classes" || n == "compare-w") l->app->add_option("--marks", l->flags.marks, "faces as row,col")->take_all();
        if (n == "fit-2pt") l->app->add_option("--distances", l->flags.distances, "face distances")->take_all();
    }

    auto* sle = app.add_subcommand("sle", "chordal Loewner evolution")->require_subcommand(1);
    {
        auto* l = leaf(sle, "sle", "drift", "drift of the subtracted mass against the Laplacian");
        add_sle(*l);
        add_points(*l);
        l->app->add_option("--band", l->flags.band, "acceptance band in standard errors");
        l->app->add_option("--trace-runs", l->flags.trace_runs, "runs written to the CSV trace");
        auto* m = leaf(sle, "sle", "normalization", "hydrodynamic normalization of sampled chains");
        add_sle(*m);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kPrecondition;
    }

    Leaf* chosen = nullptr;
    for (auto& l : leaves)
        if (l->app->parsed()) chosen = l.get();
    if (!chosen) return kPrecondition;

    cli::Invocation inv;
    inv.command = chosen->name;
    try {
        inv.threads = threads_from_env();
        inv.cfg = build_config(*chosen);
        if (!chosen->flags.csv.empty()) inv.csv = chosen->flags.csv;
        auto out = cli::run_command(inv);
        std::cout << cli::make_record(inv, out).dump(2) << std::endl;
        if (out.pass && !*out.pass) return kFail;
        return kPass;
    } catch (const cli::ConfigError& e) {
        report_error(inv.command, "ConfigError", e.what());
        return kPrecondition;
    } catch (const loopmass::Error& e) {
        report_error(inv.command, loopmass::error_kind_name(e.kind()), e.what());
        return exit_for(e.kind());
    }
}
