#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>

#include "loopmass/correlators.hpp"
#include "loopmass/error.hpp"
#include "loopmass/honeycomb_oracle.hpp"
#include "loopmass/mu_mass.hpp"
#include "loopmass/pde_check.hpp"
#include "loopmass/sle_drift.hpp"
#include "loopmass/version.hpp"

namespace cli {

using namespace loopmass;

namespace {

constexpr double kPi = std::numbers::pi;

// ---- config access with materialised defaults ----

json& section(json& cfg, const char* name) {
    if (!cfg.contains(name)) cfg[name] = json::object();
    return cfg[name];
}

template <class T>
T get_or(json& obj, const char* key, T def) {
    if (!obj.contains(key)) obj[key] = def;
    return obj[key].get<T>();
}

std::vector<Complex> points(json& cfg, std::size_t k, const std::vector<Complex>& def) {
    if (!cfg.contains("points")) {
        json a = json::array();
        for (auto z : def) a.push_back({z.real(), z.imag()});
        cfg["points"] = a;
    }
    std::vector<Complex> out;
    for (auto& p : cfg["points"]) out.emplace_back(p[0].get<double>(), p[1].get<double>());
    if (out.size() != k) throw ConfigError("this command needs " + std::to_string(k) + " points");
    return out;
}

const std::vector<Complex> kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
const std::vector<Complex> kUpper{{0, 1}, {0, 2}};

BulkConfig bulk(json& cfg) {
    auto z = points(cfg, 4, kSquare);
    BulkConfig c{{z[0], z[1], z[2], z[3]}};
    if (cfg.contains("a")) c.a = cfg["a"].get<double>();
    return c;
}

ModelParams model(json& cfg, double def_n = 1.0) {
    auto& m = section(cfg, "model");
    if (m.contains("kappa")) {
        if (m.contains("n")) throw ConfigError("give model.n or model.kappa, not both");
        return params_from_kappa(m["kappa"].get<double>());
    }
    return params_from_n(get_or(m, "n", def_n));
}

Normalization normalization(json& cfg) {
    auto& s = section(cfg, "normalization");
    return {get_or(s, "A", 1.0), get_or(s, "varrho", 0.0), get_or(s, "sigma", 0.0)};
}

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json report_json(const ResidualReport& r) {
    return {{"residual", r.residual},   {"scale", r.scale},
            {"normalized", r.normalized}, {"normalized_half", r.normalized_half},
            {"measured_order", r.measured_order}, {"h", r.h}};
}

// ---- CSV ----

std::string unit_of(const std::string& col) {
    if (col.rfind("z", 0) == 0) return "a";
    if (col == "distance") return "faces";
    if (col == "length") return "edges";
    if (col == "t") return "time";
    if (col == "count" || col == "run") return "count";
    return "1";
}

class Csv {
public:
    explicit Csv(const std::string& path) : out_(path) {
        if (!out_) throw ConfigError("cannot write " + path);
        out_.precision(17);
    }
    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i] << " [" << unit_of(cols[i]) << "]";
        out_ << "\n";
    }
    void row(const std::vector<json>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            out_ << (i ? "," : "");
            if (vals[i].is_string()) out_ << vals[i].get<std::string>();
            else out_ << vals[i].dump();
        }
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

// ---- eval ----

using EvalFn = std::function<json(json&)>;

json eval_two_point(json& cfg) {
    auto p = model(cfg);
    auto z = points(cfg, 2, {{0, 0}, {2, 0}});
    double a = get_or(cfg, "a", 1.0);
    return {{"value", two_point(z[0], z[1], p, a)}, {"x_twist", twist_dimension(p)}};
}

json eval_four_point(json& cfg) {
    auto p = model(cfg);
    auto c = bulk(cfg);
    auto nm = normalization(cfg);
    return {{"value", four_point(c, p, nm)}, {"eta", cjson(cross_ratio(c).u)}, {"kappa", p.kappa}};
}

json eval_ising(json& cfg) {
    auto c = bulk(cfg);
    auto nm = normalization(cfg);
    return {{"value", ising_four_point(c, nm)}, {"eta", cjson(cross_ratio(c).u)}};
}

json eval_boundary(json& cfg) {
    auto p = model(cfg);
    auto z = points(cfg, 2, kUpper);
    auto nm = normalization(cfg);
    double a = get_or(cfg, "a", 1.0);
    return {{"value", boundary_two_point(z[0], z[1], p, nm, a)}, {"eta", boundary_cross_ratio(z[0], z[1])}};
}

json eval_w(json& cfg) {
    auto c = bulk(cfg);
    auto pat = SeparationPattern::parse_bulk(get_or(cfg, "pattern", std::string("12|34")));
    auto w = w_bulk(pat, c);
    return {{"value", w.value}, {"pattern", w.pattern.label()}, {"eta", cjson(cross_ratio(c).u)}};
}

json eval_w_boundary(json& cfg) {
    auto z = points(cfg, 2, kUpper);
    double eta = boundary_cross_ratio(z[0], z[1]);
    return {{"value", w_boundary(z[0], z[1]).value}, {"eta", eta}, {"leading_log", -std::log(-eta) / (12 * kPi)}};
}

json eval_q(json& cfg) {
    if (!cfg.contains("eta")) cfg["eta"] = {0.5, 0.0};
    Complex eta(cfg["eta"][0].get<double>(), cfg["eta"][1].get<double>());
    return {{"value", q_fn(eta)}, {"eta", cjson(eta)}};
}

Outcome run_eval(Invocation& inv, const EvalFn& fn) {
    Outcome o;
    json& cfg = inv.cfg;
    if (!cfg.contains("sweep")) {
        o.outputs = fn(cfg);
        if (inv.csv) {
            Csv csv(*inv.csv);
            std::vector<std::string> cols;
            std::vector<json> vals;
            for (auto& [k, v] : o.outputs.items())
                if (v.is_number()) {
                    cols.push_back(k);
                    vals.push_back(v);
                }
            csv.header(cols);
            csv.row(vals);
        }
        return o;
    }
    auto sw = cfg["sweep"];
    std::string param = sw["param"];
    double from = sw["from"], to = sw["to"];
    int steps = sw["steps"];
    bool on_eta = param.rfind("eta", 0) == 0;
    if (on_eta != (inv.command == "eval q")) throw ConfigError("sweep." + param + " does not apply to " + inv.command);
    // materialise the base point set once
    json base = cfg;
    base.erase("sweep");
    fn(base);
    std::vector<json> rows;
    std::vector<std::string> cols{param};
    for (int i = 0; i < steps; ++i) {
        double v = from + (to - from) * i / (steps - 1);
        json c = base;
        int comp = param.back() == 'e' ? 0 : 1;  // *_re / *_im
        if (on_eta) c["eta"][comp] = v;
        else c["points"][0][comp] = v;
        json out;
        try {
            out = fn(c);
        } catch (const loopmass::Error& e) {
            out = {{"error", e.what()}};
        }
        if (i == 0)
            for (auto& [k, x] : out.items())
                if (x.is_number()) cols.push_back(k);
        json row = json::array({v});
        for (std::size_t k = 1; k < cols.size(); ++k) row.push_back(out.contains(cols[k]) ? out[cols[k]] : json("nan"));
        rows.push_back(row);
    }
    for (auto& [k, v] : base.items())
        if (k != "sweep") cfg[k] = v;
    if (inv.csv) {
        Csv csv(*inv.csv);
        csv.header(cols);
        for (auto& r : rows) csv.row(std::vector<json>(r.begin(), r.end()));
    }
    o.outputs = {{"sweep_rows", rows.size()}, {"columns", cols}, {"rows", rows}};
    return o;
}

// ---- verify ----

StencilSpec stencil(json& cfg, Sector s) {
    auto& st = section(cfg, "stencil");
    return {get_or(st, "h", 0.0), get_or(st, "order", 2), s};
}

double tolerance(json& cfg) {
    auto& st = section(cfg, "stencil");
    return get_or(st, "tolerance", 1e-4);
}

double floor_abs(json& cfg) {
    auto& st = section(cfg, "stencil");
    return get_or(st, "absolute_floor", 1e-12);
}

// a vanishing correlator (n = 0) has no meaningful scale, so tiny absolute residuals pass
bool residual_ok(const ResidualReport& r, double tol, double floor) {
    return r.normalized < tol || r.residual < floor;
}

Outcome verify_bpz(Invocation& inv) {
    auto& cfg = inv.cfg;
    auto p = model(cfg);
    auto c = bulk(cfg);
    double tol = tolerance(cfg), fl = floor_abs(cfg);
    Outcome o;
    bool pass = true;
    json reps = json::array();
    for (Sector s : {Sector::Holomorphic, Sector::Antiholomorphic})
        for (int j = 1; j <= 4; ++j) {
            auto r = bpz_residual(j, c, p, stencil(cfg, s));
            bool ok = residual_ok(r, tol, fl);
            pass = pass && ok;
            json e = report_json(r);
            e["j"] = j;
            e["sector"] = s == Sector::Holomorphic ? "holomorphic" : "antiholomorphic";
            e["pass"] = ok;
            reps.push_back(e);
        }
    o.outputs = {{"kappa", p.kappa}, {"tolerance", tol}, {"reports", reps}};
    o.pass = pass;
    return o;
}

Outcome verify_boundary_bpz(Invocation& inv) {
    auto& cfg = inv.cfg;
    auto p = model(cfg);
    auto z = points(cfg, 2, {{0, 1}, {1, 2}});
    double tol = tolerance(cfg), fl = floor_abs(cfg);
    Outcome o;
    bool pass = true;
    json reps = json::array();
    for (int j = 1; j <= 2; ++j) {
        auto r = boundary_bpz_residual(z[0], z[1], p, stencil(cfg, Sector::Holomorphic), j);
        bool ok = residual_ok(r, tol, fl);
        pass = pass && ok;
        json e = report_json(r);
        e["j"] = j;
        e["pass"] = ok;
        reps.push_back(e);
    }
    o.outputs = {{"kappa", p.kappa}, {"tolerance", tol}, {"reports", reps}};
    o.pass = pass;
    return o;
}

Outcome verify_w(Invocation& inv, bool real_form) {
    auto& cfg = inv.cfg;
    auto c = bulk(cfg);
    double tol = tolerance(cfg);
    Outcome o;
    json reps = json::array();
    bool pass = true;
    if (real_form) {
        auto r = w_real_pde_residual(c, stencil(cfg, Sector::Holomorphic));
        pass = r.normalized < tol;
        json e = report_json(r);
        e["pass"] = pass;
        reps.push_back(e);
    } else {
        for (Sector s : {Sector::Holomorphic, Sector::Antiholomorphic}) {
            auto r = w_pde_residual(c, stencil(cfg, s));
            bool ok = r.normalized < tol;
            pass = pass && ok;
            json e = report_json(r);
            e["sector"] = s == Sector::Holomorphic ? "holomorphic" : "antiholomorphic";
            e["pass"] = ok;
            reps.push_back(e);
        }
    }
    o.outputs = {{"tolerance", tol}, {"reports", reps}};
    o.pass = pass;
    return o;
}

Outcome verify_ope(Invocation& inv) {
    auto& cfg = inv.cfg;
    auto& m = section(cfg, "model");
    if (!m.contains("kappa") && !m.contains("n")) m["kappa"] = 3.0;
    auto p = model(cfg);
    double tol = get_or(section(cfg, "ope"), "tolerance", 1e-6);
    double c = inferred_central_charge(p.kappa), exact = central_charge(p.kappa);
    Outcome o;
    o.outputs = {{"kappa", p.kappa},
                 {"eta2_coefficient", ope_eta2_coefficient(p.kappa)},
                 {"c_inferred", c},
                 {"c_closed_form", exact},
                 {"abs_error", std::abs(c - exact)}};
    o.pass = std::abs(c - exact) < tol;
    return o;
}

// ---- lattice ----

struct LatticeSetup {
    HoneycombDomain dom;
    int lmax;
    double n;
    EnumerationOptions opt;
};

LatticeSetup lattice_setup(Invocation& inv, const std::string& def_dom, int def_lmax) {
    auto& L = section(inv.cfg, "lattice");
    std::string d = get_or(L, "dom", def_dom);
    auto x = d.find('x');
    LatticeSetup s;
    s.dom.rows = std::stoi(d.substr(0, x));
    s.dom.cols = std::stoi(d.substr(x + 1));
    s.dom.mode = get_or(L, "mode", std::string("free")) == "half_plane" ? BoundaryMode::HalfPlane : BoundaryMode::Free;
    s.lmax = get_or(L, "lmax", def_lmax);
    s.n = get_or(L, "n", 0.0);
    s.opt.node_limit = get_or<std::uint64_t>(L, "node_limit", 1'000'000'000);
    s.opt.threads = inv.threads;
    return s;
}

MarkSet marks(json& cfg, const HoneycombDomain& dom) {
    auto& L = section(cfg, "lattice");
    if (!L.contains("marks")) {
        json m = json::array();
        if (dom.mode == BoundaryMode::HalfPlane) {
            m.push_back({dom.rows / 3, dom.cols / 3});
            m.push_back({dom.rows / 3, 2 * dom.cols / 3});
        } else {
            // near-square around the centre, rows of equal parity
            int r0 = dom.rows / 2 - 1, r1 = r0 + 2, c0 = dom.cols / 2 - 2, c1 = c0 + 2;
            m = json::array({{r0, c0}, {r0, c1}, {r1, c1}, {r1, c0}});
        }
        L["marks"] = m;
    }
    MarkSet out;
    for (auto& f : L["marks"]) out.push_back({f[0].get<int>(), f[1].get<int>()});
    return out;
}

void dump_polygons(const Lattice& lat, const LatticeSetup& s, const std::string& path, const MarkSet* mk) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    enumerate_polygons(
        lat, s.lmax,
        [&](const Polygon& p) {
            out << "l=" << p.length() << " class=" << (mk ? classify(lat, p, *mk).label() : std::string("-")) << " edges=";
            for (std::size_t k = 0; k < p.vertices.size(); ++k)
                out << (k ? "," : "") << p.vertices[k] << "-" << p.vertices[(k + 1) % p.vertices.size()];
            out << "\n";
        },
        s.opt);
}

json table_json(const ClassMassTable& t) {
    json cls = json::array();
    for (auto& [p, e] : t.classes) cls.push_back({{"pattern", p.label()}, {"count", e.count}, {"mass", e.mass}});
    return {{"x_c", t.x_c}, {"l_max", t.l_max}, {"total", t.total}, {"classes", cls}};
}

Outcome lattice_enumerate(Invocation& inv) {
    auto s = lattice_setup(inv, "6x6", 6);
    Lattice lat(s.dom);
    auto st = count_polygons(lat, s.lmax, s.opt);
    auto& L = inv.cfg["lattice"];
    if (L.contains("dump")) dump_polygons(lat, s, L["dump"], nullptr);
    json hist = json::object();
    for (int l = 0; l <= s.lmax; ++l)
        if (st.by_length[l]) hist[std::to_string(l)] = st.by_length[l];
    if (inv.csv) {
        Csv csv(*inv.csv);
        csv.header({"length", "count"});
        for (int l = 0; l <= s.lmax; ++l)
            if (st.by_length[l]) csv.row({l, st.by_length[l]});
    }
    Outcome o;
    o.outputs = {{"faces", lat.face_count()}, {"polygons", st.polygons}, {"nodes", st.nodes}, {"by_length", hist}};
    return o;
}

Outcome lattice_classes(Invocation& inv) {
    auto s = lattice_setup(inv, "12x12", 16);
    Lattice lat(s.dom);
    auto mk = marks(inv.cfg, s.dom);
    auto t = class_masses(lat, mk, s.lmax, s.n, s.opt);
    auto& L = inv.cfg["lattice"];
    if (L.contains("dump")) dump_polygons(lat, s, L["dump"], &mk);
    if (inv.csv) {
        Csv csv(*inv.csv);
        csv.header({"pattern", "count", "mass"});
        for (auto& [p, e] : t.classes) csv.row({p.label(), e.count, e.mass});
    }
    Outcome o;
    o.outputs = table_json(t);
    return o;
}

Outcome lattice_fit(Invocation& inv) {
    auto s = lattice_setup(inv, "20x20", 26);
    Lattice lat(s.dom);
    auto& L = inv.cfg["lattice"];
    auto dist = get_or(L, "distances", std::vector<int>{2, 3, 4, 5, 6});
    auto f = fit_two_point_slope(lat, s.lmax, dist, s.n, s.opt);
    if (inv.csv) {
        Csv csv(*inv.csv);
        csv.header({"distance", "mass"});
        for (std::size_t i = 0; i < f.distances.size(); ++i) csv.row({f.distances[i], f.masses[i]});
    }
    Outcome o;
    o.outputs = {{"slope", f.slope},         {"stderr", f.stderr},   {"intercept", f.intercept},
                 {"target", 1 / (3 * kPi)}, {"distances", f.distances}, {"masses", f.masses},
                 {"within_bracket", f.slope >= 0.07 && f.slope <= 0.14}};
    return o;
}

// three two-sided classes sorted by mass, smallest first
std::vector<std::string> ordering(const std::map<std::string, double>& m) {
    std::vector<std::string> k;
    for (auto& [name, v] : m) k.push_back(name);
    std::stable_sort(k.begin(), k.end(), [&](auto& a, auto& b) { return m.at(a) < m.at(b); });
    return k;
}

Outcome lattice_compare_w(Invocation& inv) {
    auto s = lattice_setup(inv, "12x12", 26);
    if (s.dom.mode != BoundaryMode::Free) throw ConfigError("compare-w runs in the free domain");
    Lattice lat(s.dom);
    auto mk = marks(inv.cfg, s.dom);
    if (mk.size() != 4) throw ConfigError("compare-w needs four marks");
    auto t = class_masses(lat, mk, s.lmax, s.n, s.opt);
    BulkConfig c;
    for (int i = 0; i < 4; ++i) c.z[i] = lat.face_center(mk[i]);
    std::map<std::string, double> lm, cm;
    json rows = json::array();
    for (auto* name : {"12|34", "13|24", "14|23"}) {
        auto p = SeparationPattern::parse_bulk(name);
        lm[name] = t.classes.at(p).mass;
        cm[name] = w_bulk(p, c).value;
        rows.push_back({{"pattern", name}, {"lattice", lm[name]}, {"continuum", cm[name]}});
    }
    auto lo = ordering(lm), co = ordering(cm);
    if (inv.csv) {
        Csv csv(*inv.csv);
        csv.header({"pattern", "lattice_mass", "continuum_mass"});
        for (auto* name : {"12|34", "13|24", "14|23"}) csv.row({std::string(name), lm[name], cm[name]});
    }
    Outcome o;
    o.outputs = {{"eta", cjson(cross_ratio(c).u)},
                 {"masses", rows},
                 {"lattice_order", lo},
                 {"continuum_order", co},
                 {"table", table_json(t)}};
    o.pass = lo == co;
    return o;
}

// ---- sle ----

DriftOptions drift_options(Invocation& inv) {
    auto& S = section(inv.cfg, "sle");
    DriftOptions d;
    d.kappa = get_or(S, "kappa", 6.0);
    d.dt = get_or(S, "dt", 1e-4);
    d.T = get_or(S, "T", 0.01);
    d.runs = get_or(S, "runs", 20000);
    d.seed = get_or<std::uint64_t>(S, "seed", 1);
    d.threads = inv.threads;
    return d;
}

void trace_dump(const std::string& path, const BulkConfig& c, const DriftOptions& d, int runs) {
    Csv csv(path);
    csv.header({"run", "t", "U_t", "Re g(z2)", "Im g(z2)", "Re g(z3)", "Im g(z3)", "Re g(z4)", "Im g(z4)"});
    for (int r = 0; r < runs; ++r) {
        auto ch = sample_chain(d.kappa, d.dt, d.T, d.seed, std::uint64_t(r), c.z[0]);
        LoewnerFlow f(c.z[0], {c.z[1], c.z[2], c.z[3]}, d.eps_swallow);
        for (int k = 0; k <= ch.steps; ++k) {
            if (k > 0) f.step(ch.driver[k], ch.dt);
            std::vector<json> row{r, k * ch.dt, ch.driver[k]};
            for (std::size_t i = 0; i < 3; ++i) {
                row.push_back(f.point(i).real());
                row.push_back(f.point(i).imag());
            }
            csv.row(row);
        }
    }
}

Outcome sle_drift(Invocation& inv) {
    auto c = bulk(inv.cfg);
    auto d = drift_options(inv);
    double band = get_or(inv.cfg["sle"], "band", 5.0);
    auto r = drift_estimate(c, d);
    if (inv.csv) trace_dump(*inv.csv, c, d, get_or(inv.cfg["sle"], "trace_runs", 1));
    Outcome o;
    json cens = json::array();
    for (int x : r.censored_runs) cens.push_back(x);
    o.outputs = {{"empirical_drift", r.empirical_drift},
                 {"stderr", r.stderr},
                 {"predicted", r.predicted},
                 {"z_score", r.z_score()},
                 {"n_runs", r.n_runs},
                 {"raw_drift", r.raw_drift},
                 {"raw_stderr", r.raw_stderr},
                 {"grad_x", r.grad_x},
                 {"laplacian", r.laplacian},
                 {"max_hydrodynamic_defect", r.max_hydrodynamic_defect},
                 {"censored_runs", cens}};
    o.pass = std::abs(r.z_score()) < band;
    o.seed = d.seed;
    return o;
}

Outcome sle_normalization(Invocation& inv) {
    auto d = drift_options(inv);
    int runs = std::min(d.runs, 1000);
    Complex z = std::polar(1e3, 0.7);
    double worst = 0;
    for (int r = 0; r < runs; ++r)
        worst = std::max(worst, hydrodynamic_defect(sample_chain(d.kappa, d.dt, d.T, d.seed, std::uint64_t(r)), z));
    Outcome o;
    o.outputs = {{"chains", runs}, {"abs_z", 1e3}, {"max_defect", worst}, {"tolerance", 1e-4}};
    o.pass = worst < 1e-4;
    o.seed = d.seed;
    return o;
}

const std::map<std::string, std::function<Outcome(Invocation&)>>& table() {
    static const std::map<std::string, std::function<Outcome(Invocation&)>> t = {
        {"eval two-point", [](Invocation& i) { return run_eval(i, eval_two_point); }},
        {"eval four-point", [](Invocation& i) { return run_eval(i, eval_four_point); }},
        {"eval ising", [](Invocation& i) { return run_eval(i, eval_ising); }},
        {"eval boundary", [](Invocation& i) { return run_eval(i, eval_boundary); }},
        {"eval w", [](Invocation& i) { return run_eval(i, eval_w); }},
        {"eval w-boundary", [](Invocation& i) { return run_eval(i, eval_w_boundary); }},
        {"eval q", [](Invocation& i) { return run_eval(i, eval_q); }},
        {"verify bpz", verify_bpz},
        {"verify boundary-bpz", verify_boundary_bpz},
        {"verify w-pde", [](Invocation& i) { return verify_w(i, false); }},
        {"verify w-real-pde", [](Invocation& i) { return verify_w(i, true); }},
        {"verify ope-c", verify_ope},
        {"lattice enumerate", lattice_enumerate},
        {"lattice classes", lattice_classes},
        {"lattice fit-2pt", lattice_fit},
        {"lattice compare-w", lattice_compare_w},
        {"sle drift", sle_drift},
        {"sle normalization", sle_normalization},
    };
    return t;
}

std::string utc_now() {
    auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

bool known_command(const std::string& name) { return table().count(name) != 0; }

Outcome run_command(Invocation& inv) {
    auto it = table().find(inv.command);
    if (it == table().end()) throw ConfigError("unknown command '" + inv.command + "'");
    if (!inv.cfg.contains("schema_version")) inv.cfg["schema_version"] = 1;
    require_valid(inv.cfg);
    Outcome o;
    try {
        o = it->second(inv);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("configuration value has the wrong shape: ") + e.what());
    }
    require_valid(inv.cfg);
    return o;
}

json make_record(const Invocation& inv, const Outcome& out) {
    json prov = {{"library_version", loopmass::version()}, {"schema_version", 1}};
    prov["seed"] = out.seed ? json(*out.seed) : json(nullptr);
    prov["timestamp"] = utc_now();
    json r = {{"command", inv.command}, {"inputs", inv.cfg}, {"outputs", out.outputs}};
    r["status"] = out.pass ? (*out.pass ? "pass" : "fail") : "ok";
    r["provenance"] = prov;
    return r;
}

}  // namespace cli
