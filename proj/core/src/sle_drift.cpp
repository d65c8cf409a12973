#include "loopmass/sle_drift.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "loopmass/error.hpp"
#include "loopmass/pde_check.hpp"

namespace loopmass {

LoewnerChain sample_chain(double kappa, double dt, double T, std::uint64_t seed, std::uint64_t run_index,
                          Complex base_point) {
    if (!(kappa > 0)) throw Error(ErrorKind::BadStep, "kappa must be positive");
    if (!(dt > 0) || !(T >= dt)) throw Error(ErrorKind::BadStep, "need 0 < dt <= T");
    double ratio = T / dt;
    int steps = int(std::llround(ratio));
    if (std::abs(ratio - steps) > 1e-9 * ratio) throw Error(ErrorKind::BadStep, "T must be a multiple of dt");
    std::seed_seq sq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(run_index),
                     std::uint32_t(run_index >> 32)};
    std::mt19937_64 rng(sq);
    std::normal_distribution<double> normal(0.0, std::sqrt(kappa * dt));
    LoewnerChain c{kappa, dt, steps, base_point, {}};
    c.driver.resize(std::size_t(steps) + 1);
    c.driver[0] = 0;
    for (int k = 1; k <= steps; ++k) c.driver[k] = c.driver[k - 1] + normal(rng);
    return c;
}

LoewnerFlow::LoewnerFlow(Complex base_point, const std::vector<Complex>& pts, double eps_swallow)
    : base_(base_point), eps_(eps_swallow) {
    for (auto z : pts) {
        Complex w = z - base_;
        w_.push_back(w);
        // on the line the sign of Re w records which side of the driver the point sits
        int s = w.imag() > 0 ? 1 : w.imag() < 0 ? -1 : 0;
        side_.push_back(s != 0 ? 2 * s : (w.real() > 0 ? 1 : -1));
        swallowed_.push_back(std::abs(w) < eps_ ? 1 : 0);
    }
}

void LoewnerFlow::step(double u_next, double dt) {
    u_ = u_next;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (swallowed_[i]) continue;
        Complex zeta = w_[i] - u_;
        Complex s = std::sqrt(zeta * zeta + 4 * dt);
        int side = side_[i];
        if (side == 2 && s.imag() < 0) s = -s;
        else if (side == -2 && s.imag() > 0) s = -s;
        else if (std::abs(side) == 1 && s.real() * side < 0) s = -s;
        // a bulk point landing on the line, or a line point overtaken by the driver, is inside the hull
        bool hit = std::abs(side) == 2 ? s.imag() * side <= 0 : zeta.real() * side <= 0;
        w_[i] = u_ + s;
        if (hit || std::abs(s) < eps_) swallowed_[i] = 1;
    }
}

bool LoewnerFlow::any_swallowed() const {
    return std::any_of(swallowed_.begin(), swallowed_.end(), [](char c) { return c != 0; });
}

std::vector<EvolvedPoint> evolve_points(const LoewnerChain& chain, const std::vector<Complex>& pts, int steps,
                                        double eps_swallow) {
    if (steps < 0) steps = chain.steps;
    if (steps > chain.steps) throw Error(ErrorKind::BadStep, "more steps than the chain holds");
    LoewnerFlow f(chain.base_point, pts, eps_swallow);
    for (int k = 1; k <= steps; ++k) f.step(chain.driver[k], chain.dt);
    std::vector<EvolvedPoint> out;
    for (std::size_t i = 0; i < pts.size(); ++i) out.push_back({f.point(i), f.swallowed(i)});
    return out;
}

double hydrodynamic_defect(const LoewnerChain& chain, Complex z) {
    LoewnerChain c = chain;
    c.base_point = 0;
    Complex g = evolve_points(c, {z})[0].z;
    return std::abs(z * (g - z) - 2 * chain.duration());
}

namespace {

struct RunResult {
    bool censored = false;
    double raw = 0;  // W~_T - W~_0
    double cv = 0;   // extrapolated control-variate drift
    double defect = 0;
};

RunResult one_run(const BulkConfig& cfg, double w0, double gx, const DriftOptions& opt, std::uint64_t r) {
    auto chain = sample_chain(opt.kappa, opt.dt, opt.T, opt.seed, r, cfg.z[0]);
    LoewnerFlow flow(cfg.z[0], {cfg.z[1], cfg.z[2], cfg.z[3]}, opt.eps_swallow);
    int half = chain.steps / 2;
    double y_half = 0, y_full = 0;
    RunResult out;
    auto wt = [&](int k) {
        BulkConfig c = cfg;
        c.z[0] = cfg.z[0] + chain.driver[k];
        for (int i = 0; i < 3; ++i) c.z[i + 1] = flow.point(std::size_t(i));
        return w_subtracted(c);
    };
    for (int k = 1; k <= chain.steps; ++k) {
        flow.step(chain.driver[k], chain.dt);
        if (flow.any_swallowed()) {
            out.censored = true;
            return out;
        }
        if (k == half) y_half = wt(k) - w0 - gx * chain.driver[k];
    }
    double wT = wt(chain.steps);
    out.raw = wT - w0;
    y_full = out.raw - gx * chain.driver[chain.steps];
    double tf = chain.duration(), th = half * chain.dt;
    // the O(T) bias of Y(T)/T cancels in the two-time combination
    out.cv = (tf * y_half / th - th * y_full / tf) / (tf - th);
    out.defect = hydrodynamic_defect(chain, Complex(1e3, 0) * std::polar(1.0, 0.7));
    return out;
}

}  // namespace

DriftReport drift_estimate(const BulkConfig& cfg, const DriftOptions& opt) {
    if (opt.runs < 100) throw Error(ErrorKind::InsufficientData, "drift estimate needs >= 100 runs");
    if (!(opt.T > 0) || !(opt.dt > 0) || opt.T / opt.dt < 2) throw Error(ErrorKind::BadStep, "need T >= 2 dt > 0");
    double h = opt.h > 0 ? opt.h : 1e-3 * min_separation(cfg);
    double w0 = w_subtracted(cfg);
    DriftReport rep;
    rep.grad_x = d_x1(w_subtracted, cfg, h);
    rep.laplacian = laplacian_z1(w_subtracted, cfg, h);
    rep.predicted = 1.5 * rep.laplacian;

    std::vector<RunResult> res(std::size_t(opt.runs));
    int T = opt.threads > 0 ? opt.threads : int(std::max(1u, std::thread::hardware_concurrency()));
    T = std::min(T, opt.runs);
    std::exception_ptr err;
    std::mutex mu;
    auto work = [&](int t) {
        try {
            for (int r = t; r < opt.runs; r += T) res[std::size_t(r)] = one_run(cfg, w0, rep.grad_x, opt, std::uint64_t(r));
        } catch (...) {
            std::lock_guard lk(mu);
            if (!err) err = std::current_exception();
        }
    };
    if (T == 1) work(0);
    else {
        std::vector<std::thread> pool;
        for (int t = 0; t < T; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);

    // reduction in run order
    double s_raw = 0, s2_raw = 0, s_cv = 0, s2_cv = 0;
    int n = 0;
    for (int r = 0; r < opt.runs; ++r) {
        const auto& x = res[std::size_t(r)];
        if (x.censored) {
            rep.censored_runs.push_back(r);
            continue;
        }
        ++n;
        s_raw += x.raw;
        s2_raw += x.raw * x.raw;
        s_cv += x.cv;
        s2_cv += x.cv * x.cv;
        rep.max_hydrodynamic_defect = std::max(rep.max_hydrodynamic_defect, x.defect);
    }
    if (double(rep.censored_runs.size()) > opt.max_censored * opt.runs)
        throw Error(ErrorKind::TooManySwallowed, std::to_string(rep.censored_runs.size()) + " of " +
                                                     std::to_string(opt.runs) + " runs swallowed a marked point");
    rep.n_runs = n;
    auto sem = [n](double s, double s2) {
        double m = s / n;
        return std::sqrt(std::max(0.0, (s2 / n - m * m)) / (n - 1));
    };
    rep.raw_drift = s_raw / n / opt.T;
    rep.raw_stderr = sem(s_raw, s2_raw) / opt.T;
    rep.empirical_drift = s_cv / n;
    rep.stderr = sem(s_cv, s2_cv);
    return rep;
}

}  // namespace loopmass
