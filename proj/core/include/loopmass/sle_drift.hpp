#pragma once

#include <cstdint>
#include <vector>

#include "loopmass/correlators.hpp"

namespace loopmass {

// Driver values U_k = sqrt(kappa) B_{k dt}, relative to Re(base_point).
struct LoewnerChain {
    double kappa = 6;
    double dt = 0;
    int steps = 0;
    Complex base_point = 0;
    std::vector<double> driver;  // steps + 1 entries, driver[0] = 0
    double duration() const { return dt * steps; }
};

LoewnerChain sample_chain(double kappa, double dt, double T, std::uint64_t seed, std::uint64_t run_index = 0,
                          Complex base_point = 0);

// Points above the line Im z = Im(base) follow the chordal flow; points below
// follow its mirror image. Each step is the exact vertical-slit map
//   g(w) = U + sqrt((w - U)^2 + 4 dt)
// for the driver held at its end-of-step value.
class LoewnerFlow {
public:
    LoewnerFlow(Complex base_point, const std::vector<Complex>& pts, double eps_swallow = 1e-6);
    void step(double u_next, double dt);
    // absolute coordinates
    Complex point(std::size_t i) const { return base_ + w_[i]; }
    Complex driving_point() const { return base_ + u_; }
    bool swallowed(std::size_t i) const { return swallowed_[i] != 0; }
    bool any_swallowed() const;
    std::size_t size() const { return w_.size(); }

private:
    Complex base_;
    double u_ = 0;
    double eps_;
    std::vector<Complex> w_;
    std::vector<int> side_;
    std::vector<char> swallowed_;
};

struct EvolvedPoint {
    Complex z;
    bool swallowed = false;
};

std::vector<EvolvedPoint> evolve_points(const LoewnerChain& chain, const std::vector<Complex>& pts, int steps = -1,
                                        double eps_swallow = 1e-6);

// |z (g_T(z) - z) - 2T| for the chain's map, base point at the origin
double hydrodynamic_defect(const LoewnerChain& chain, Complex z);

struct DriftOptions {
    double kappa = 6;
    double dt = 1e-4;
    double T = 0.01;
    int runs = 20000;
    std::uint64_t seed = 1;
    int threads = 1;  // 0 -> hardware concurrency
    double eps_swallow = 1e-6;
    double h = 0;  // stencil step, 0 -> 1e-3 of the minimal separation
    double max_censored = 0.01;
};

struct DriftReport {
    // control-variate, T/2-extrapolated estimate of the generator applied to W~
    double empirical_drift = 0;
    double stderr = 0;
    // (3/2) Laplacian in z1 of W~
    double predicted = 0;
    int n_runs = 0;
    // (mean W~_T - W~_0) / T and its standard error
    double raw_drift = 0;
    double raw_stderr = 0;
    double grad_x = 0;
    double laplacian = 0;
    double max_hydrodynamic_defect = 0;
    std::vector<int> censored_runs;
    double z_score() const { return (empirical_drift - predicted) / stderr; }
};

DriftReport drift_estimate(const BulkConfig& cfg, const DriftOptions& opt = {});

}  // namespace loopmass
