#pragma once

#include <functional>

#include "loopmass/correlators.hpp"

namespace loopmass {

enum class Sector { Holomorphic, Antiholomorphic };

struct StencilSpec {
    double h = 0.0;  // 0 -> 1e-3 of the minimal separation
    int order = 2;   // 2 or 4
    Sector sector = Sector::Holomorphic;
};

struct ResidualReport {
    double residual = 0;
    double scale = 0;
    double normalized = 0;
    double normalized_half = 0;  // at h/2
    double measured_order = 0;
    double h = 0;
};

// Correlator as an analytic function of four sector coordinates with the
// other sector frozen at the reference configuration. Extended precision keeps
// rounding well below the stencil truncation error.
using LQuad = std::array<LComplex, 4>;
using SectorFunction = std::function<LComplex(const LQuad&)>;

SectorFunction local_four_point(const BulkConfig& cfg, double kappa, Sector sector);
SectorFunction local_w14(const BulkConfig& cfg, Sector sector);
SectorFunction local_boundary_two_point(Complex z1, Complex z2, double kappa);

ResidualReport bpz_residual(int j, const BulkConfig& cfg, const ModelParams& p, const StencilSpec& spec = {});
ResidualReport boundary_bpz_residual(Complex z1, Complex z2, const ModelParams& p, const StencilSpec& spec = {},
                                     int j = 1);

Complex w_pde_rhs(const std::array<Complex, 4>& z);
ResidualReport w_pde_residual(const BulkConfig& cfg, const StencilSpec& spec = {});

double w_subtraction(const BulkConfig& cfg);
double w_subtracted(const BulkConfig& cfg);
ResidualReport w_real_pde_residual(const BulkConfig& cfg, const StencilSpec& spec = {});

// 5-point Laplacian of f(z1) at the first point.
double laplacian_z1(const std::function<double(const BulkConfig&)>& f, const BulkConfig& cfg, double h);
double d_x1(const std::function<double(const BulkConfig&)>& f, const BulkConfig& cfg, double h);

}  // namespace loopmass
