#pragma once

#include <array>

#include "loopmass/coulomb_params.hpp"
#include "loopmass/specfun.hpp"

namespace loopmass {

struct BulkConfig {
    std::array<Complex, 4> z;
    double a = 1.0;
};

struct CrossRatioPair {
    Complex u;
    Complex v;
};

struct Normalization {
    double A = 1.0;
    double varrho = 0.0;
    double sigma = 0.0;
};

double min_separation(const BulkConfig& cfg);
void require_distinct(const BulkConfig& cfg);

CrossRatioPair cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4);
CrossRatioPair cross_ratio(const BulkConfig& cfg);

double coeff_B(double kappa);
double coeff_B_boundary(double kappa);

// Blocks of the four-point function; the v-sector uses conj(f(conj v)).
Complex block_F1(double kappa, Complex u);
Complex block_F2(double kappa, Complex u);
Complex xi_blocks(Complex u, Complex v, double kappa);
double xi_physical(Complex eta, double kappa);

// z13 z24 a^2 / (z12 z34 z23 z14)
Complex four_point_prefactor(const BulkConfig& cfg);

double four_point(const BulkConfig& cfg, const ModelParams& p, const Normalization& norm = {});
double two_point(Complex z1, Complex z2, const ModelParams& p, double a = 1.0);
double ising_four_point(const BulkConfig& cfg, const Normalization& norm = {});

double boundary_cross_ratio(Complex z1, Complex z2);
double boundary_two_point(Complex z1, Complex z2, const ModelParams& p, const Normalization& norm = {},
                          double a = 1.0);

double ope_eta2_coefficient(double kappa);
double inferred_central_charge(double kappa);

}  // namespace loopmass
