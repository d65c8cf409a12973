#include "loopmass/coulomb_params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "loopmass/error.hpp"

namespace loopmass {

namespace {

constexpr double kPi = std::numbers::pi;

double dilute_chi(double n) { return (-kPi / 2 + std::asin(n / 2)) / 6; }

}  // namespace

ModelParams params_from_n(double n) {
    if (!(n >= 0.0 && n <= 2.0)) throw Error(ErrorKind::Range, "params_from_n: n outside [0, 2]");
    double chi = dilute_chi(n);
    double g = 1 - 6 * chi / kPi;
    return {n, chi, g, 4 / g};
}

ModelParams params_from_kappa(double kappa) {
    if (!(kappa >= 8.0 / 3.0 - 1e-12 && kappa <= 4.0 + 1e-12))
        throw Error(ErrorKind::Range, "params_from_kappa: kappa outside [8/3, 4]");
    double g = 4 / kappa;
    double chi = kPi * (1 - g) / 6;
    return {2 * std::cos(6 * chi), chi, g, kappa};
}

KacWeights kac_weights(double kappa) {
    double h2 = 3 * kappa / 16 - 0.5;
    return {h2, kappa / 2 - 1, 2 * h2};
}

double twist_dimension(const ModelParams& p) { return 3 * p.kappa / 8 - 1; }

// chi' lies on the same branch formula as chi
double x_general(double n, double n_prime) {
    if (!(std::abs(n) <= 2.0 && std::abs(n_prime) <= 2.0))
        throw Error(ErrorKind::Range, "x_general: fugacity outside [-2, 2]");
    double chi = dilute_chi(n);
    double chip = dilute_chi(n_prime);
    double g = 1 - 6 * chi / kPi;
    return 36 * (chip * chip - chi * chi) / (2 * kPi * kPi * g);
}

double central_charge(double kappa) { return (3 * kappa - 8) * (6 - kappa) / (2 * kappa); }

}  // namespace loopmass
