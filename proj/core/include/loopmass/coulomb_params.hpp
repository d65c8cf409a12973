#pragma once

namespace loopmass {

struct ModelParams {
    double n;
    double chi;
    double g;
    double kappa;
};

struct KacWeights {
    double h2;
    double h3;
    double x_twist;
};

ModelParams params_from_n(double n);
// Builds the tuple from kappa on the dilute branch (kappa in [8/3, 4]).
ModelParams params_from_kappa(double kappa);
KacWeights kac_weights(double kappa);

double twist_dimension(const ModelParams& p);
double x_general(double n, double n_prime);
double central_charge(double kappa);

}  // namespace loopmass
