#include "loopmass/correlators.hpp"

#include <algorithm>
#include <cmath>

#include "loopmass/error.hpp"

namespace loopmass {

namespace {

constexpr double kRealTol = 1e-10;

double g(double x) {
    try {
        return loopmass::gamma(x);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Pole) throw Error(ErrorKind::GammaPole, e.what());
        throw;
    }
}

double real_checked(Complex v, const char* who) {
    if (std::abs(v.imag()) > kRealTol * std::max(1.0, std::abs(v.real())))
        throw Error(ErrorKind::Range, std::string(who) + ": expected a real value");
    return v.real();
}

Complex reflect(Complex v, auto&& f) { return std::conj(f(std::conj(v))); }

Complex sector_power(Complex u, double h) { return principal_pow(u, h) * principal_pow(1.0 - u, h); }

}  // namespace

double min_separation(const BulkConfig& cfg) {
    double m = INFINITY;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) m = std::min(m, std::abs(cfg.z[i] - cfg.z[j]));
    return m;
}

void require_distinct(const BulkConfig& cfg) {
    double scale = 0;
    for (int i = 0; i < 4; ++i) {
        if (!std::isfinite(cfg.z[i].real()) || !std::isfinite(cfg.z[i].imag()))
            throw Error(ErrorKind::Range, "non-finite point");
        for (int j = i + 1; j < 4; ++j) scale = std::max(scale, std::abs(cfg.z[i] - cfg.z[j]));
    }
    if (!(min_separation(cfg) > 1e-12 * scale)) throw Error(ErrorKind::CoincidentPoints, "marked points coincide");
}

CrossRatioPair cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4) {
    return cross_ratio(BulkConfig{{z1, z2, z3, z4}});
}

CrossRatioPair cross_ratio(const BulkConfig& cfg) {
    require_distinct(cfg);
    const auto& z = cfg.z;
    Complex u = (z[0] - z[1]) * (z[2] - z[3]) / ((z[0] - z[2]) * (z[1] - z[3]));
    return {canonical(u), canonical(std::conj(u))};
}

double coeff_B(double kappa) {
    double a = g(1 - kappa / 4), b = g(kappa / 4), c = g(2 - kappa / 2), d = g(kappa / 2 - 1);
    double e = g(3 * kappa / 4 - 1), f = g(kappa / 2);
    double bracket = a * a * b * b - c * c * d * d;
    return bracket * e * e / (f * f * d * d * a * a);
}

// reciprocal gammas so the pole of Gamma(2 - 3k/4) at k = 8/3 gives 0
double coeff_B_boundary(double kappa) {
    double num = g(2 - kappa / 2) * g(kappa / 4) * g(1 - kappa / 4);
    double gm = 1 - kappa / 2;
    return -num * gamma(gm) * rgamma(kappa / 2) * rgamma(gm) * rgamma(2 - 3 * kappa / 4) * rgamma(1 - kappa / 4);
}

Complex block_F1(double kappa, Complex u) { return hyp2f1(1 - kappa / 4, 2 - 3 * kappa / 4, 2 - kappa / 2, u); }

Complex block_F2(double kappa, Complex u) { return hyp2f1(kappa / 4, 3 * kappa / 4 - 1, kappa / 2, u); }

Complex xi_blocks(Complex u, Complex v, double kappa) {
    u = canonical(u);
    v = canonical(v);
    double h3 = kappa / 2 - 1;
    double B = coeff_B(kappa);
    Complex f1u = block_F1(kappa, u);
    Complex f1v = reflect(v, [&](Complex w) { return block_F1(kappa, w); });
    if (B == 0.0) return f1u * f1v;
    Complex f2u = block_F2(kappa, u);
    Complex f2v = reflect(v, [&](Complex w) { return block_F2(kappa, w); });
    Complex su = sector_power(u, h3);
    Complex sv = reflect(v, [&](Complex w) { return sector_power(w, h3); });
    return f1u * f1v + B * su * sv * f2u * f2v;
}

double xi_physical(Complex eta, double kappa) {
    eta = canonical(eta);
    return real_checked(xi_blocks(eta, canonical(std::conj(eta)), kappa), "xi");
}

Complex four_point_prefactor(const BulkConfig& cfg) {
    const auto& z = cfg.z;
    return (z[0] - z[2]) * (z[1] - z[3]) * cfg.a * cfg.a /
           ((z[0] - z[1]) * (z[2] - z[3]) * (z[1] - z[2]) * (z[0] - z[3]));
}

double four_point(const BulkConfig& cfg, const ModelParams& p, const Normalization& norm) {
    auto cr = cross_ratio(cfg);
    double h2 = kac_weights(p.kappa).h2;
    double amp = norm.A * (1 + norm.varrho * p.n);
    return std::pow(std::abs(four_point_prefactor(cfg)), 4 * h2) * amp * xi_physical(cr.u, p.kappa);
}

double two_point(Complex z1, Complex z2, const ModelParams& p, double a) {
    if (!(std::abs(z1 - z2) > 0)) throw Error(ErrorKind::CoincidentPoints, "two_point: z1 == z2");
    return std::pow(std::abs(z1 - z2) / a, 2 - 3 / p.g);
}

double ising_four_point(const BulkConfig& cfg, const Normalization& norm) {
    auto cr = cross_ratio(cfg);
    detail::check_cut(cr.u, "ising_four_point");
    Complex s = std::sqrt(cr.u);
    double amp = norm.A * (1 + norm.varrho);
    return amp / 2 * std::pow(std::abs(four_point_prefactor(cfg)), 0.25) *
           (std::abs(1.0 + s) + std::abs(1.0 - s));
}

double boundary_cross_ratio(Complex z1, Complex z2) {
    if (!(z1.imag() > 0 && z2.imag() > 0)) throw Error(ErrorKind::BoundaryContact, "points must lie in Im z > 0");
    if (!(std::abs(z1 - z2) > 0)) throw Error(ErrorKind::CoincidentPoints, "boundary points coincide");
    Complex eta = (z1 - z2) * (std::conj(z1) - std::conj(z2)) / ((z1 - std::conj(z1)) * (z2 - std::conj(z2)));
    double e = real_checked(eta, "boundary cross ratio");
    if (!(e < 0)) throw Error(ErrorKind::Range, "boundary cross ratio not negative");
    return e;
}

double boundary_two_point(Complex z1, Complex z2, const ModelParams& p, const Normalization& norm, double a) {
    double eta = boundary_cross_ratio(z1, z2);
    double k = p.kappa;
    double y1 = z1.imag(), y2 = z2.imag();
    double mu = 4 * y1 * y2 * a * a / (std::norm(z1 - z2) * std::norm(z2 - std::conj(z1)));
    double Bb = coeff_B_boundary(k);
    double blocks = block_F1(k, eta).real();
    if (Bb != 0.0) blocks += Bb * std::pow(-eta * (1 - eta), k / 2 - 1) * block_F2(k, eta).real();
    double amp = norm.A * (1 + norm.sigma * p.n);
    return std::pow(mu, 3 * k / 8 - 1) * amp * blocks;
}

double ope_eta2_coefficient(double kappa) {
    if (std::abs(kappa - 4.0) < 1e-12) throw Error(ErrorKind::DegenerateKappa, "kappa = 4");
    double h = 3 * kappa / 16 - 0.5;
    double a = 1 - kappa / 4, b = 2 - 3 * kappa / 4, c = 2 - kappa / 2;
    return h * (2 * h + 1) + 2 * h * a * b / c + a * (a + 1) * b * (b + 1) / (2 * c * (c + 1));
}

double inferred_central_charge(double kappa) {
    double h = 3 * kappa / 16 - 0.5;
    if (h == 0.0) return 0.0;
    return 2 * h * h / ope_eta2_coefficient(kappa);
}

}  // namespace loopmass
