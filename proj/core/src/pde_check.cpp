#include "loopmass/pde_check.hpp"

#include <cmath>
#include <numbers>

#include "loopmass/error.hpp"
#include "loopmass/mu_mass.hpp"

namespace loopmass {

namespace {

constexpr double kPi = std::numbers::pi;
using Quad = std::array<Complex, 4>;

template <class C>
C cross(const std::array<C, 4>& w) {
    return (w[0] - w[1]) * (w[2] - w[3]) / ((w[0] - w[2]) * (w[1] - w[3]));
}

template <class C>
C prefactor(const std::array<C, 4>& w) {
    return (w[0] - w[2]) * (w[1] - w[3]) / ((w[0] - w[1]) * (w[2] - w[3]) * (w[1] - w[2]) * (w[0] - w[3]));
}

Quad conj4(const Quad& w) { return {std::conj(w[0]), std::conj(w[1]), std::conj(w[2]), std::conj(w[3])}; }

LComplex L(Complex z) { return {z.real(), z.imag()}; }
Complex D(LComplex z) { return {double(z.real()), double(z.imag())}; }
LQuad L4(const Quad& w) { return {L(w[0]), L(w[1]), L(w[2]), L(w[3])}; }

// principal branch; used only on ratios near 1
LComplex lpow(LComplex x, long double p) { return std::exp(p * std::log(x)); }

// x^p continued from the reference x0, where x0^p is already known
LComplex tracked_pow(LComplex x, Complex x0, Complex x0p, long double p) { return L(x0p) * lpow(x / L(x0), p); }

double resolve_h(const StencilSpec& spec, double minsep) {
    if (spec.order != 2 && spec.order != 4) throw Error(ErrorKind::Range, "stencil order must be 2 or 4");
    double h = spec.h > 0 ? spec.h : 1e-3 * minsep;
    if (!(h < 1e-2 * minsep)) throw Error(ErrorKind::StepTooLarge, "h must be below 1e-2 of the minimal separation");
    return h;
}

template <class T, class F, class R>
T d1(const F& f, R h, int order) {
    if (order == 2) return (f(h) - f(-h)) / (2 * h);
    return (-f(2 * h) + R(8) * f(h) - R(8) * f(-h) + f(-2 * h)) / (12 * h);
}

template <class T, class F, class R>
T d2(const F& f, T f0, R h, int order) {
    if (order == 2) return (f(h) - R(2) * f0 + f(-h)) / (h * h);
    return (-f(2 * h) + R(16) * f(h) - R(30) * f0 + R(16) * f(-h) - f(-2 * h)) / (12 * h * h);
}

struct Terms {
    std::vector<Complex> t;
    double residual() const {
        Complex s = 0.0;
        for (auto v : t) s += v;
        return std::abs(s);
    }
    double scale() const {
        double m = 0;
        for (auto v : t) m = std::max(m, std::abs(v));
        return m;
    }
};

ResidualReport two_level(const std::function<Terms(double)>& at, double h) {
    Terms a = at(h), b = at(h / 2);
    ResidualReport r;
    r.h = h;
    r.residual = a.residual();
    r.scale = std::max(a.scale(), std::numeric_limits<double>::min());
    r.normalized = r.residual / r.scale;
    r.normalized_half = b.residual() / std::max(b.scale(), std::numeric_limits<double>::min());
    r.measured_order = (r.residual > 0 && b.residual() > 0) ? std::log2(r.residual / b.residual()) : 0.0;
    return r;
}

LComplex partial(const SectorFunction& G, const LQuad& w, int i, double h, int order) {
    auto f = [&](long double s) {
        LQuad x = w;
        x[i] += s;
        return G(x);
    };
    return d1<LComplex>(f, (long double)h, order);
}

LComplex second(const SectorFunction& G, const LQuad& w, int i, LComplex g0, double h, int order) {
    auto f = [&](long double s) {
        LQuad x = w;
        x[i] += s;
        return G(x);
    };
    return d2<LComplex>(f, g0, (long double)h, order);
}

Terms bpz_terms(const SectorFunction& G, const Quad& wd, int j, double kappa, double h, int order) {
    long double h2 = kac_weights(kappa).h2, k4 = kappa / 4.0L;
    LQuad w = L4(wd);
    LComplex g0 = G(w);
    Terms T;
    T.t.push_back(D(second(G, w, j, g0, h, order)));
    for (int i = 0; i < 4; ++i) {
        if (i == j) continue;
        LComplex d = w[i] - w[j];
        T.t.push_back(D(-k4 * h2 / (d * d) * g0));
        T.t.push_back(D(k4 * partial(G, w, i, h, order) / d));
    }
    return T;
}

// A(wbar) = conj(H(conj wbar)) with H the holomorphic-sector function of the same config
SectorFunction antiholomorphic(SectorFunction holo_of_conjugate) {
    return [g = std::move(holo_of_conjugate)](const LQuad& w) {
        return std::conj(g({std::conj(w[0]), std::conj(w[1]), std::conj(w[2]), std::conj(w[3])}));
    };
}

SectorFunction holo_four_point(const Quad& z, double kappa) {
    double h2 = kac_weights(kappa).h2, h3 = kappa / 2 - 1;
    double B = coeff_B(kappa);
    Complex u0 = canonical(cross(z));
    Complex P0 = prefactor(z);
    Complex P0p = principal_pow(P0, 2 * h2);
    LComplex Pbar = L(std::conj(P0p));
    Hyp2f1Germ f1(1 - kappa / 4, 2 - 3 * kappa / 4, 2 - kappa / 2, u0);
    LComplex c1 = L(std::conj(f1.value(u0)));  // F1 in the frozen conjugate sector
    if (B == 0.0) {
        return [=](const LQuad& w) {
            return tracked_pow(prefactor(w), P0, P0p, 2 * h2) * Pbar * f1.value(cross(w)) * c1;
        };
    }
    Hyp2f1Germ f2(kappa / 4, 3 * kappa / 4 - 1, kappa / 2, u0);
    Complex S0 = principal_pow(u0, h3) * principal_pow(1.0 - u0, h3);
    LComplex c2 = L(std::conj(S0 * f2.value(u0)));
    LComplex lu0 = L(u0), l1u0 = 1.0L - L(u0);
    long double lB = B;
    return [=](const LQuad& w) {
        LComplex u = cross(w);
        LComplex S = L(S0) * lpow(u / lu0, h3) * lpow((1.0L - u) / l1u0, h3);
        return tracked_pow(prefactor(w), P0, P0p, 2 * h2) * Pbar * (f1.value(u) * c1 + lB * S * f2.value(u) * c2);
    };
}

SectorFunction holo_w14(const Quad& z) {
    Complex u0 = canonical(cross(z));
    Eta3f2Germ E(u0);
    Hyp2f1Germ F(2.0 / 3, 1, 4.0 / 3, u0);
    Complex S0 = principal_pow(u0, 1.0 / 3) * principal_pow(1.0 - u0, 1.0 / 3);
    LComplex L0 = L(principal_log(1.0 - u0));
    LComplex frozen = L(std::conj(S0 * F.value(u0)));
    LComplex frozen_e = L(std::conj(E.value(u0)));
    LComplex frozen_l = std::conj(L0);
    long double Bq = q_prefactor(), pi = std::numbers::pi_v<long double>;
    LComplex lu0 = L(u0), l1u0 = 1.0L - L(u0);
    return [=](const LQuad& w) {
        LComplex u = cross(w);
        LComplex S = L(S0) * lpow(u / lu0, 1.0L / 3) * lpow((1.0L - u) / l1u0, 1.0L / 3);
        LComplex Lg = L0 + std::log((1.0L - u) / l1u0);
        return -(Lg + frozen_l) / (12 * pi) - (E.value(u) + frozen_e) / (24 * pi) + Bq * S * F.value(u) * frozen;
    };
}

}  // namespace

SectorFunction local_four_point(const BulkConfig& cfg, double kappa, Sector sector) {
    require_distinct(cfg);
    detail::check_cut(cross(cfg.z), "local_four_point");
    if (sector == Sector::Holomorphic) return holo_four_point(cfg.z, kappa);
    return antiholomorphic(holo_four_point(cfg.z, kappa));
}

SectorFunction local_w14(const BulkConfig& cfg, Sector sector) {
    require_distinct(cfg);
    detail::check_cut(cross(cfg.z), "local_w14");
    if (sector == Sector::Holomorphic) return holo_w14(cfg.z);
    return antiholomorphic(holo_w14(cfg.z));
}

SectorFunction local_boundary_two_point(Complex z1, Complex z2, double kappa) {
    double eta0 = boundary_cross_ratio(z1, z2);
    Quad w0{z1, z2, std::conj(z1), std::conj(z2)};
    double h2 = kac_weights(kappa).h2, h3 = kappa / 2 - 1;
    long double Bb = coeff_B_boundary(kappa);
    Complex mu0 = prefactor(w0);
    Complex mu0p = principal_pow(mu0, 2 * h2);
    Complex e0(eta0, 0.0);
    Hyp2f1Germ f1(1 - kappa / 4, 2 - 3 * kappa / 4, 2 - kappa / 2, e0);
    Hyp2f1Germ f2(kappa / 4, 3 * kappa / 4 - 1, kappa / 2, e0);
    Complex m0 = -e0 * (1.0 - e0);
    Complex m0p = principal_pow(m0, h3);
    return [=](const LQuad& w) {
        LComplex eta = cross(w);
        LComplex blocks = f1.value(eta);
        if (Bb != 0.0L) blocks += Bb * tracked_pow(-eta * (1.0L - eta), m0, m0p, h3) * f2.value(eta);
        return tracked_pow(prefactor(w), mu0, mu0p, 2 * h2) * blocks;
    };
}

ResidualReport bpz_residual(int j, const BulkConfig& cfg, const ModelParams& p, const StencilSpec& spec) {
    if (j < 1 || j > 4) throw Error(ErrorKind::Range, "j must be in 1..4");
    double h = resolve_h(spec, min_separation(cfg));
    auto G = local_four_point(cfg, p.kappa, spec.sector);
    Quad w = spec.sector == Sector::Holomorphic ? cfg.z : conj4(cfg.z);
    return two_level([&](double s) { return bpz_terms(G, w, j - 1, p.kappa, s, spec.order); }, h);
}

ResidualReport boundary_bpz_residual(Complex z1, Complex z2, const ModelParams& p, const StencilSpec& spec, int j) {
    if (j < 1 || j > 4) throw Error(ErrorKind::Range, "j must be in 1..4");
    Quad w{z1, z2, std::conj(z1), std::conj(z2)};
    auto G = local_boundary_two_point(z1, z2, p.kappa);
    double h = resolve_h(spec, min_separation(BulkConfig{w}));
    return two_level([&](double s) { return bpz_terms(G, w, j - 1, p.kappa, s, spec.order); }, h);
}

Complex w_pde_rhs(const Quad& z) {
    Complex z1 = z[0], z2 = z[1], z3 = z[2], z4 = z[3];
    Complex s = 1.0 / ((z4 - z1) * (z4 - z1)) + 1.0 / (z3 - z1) * (1.0 / (z3 - z4) + 1.0 / (z2 - z3)) +
                1.0 / (z2 - z1) * (1.0 / (z2 - z4) + 1.0 / (z3 - z2)) +
                1.0 / (z4 - z1) * (1.0 / (z4 - z3) + 1.0 / (z4 - z2));
    return s / (24 * kPi);
}

ResidualReport w_pde_residual(const BulkConfig& cfg, const StencilSpec& spec) {
    double h = resolve_h(spec, min_separation(cfg));
    auto W = local_w14(cfg, spec.sector);
    Quad w = spec.sector == Sector::Holomorphic ? cfg.z : conj4(cfg.z);
    LQuad lw = L4(w);
    auto at = [&](double s) {
        Terms T;
        LComplex w0 = W(lw);
        T.t.push_back(D(1.5L * second(W, lw, 0, w0, s, spec.order)));
        for (int i = 1; i < 4; ++i) T.t.push_back(D(partial(W, lw, i, s, spec.order) / (lw[i] - lw[0])));
        T.t.push_back(-w_pde_rhs(w));
        return T;
    };
    return two_level(at, h);
}

double w_subtraction(const BulkConfig& cfg) {
    require_distinct(cfg);
    const auto& z = cfg.z;
    auto ln = [](Complex d) { return std::log(std::abs(d)); };
    return (-2 * ln(z[3] - z[0]) + ln(z[2] - z[3]) + ln(z[1] - z[3]) - ln(z[1] - z[2])) / (12 * kPi);
}

double w_subtracted(const BulkConfig& cfg) {
    return w_bulk(SeparationPattern::bulk(0b1001), cfg).value - w_subtraction(cfg);
}

namespace {

double shifted(const std::function<double(const BulkConfig&)>& f, BulkConfig c, int i, Complex d) {
    c.z[i] += d;
    return f(c);
}

double real_d1(const std::function<double(const BulkConfig&)>& f, const BulkConfig& c, int i, Complex dir, double h,
               int order) {
    auto g = [&](double s) { return shifted(f, c, i, s * dir); };
    return d1<double>(g, h, order);
}

double real_d2(const std::function<double(const BulkConfig&)>& f, const BulkConfig& c, int i, Complex dir, double f0,
               double h, int order) {
    auto g = [&](double s) { return shifted(f, c, i, s * dir); };
    return d2<double>(g, f0, h, order);
}

}  // namespace

ResidualReport w_real_pde_residual(const BulkConfig& cfg, const StencilSpec& spec) {
    double h = resolve_h(spec, min_separation(cfg));
    std::function<double(const BulkConfig&)> Wt = w_subtracted;
    double w0 = Wt(cfg);
    const Complex ex(1, 0), ey(0, 1);
    auto at = [&](double s) {
        Terms T;
        double dxx = real_d2(Wt, cfg, 0, ex, w0, s, spec.order);
        double dyy = real_d2(Wt, cfg, 0, ey, w0, s, spec.order);
        T.t.push_back(3 * dxx);
        for (int i = 1; i < 4; ++i) {
            Complex dz = 0.5 * Complex(real_d1(Wt, cfg, i, ex, s, spec.order), -real_d1(Wt, cfg, i, ey, s, spec.order));
            T.t.push_back(2 * std::real(2.0 * dz / (cfg.z[i] - cfg.z[0])));
        }
        T.t.push_back(-1.5 * (dxx + dyy));
        return T;
    };
    return two_level(at, h);
}

double laplacian_z1(const std::function<double(const BulkConfig&)>& f, const BulkConfig& cfg, double h) {
    double f0 = f(cfg);
    double s = shifted(f, cfg, 0, h) + shifted(f, cfg, 0, -h) + shifted(f, cfg, 0, Complex(0, h)) +
               shifted(f, cfg, 0, Complex(0, -h));
    return (s - 4 * f0) / (h * h);
}

double d_x1(const std::function<double(const BulkConfig&)>& f, const BulkConfig& cfg, double h) {
    return (shifted(f, cfg, 0, h) - shifted(f, cfg, 0, -h)) / (2 * h);
}

}  // namespace loopmass
