#include "loopmass/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "loopmass/error.hpp"

namespace loopmass {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleTol = 1e-12;
constexpr double kCutTol = 1e-12;
constexpr double kSeriesRadius = 0.7;

// Lanczos, g = 7, n = 9
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double reduce2(double x) { return x - 2.0 * std::round(0.5 * x); }

double sinpi(double x) {
    double r = reduce2(x);  // [-1, 1]
    double s = r < 0 ? -1.0 : 1.0;
    r = std::abs(r);
    if (r > 0.5) r = 1.0 - r;
    return s * std::sin(kPi * r);
}

Complex sinpi(Complex z) {
    double x = reduce2(z.real());
    return std::sin(kPi * Complex(x, z.imag()));
}

bool near_pole(double x) {
    double r = std::round(x);
    return r <= 0.0 && std::abs(x - r) < kPoleTol;
}

template <class T>
T lanczos_core(T z) {
    z -= 1.0;
    T x = T(kLanczos[0]);
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    T t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

template <class T>
T finite_or_throw(T v, const char* who) {
    if (!std::isfinite(std::real(v)) || !std::isfinite(std::imag(v)))
        throw Error(ErrorKind::Overflow, std::string(who) + " produced a non-finite value");
    return v;
}

Complex cplx_gk(auto&& f, double lo, double hi) {
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-12, &err);
}

bool near_int(double x, double tol) { return std::abs(x - std::round(x)) < tol; }

bool is_nonpos_int(double x) { return x <= 0 && x == std::round(x); }

}  // namespace

Complex canonical(Complex z) noexcept {
    if (z.imag() == 0.0) return {z.real(), 0.0};
    return z;
}

Complex principal_log(Complex z) { return std::log(canonical(z)); }

Complex principal_pow(Complex z, double p) {
    z = canonical(z);
    if (z == Complex(0.0, 0.0)) return p == 0 ? Complex(1.0) : Complex(0.0);
    if (z.imag() == 0.0 && z.real() > 0) return {std::pow(z.real(), p), 0.0};
    return std::exp(p * std::log(z));
}

double gamma(double x) {
    if (near_pole(x)) throw Error(ErrorKind::Pole, "gamma at non-positive integer");
    if (x < 0.5) return finite_or_throw(kPi / (sinpi(x) * gamma(1.0 - x)), "gamma");
    return finite_or_throw(lanczos_core(x), "gamma");
}

Complex gamma(Complex z) {
    if (std::abs(z.imag()) < kPoleTol && near_pole(z.real()))
        throw Error(ErrorKind::Pole, "gamma at non-positive integer");
    if (z.imag() == 0.0) return {gamma(z.real()), 0.0};
    if (z.real() < 0.5) return finite_or_throw(kPi / (sinpi(z) * gamma(1.0 - z)), "gamma");
    return finite_or_throw(lanczos_core(z), "gamma");
}

double rgamma(double x) {
    if (x < 0.5) return sinpi(x) * gamma(1.0 - x) / kPi;
    return 1.0 / lanczos_core(x);
}

Complex rgamma(Complex z) {
    if (z.imag() == 0.0) return {rgamma(z.real()), 0.0};
    if (z.real() < 0.5) return sinpi(z) * gamma(1.0 - z) / kPi;
    return 1.0 / lanczos_core(z);
}

namespace detail {

void check_cut(Complex z, const char* who) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw Error(ErrorKind::Range, std::string(who) + ": non-finite argument");
    if (z.real() >= 1.0 - kCutTol && std::abs(z.imag()) <= kCutTol)
        throw Error(ErrorKind::Cut, std::string(who) + ": argument on [1, inf)");
}

Complex hyp2f1_series(double a, double b, double c, Complex z) {
    Complex sum = 1.0, term = 1.0;
    int quiet = 0;
    for (int k = 0; k < 5000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (term == Complex(0.0)) break;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++quiet >= 3) break;
        } else {
            quiet = 0;
        }
    }
    return sum;
}

Complex hyp2f1_pfaff(double a, double b, double c, Complex z) {
    Complex w = z / (z - 1.0);
    return principal_pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w);
}

Complex hyp2f1_connection(double a, double b, double c, Complex z) {
    Complex w = 1.0 - z;
    double s = c - a - b;
    double g1 = gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b);
    double g2 = gamma(c) * gamma(-s) * rgamma(a) * rgamma(b);
    Complex t1 = g1 == 0.0 ? Complex(0.0) : g1 * hyp2f1_series(a, b, 1.0 - s, w);
    Complex t2 = g2 == 0.0 ? Complex(0.0)
                           : g2 * principal_pow(w, s) * hyp2f1_series(c - a, c - b, s + 1.0, w);
    return t1 + t2;
}

// 2F1(a,1;c;z) = (c-1) int_0^1 (1-t)^{c-2} (1-zt)^{-a} dt; u = (1-t)^{c-1}
Complex hyp2f1_euler_b1(double a, double c, Complex z) {
    double p = 1.0 / (c - 1.0);
    auto f = [&](double u) {
        double t = -std::expm1(p * std::log(u));  // 1 - u^p
        if (u == 0.0) t = 1.0;
        return principal_pow(1.0 - z * t, -a);
    };
    return cplx_gk(f, 0.0, 1.0);
}

namespace {

// Taylor coefficients of the 2F1 ODE solution around p (p != 0, 1).
std::vector<Complex> ode_coefficients(double a, double b, double c, Complex p, Complex f, Complex df,
                                      double rho) {
    std::vector<Complex> w{f, df};
    Complex pp = p * (1.0 - p);
    double scale = std::max(std::abs(f), std::abs(df) * rho);
    int quiet = 0;
    double rk = rho;
    for (int k = 0; k < 400; ++k) {
        Complex num = (k + a) * (k + b) * w[k] -
                      (k + 1.0) * ((1.0 - 2.0 * p) * double(k) + c - (a + b + 1.0) * p) * w[k + 1];
        w.push_back(num / (pp * double((k + 2) * (k + 1))));
        rk *= rho;
        double mag = std::abs(w.back()) * rk;
        scale = std::max(scale, mag);
        if (mag <= 1e-18 * scale) {
            if (++quiet >= 4) break;
        } else {
            quiet = 0;
        }
    }
    return w;
}

std::vector<Complex> series_coefficients(double a, double b, double c, double rho) {
    std::vector<Complex> w{1.0};
    double rk = 1.0, scale = 1.0;
    int quiet = 0;
    for (int k = 0; k < 400; ++k) {
        w.push_back(w.back() * ((a + k) * (b + k) / ((c + k) * (k + 1.0))));
        rk *= rho;
        double mag = std::abs(w.back()) * rk;
        scale = std::max(scale, mag);
        if (mag <= 1e-18 * scale) {
            if (++quiet >= 4) break;
        } else {
            quiet = 0;
        }
    }
    return w;
}

Complex horner(const std::vector<Complex>& w, Complex t) {
    Complex s = 0.0;
    for (auto it = w.rbegin(); it != w.rend(); ++it) s = s * t + *it;
    return s;
}

LComplex horner_ld(const std::vector<Complex>& w, LComplex t) {
    LComplex s = 0.0L;
    for (auto it = w.rbegin(); it != w.rend(); ++it) s = s * t + LComplex(it->real(), it->imag());
    return s;
}

Complex horner_d(const std::vector<Complex>& w, Complex t) {
    Complex s = 0.0;
    for (std::size_t k = w.size() - 1; k >= 1; --k) s = s * t + double(k) * w[k];
    return s;
}

}  // namespace

// Continue along the ray from |z| = 1/2 using overlapping ODE Taylor steps.
Complex hyp2f1_continued(double a, double b, double c, Complex z) {
    double r = std::abs(z);
    Complex dir = z / r;
    Complex p = 0.5 * dir;
    Complex f = hyp2f1_series(a, b, c, p);
    Complex df = a * b / c * hyp2f1_series(a + 1, b + 1, c + 1, p);
    for (int guard = 0; guard < 10000; ++guard) {
        Complex rest = z - p;
        double left = std::abs(rest);
        if (left == 0.0) break;
        double reach = 0.5 * std::min(std::abs(p), std::abs(1.0 - p));
        Complex t = left <= reach ? rest : rest * (reach / left);
        auto w = ode_coefficients(a, b, c, p, f, df, std::abs(t));
        f = horner(w, t);
        df = horner_d(w, t);
        p = left <= reach ? z : p + t;
    }
    return f;
}

Complex lerch_series(Complex z) {
    Complex sum = 0.0, zk = 1.0;
    for (int k = 0; k < 5000; ++k) {
        Complex term = zk / (k + 4.0 / 3.0);
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        zk *= z;
    }
    return sum;
}

// int_0^1 t^{1/3}/(1-zt) dt with t = v^3
Complex lerch_integral(Complex z) {
    auto f = [&](double v) {
        double v3 = v * v * v;
        return 3.0 * v3 / (1.0 - z * v3);
    };
    return cplx_gk(f, 0.0, 1.0);
}

Complex eta_3f2_series(Complex eta) {
    Complex term = eta, sum = eta;
    for (int m = 1; m < 5000; ++m) {
        term *= eta * ((m + 1.0 / 3.0) * m / ((m + 2.0 / 3.0) * (m + 1.0)));
        sum += term;
        if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// E = -2 G(2/3)/G(1/3)^2 int_0^1 s^{-2/3}(1-s)^{-2/3} ln(1 - eta s) ds.
// Each half is mapped by s = v^3 (or 1 - s = v^3) to a bounded integrand.
Complex eta_3f2_integral(Complex eta) {
    static const double C = gamma(2.0 / 3.0) / (gamma(1.0 / 3.0) * gamma(1.0 / 3.0));
    const double vmax = std::cbrt(0.5);
    auto lo = [&](double v) {
        double v3 = v * v * v;
        return 3.0 * std::pow(1.0 - v3, -2.0 / 3.0) * principal_log(1.0 - eta * v3);
    };
    auto hi = [&](double v) {
        double v3 = v * v * v;
        return 3.0 * std::pow(1.0 - v3, -2.0 / 3.0) * principal_log(1.0 - eta * (1.0 - v3));
    };
    return -2.0 * C * (cplx_gk(lo, 0.0, vmax) + cplx_gk(hi, 0.0, vmax));
}

}  // namespace detail

Complex hyp2f1(double a, double b, double c, Complex z) {
    if (std::round(c) <= 0.0 && std::abs(c - std::round(c)) < kPoleTol)
        throw Error(ErrorKind::DegenerateC, "hyp2f1: c at a non-positive integer");
    detail::check_cut(z, "hyp2f1");
    z = canonical(z);
    if (z == Complex(0.0)) return 1.0;
    if (is_nonpos_int(a) || is_nonpos_int(b) || std::abs(z) <= kSeriesRadius)
        return finite_or_throw(detail::hyp2f1_series(a, b, c, z), "hyp2f1");
    if (std::abs(z / (z - 1.0)) <= kSeriesRadius)
        return finite_or_throw(detail::hyp2f1_pfaff(a, b, c, z), "hyp2f1");
    if (std::abs(1.0 - z) <= kSeriesRadius && !near_int(c - a - b, 1e-6))
        return finite_or_throw(detail::hyp2f1_connection(a, b, c, z), "hyp2f1");
    if (b == 1.0 && c > 1.0) return finite_or_throw(detail::hyp2f1_euler_b1(a, c, z), "hyp2f1");
    if (a == 1.0 && c > 1.0) return finite_or_throw(detail::hyp2f1_euler_b1(b, c, z), "hyp2f1");
    return finite_or_throw(detail::hyp2f1_continued(a, b, c, z), "hyp2f1");
}

Complex lerch_phi_third(Complex z) {
    detail::check_cut(z, "lerch_phi_third");
    z = canonical(z);
    if (std::abs(z) <= kSeriesRadius) return detail::lerch_series(z);
    return finite_or_throw(detail::lerch_integral(z), "lerch_phi_third");
}

Complex eta_3f2(Complex eta) {
    detail::check_cut(eta, "eta_3f2");
    eta = canonical(eta);
    if (std::abs(eta) <= kSeriesRadius) return detail::eta_3f2_series(eta);
    return finite_or_throw(detail::eta_3f2_integral(eta), "eta_3f2");
}

Hyp2f1Germ::Hyp2f1Germ(double a, double b, double c, Complex p) : a_(a), b_(b), c_(c), p_(canonical(p)) {
    if (p_ == Complex(0.0)) {
        radius_ = 0.5;
        w_ = detail::series_coefficients(a, b, c, radius_);
        return;
    }
    build(hyp2f1(a, b, c, p_), a * b / c * hyp2f1(a + 1, b + 1, c + 1, p_));
}

Hyp2f1Germ::Hyp2f1Germ(double a, double b, double c, Complex p, Complex f, Complex df)
    : a_(a), b_(b), c_(c), p_(canonical(p)) {
    build(f, df);
}

void Hyp2f1Germ::build(Complex f, Complex df) {
    if (p_ == Complex(0.0) || p_ == Complex(1.0))
        throw Error(ErrorKind::Range, "Hyp2f1Germ: center at a singular point");
    radius_ = 0.5 * std::min(std::abs(p_), std::abs(1.0 - p_));
    w_ = detail::ode_coefficients(a_, b_, c_, p_, f, df, radius_);
}

Complex Hyp2f1Germ::value(Complex z) const {
    Complex t = z - p_;
    if (std::abs(t) > radius_ * (1 + 1e-12)) throw Error(ErrorKind::Range, "Hyp2f1Germ: outside radius");
    return detail::horner(w_, t);
}

LComplex Hyp2f1Germ::value(LComplex z) const {
    LComplex t = z - LComplex(p_.real(), p_.imag());
    if (std::abs(t) > radius_ * (1 + 1e-12)) throw Error(ErrorKind::Range, "Hyp2f1Germ: outside radius");
    return detail::horner_ld(w_, t);
}

Complex Hyp2f1Germ::derivative(Complex z) const {
    Complex t = z - p_;
    if (std::abs(t) > radius_ * (1 + 1e-12)) throw Error(ErrorKind::Range, "Hyp2f1Germ: outside radius");
    return detail::horner_d(w_, t);
}

Eta3f2Germ::Eta3f2Germ(Complex p) : p_(canonical(p)) {
    if (p_ == Complex(0.0)) {
        radius_ = 0.5;
        e_.push_back(0.0);
        Complex c = 1.0;
        e_.push_back(c);
        for (int m = 1; m < 200; ++m) {
            c *= (m + 1.0 / 3.0) * m / ((m + 2.0 / 3.0) * (m + 1.0));
            e_.push_back(c);
        }
        return;
    }
    Hyp2f1Germ g(1.0 / 3.0, 1.0, 2.0 / 3.0, p_);
    radius_ = g.radius();
    const auto& gk = g.coefficients();
    e_.push_back(eta_3f2(p_));
    Complex hprev = 0.0;
    for (std::size_t k = 0; k < gk.size(); ++k) {
        Complex h = (2.0 * (gk[k] - (k == 0 ? 1.0 : 0.0)) - hprev) / p_;
        e_.push_back(h / double(k + 1));
        hprev = h;
    }
}

Complex Eta3f2Germ::value(Complex z) const {
    Complex t = z - p_;
    if (std::abs(t) > radius_ * (1 + 1e-12)) throw Error(ErrorKind::Range, "Eta3f2Germ: outside radius");
    return detail::horner(e_, t);
}

}  // namespace loopmass

namespace loopmass {

LComplex Eta3f2Germ::value(LComplex z) const {
    LComplex t = z - LComplex(p_.real(), p_.imag());
    if (std::abs(t) > radius_ * (1 + 1e-12)) throw Error(ErrorKind::Range, "Eta3f2Germ: outside radius");
    return detail::horner_ld(e_, t);
}

}  // namespace loopmass
