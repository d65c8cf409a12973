#include "loopmass/mu_mass.hpp"

#include <cmath>
#include <numbers>

#include "loopmass/error.hpp"

namespace loopmass {

namespace {

constexpr double kPi = std::numbers::pi;

int popcount4(std::uint8_t m) { return __builtin_popcount(m & 0xF); }

}  // namespace

SeparationPattern SeparationPattern::bulk(std::uint8_t m, int points) {
    if (points != 2 && points != 4) throw Error(ErrorKind::Range, "bulk patterns need 2 or 4 points");
    unsigned full = (1u << points) - 1;
    if (m > full) throw Error(ErrorKind::Range, "bulk pattern mask out of range");
    if (!(m & 1)) m = static_cast<std::uint8_t>(~m & full);
    return {m, false, points};
}

SeparationPattern SeparationPattern::boundary(std::uint8_t m) {
    if (m > 0x3) throw Error(ErrorKind::Range, "boundary pattern mask out of range");
    return {m, true, 2};
}

SeparationPattern SeparationPattern::parse_bulk(const std::string& text) {
    std::uint8_t side[2] = {0, 0};
    int k = 0, digits = 0;
    for (char ch : text) {
        if (ch == '|' && k == 0) k = 1;
        else if (ch >= '1' && ch <= '4') {
            auto bit = std::uint8_t(1u << (ch - '1'));
            if ((side[0] | side[1]) & bit) throw Error(ErrorKind::Range, "bad pattern '" + text + "'");
            side[k] |= bit;
            ++digits;
        } else if (ch != '{' && ch != '}' && ch != ',' && ch != ' ')
            throw Error(ErrorKind::Range, "bad pattern '" + text + "'");
    }
    // "ab|cd" must name all four points
    bool ok = side[0] != 0 && (k == 0 || digits == 4);
    if (!ok) throw Error(ErrorKind::Range, "bad pattern '" + text + "'");
    return bulk(side[0]);
}

bool SeparationPattern::two_sided() const {
    if (boundary_) return mask_ == 0x3;
    return points_ == 4 && popcount4(mask_) == 2;
}

std::string SeparationPattern::label() const {
    if (boundary_) {
        static const char* names[] = {"{}", "{1}", "{2}", "{1,2}"};
        return names[mask_];
    }
    std::string in, out;
    for (int i = 0; i < points_; ++i) (mask_ & (1 << i) ? in : out) += char('1' + i);
    return in + "|" + out;
}

std::vector<SeparationPattern> SeparationPattern::all_bulk(int points) {
    std::vector<SeparationPattern> v;
    for (unsigned m = 1; m < (1u << points); m += 2) v.push_back(bulk(std::uint8_t(m), points));
    return v;
}

std::vector<SeparationPattern> SeparationPattern::all_boundary() {
    return {boundary(0), boundary(1), boundary(2), boundary(3)};
}

double q_prefactor() {
    static const double v = std::cbrt(2.0) * kPi /
                            (3 * std::sqrt(3.0) * std::pow(loopmass::gamma(1.0 / 6), 2) *
                             std::pow(loopmass::gamma(4.0 / 3), 2));
    return v;
}

double q_boundary_prefactor() {
    static const double v = std::pow(loopmass::gamma(2.0 / 3), 2) / (6 * kPi * loopmass::gamma(4.0 / 3));
    return v;
}

Complex q_two_variable(Complex u, Complex v) {
    u = canonical(u);
    v = canonical(v);
    detail::check_cut(u, "q");
    detail::check_cut(v, "q");
    auto refl = [](Complex w, auto&& f) { return std::conj(f(canonical(std::conj(w)))); };
    auto sec = [](Complex w) { return principal_pow(w, 1.0 / 3) * principal_pow(1.0 - w, 1.0 / 3); };
    auto F = [](Complex w) { return hyp2f1(2.0 / 3, 1, 4.0 / 3, w); };
    Complex ev = refl(v, [](Complex w) { return eta_3f2(w); });
    Complex mixed = sec(u) * refl(v, sec) * F(u) * refl(v, F);
    return -(eta_3f2(u) + ev) / (24 * kPi) + q_prefactor() * mixed;
}

double q_fn(Complex u, Complex v) {
    Complex r = q_two_variable(u, v);
    if (std::abs(r.imag()) > 1e-10 * std::max(1.0, std::abs(r.real())))
        throw Error(ErrorKind::Range, "q: arguments are not a conjugate pair");
    return r.real();
}

double q_fn(Complex eta) { return q_fn(eta, std::conj(eta)); }

MassValue w_bulk(SeparationPattern pattern, const BulkConfig& cfg) {
    if (pattern.is_boundary() || !pattern.two_sided())
        throw Error(ErrorKind::Range, "w_bulk needs a two-sided bulk pattern");
    Complex eta = cross_ratio(cfg).u;
    double q = q_fn(eta);
    double v = q;
    switch (pattern.mask()) {
    case 0b1001: v = -std::log(std::abs(1.0 - eta)) / (6 * kPi) + q; break;
    case 0b0011: v = -std::log(std::abs(eta)) / (6 * kPi) + q; break;
    default: break;
    }
    return {v, pattern};
}

double w_from_correlators(SeparationPattern pattern, const BulkConfig& cfg, double n_small, const Normalization& norm) {
    if (!(n_small > 0 && n_small <= 1e-3)) throw Error(ErrorKind::Range, "n_small must lie in (0, 1e-3]");
    if (pattern.is_boundary() || !pattern.two_sided())
        throw Error(ErrorKind::Range, "w_from_correlators needs a two-sided bulk pattern");
    ModelParams p = params_from_n(n_small);
    const auto& z = cfg.z;
    double amp = norm.A * (1 + norm.varrho * p.n);
    double L = four_point(cfg, p, norm) / amp;
    auto C = [&](int i, int j) { return two_point(z[i], z[j], p, cfg.a); };
    double c12 = C(0, 1) * C(2, 3), c13 = C(0, 2) * C(1, 3), c14 = C(0, 3) * C(1, 2);
    double num = 0;
    switch (pattern.mask()) {
    case 0b0011: num = L + c12 - c13 - c14; break;
    case 0b0101: num = L + c13 - c12 - c14; break;
    default: num = L + c14 - c12 - c13; break;
    }
    return num / (8 * n_small);
}

double two_point_log_mass(Complex z1, Complex z2, double a) {
    double r = std::abs(z1 - z2);
    if (!(a > 0) || !(r >= a)) throw Error(ErrorKind::Scale, "two_point_log_mass needs |z12| >= a > 0");
    return std::log(r / a) / (3 * kPi);
}

double w_boundary_at(double eta) {
    if (!(eta < 0)) throw Error(ErrorKind::Range, "boundary cross ratio must be negative");
    double prod = -eta * (1 - eta);
    double F = hyp2f1(2.0 / 3, 1, 4.0 / 3, eta).real();
    return -std::log(prod) / (12 * kPi) - eta_3f2(eta).real() / (12 * kPi) +
           q_boundary_prefactor() * std::cbrt(prod) * F;
}

MassValue w_boundary(Complex z1, Complex z2) {
    return {w_boundary_at(boundary_cross_ratio(z1, z2)), SeparationPattern::boundary(0x3)};
}

namespace {

double resolve_eps(const Spin2Options& opt, double minsep) {
    double eps = opt.eps > 0 ? opt.eps : 1e-2 * minsep;
    if (!(eps <= 0.1 * minsep)) throw Error(ErrorKind::EpsTooLarge, "eps must not exceed 0.1 of the minimal separation");
    if (opt.nodes < 256) throw Error(ErrorKind::Range, "at least 256 angular nodes");
    if (!(opt.ratio > 1)) throw Error(ErrorKind::Range, "eps ratio must exceed 1");
    return eps;
}

double w14(Complex z1, Complex z2, Complex z3, Complex z4) {
    return w_bulk(SeparationPattern::bulk(0b1001), BulkConfig{{z1, z2, z3, z4}}).value;
}

Complex richardson(Complex coarse, Complex fine, double ratio, double power) {
    double r = std::pow(ratio, power);
    return (r * fine - coarse) / (r - 1);
}

}  // namespace

Complex spin2_angular(Complex z1, Complex z3, Complex z4, double eps, int nodes) {
    Complex sum = 0.0;
    for (int k = 0; k < nodes; ++k) {
        double th = 2 * kPi * k / nodes;
        sum += std::polar(1.0, -2 * th) * w14(z1, z1 + std::polar(eps, th), z3, z4);
    }
    return sum / double(nodes);
}

Complex ttilde_angular(Complex z1, Complex z3, double eps, int nodes) {
    std::vector<Complex> row(nodes);
    for (int j = 0; j < nodes; ++j) {
        double t34 = 2 * kPi * j / nodes;
        Complex z4 = z3 + std::polar(eps, t34);
        Complex s = 0.0;
        for (int k = 0; k < nodes; ++k) {
            double t12 = 2 * kPi * k / nodes;
            s += std::polar(1.0, -2 * t12) * w14(z1, z1 + std::polar(eps, t12), z3, z4);
        }
        row[j] = std::polar(1.0, -2 * t34) * s;
    }
    Complex sum = 0.0;
    for (auto v : row) sum += v;
    return sum / (double(nodes) * nodes);
}

// Corrections come only from |eta|^{2/3}: eps^{2/3} here, eps^{4/3} below.
Complex spin2_component(Complex z1, Complex z3, Complex z4, const Spin2Options& opt) {
    double minsep = std::min({std::abs(z1 - z3), std::abs(z1 - z4), std::abs(z3 - z4)});
    double eps = resolve_eps(opt, minsep);
    auto V = [&](double e) { return 5.0 * spin2_angular(z1, z3, z4, e, opt.nodes) / (e * e); };
    Complex coarse = V(eps);
    if (!opt.extrapolate) return coarse;
    return richardson(coarse, V(eps / opt.ratio), opt.ratio, 2.0 / 3);
}

Complex ttilde_two_point(Complex z1, Complex z3, const Spin2Options& opt) {
    double eps = resolve_eps(opt, std::abs(z1 - z3));
    auto T = [&](double e) { return 25.0 * ttilde_angular(z1, z3, e, opt.nodes) / std::pow(e, 4); };
    Complex coarse = T(eps);
    if (!opt.extrapolate) return coarse;
    return richardson(coarse, T(eps / opt.ratio), opt.ratio, 4.0 / 3);
}

}  // namespace loopmass
