#pragma once

#include <complex>
#include <vector>

namespace loopmass {

using Complex = std::complex<double>;
using LComplex = std::complex<long double>;

// Replaces a negative-zero imaginary part by +0 so principal logs and powers
// put negative reals on the upper lip of the cut.
Complex canonical(Complex z) noexcept;
Complex principal_log(Complex z);
Complex principal_pow(Complex z, double p);

double gamma(double x);
Complex gamma(Complex z);
// 1/Gamma, entire; returns 0 at the poles instead of throwing.
double rgamma(double x);
Complex rgamma(Complex z);

Complex hyp2f1(double a, double b, double c, Complex z);

/// Phi(z, 1, 4/3) = sum_k z^k / (k + 4/3).
Complex lerch_phi_third(Complex z);

/// eta * 3F2(1, 1, 4/3; 2, 5/3; eta).
Complex eta_3f2(Complex eta);

// Local Taylor germ of the 2F1 solution through (p, F(p), F'(p)), built from
// the hypergeometric ODE. Valid for |z - p| <= radius().
class Hyp2f1Germ {
public:
    Hyp2f1Germ(double a, double b, double c, Complex p);
    Hyp2f1Germ(double a, double b, double c, Complex p, Complex f, Complex df);

    Complex value(Complex z) const;
    LComplex value(LComplex z) const;
    Complex derivative(Complex z) const;
    Complex center() const { return p_; }
    double radius() const { return radius_; }
    const std::vector<Complex>& coefficients() const { return w_; }

private:
    void build(Complex f, Complex df);
    double a_, b_, c_;
    Complex p_;
    double radius_;
    std::vector<Complex> w_;
};

// Taylor germ of eta_3f2 around p, via E'(z) = 2(2F1(1/3,1;2/3;z) - 1)/z.
class Eta3f2Germ {
public:
    explicit Eta3f2Germ(Complex p);
    Complex value(Complex z) const;
    LComplex value(LComplex z) const;
    Complex center() const { return p_; }
    double radius() const { return radius_; }

private:
    Complex p_;
    double radius_;
    std::vector<Complex> e_;
};

namespace detail {
Complex hyp2f1_series(double a, double b, double c, Complex z);
Complex hyp2f1_pfaff(double a, double b, double c, Complex z);
Complex hyp2f1_connection(double a, double b, double c, Complex z);
Complex hyp2f1_euler_b1(double a, double c, Complex z);
Complex hyp2f1_continued(double a, double b, double c, Complex z);
Complex lerch_series(Complex z);
Complex lerch_integral(Complex z);
Complex eta_3f2_series(Complex eta);
Complex eta_3f2_integral(Complex eta);
void check_cut(Complex z, const char* who);
}  // namespace detail

}  // namespace loopmass
