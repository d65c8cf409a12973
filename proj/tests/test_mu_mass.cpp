#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "loopmass/error.hpp"
#include "loopmass/mu_mass.hpp"
#include "test_support.hpp"

using namespace loopmass;
using namespace testsupport;
using std::numbers::pi;

namespace {

const auto P12 = SeparationPattern::parse_bulk("12|34");
const auto P13 = SeparationPattern::parse_bulk("13|24");
const auto P14 = SeparationPattern::parse_bulk("14|23");

struct WRow {
    BulkConfig cfg;
    double w12, w13, w14;
};

// mpmath, 30 digits
const WRow kRows[] = {
    {kSquare, 0.043712394070757471, 0.0069397940453155404, 0.043712394070757471},
    {{{Complex(0.1, 0.2), Complex(1.3, -0.4), Complex(0.7, 1.5), Complex(-1, 0.6)}},
     0.033908199925644499, 0.016383082037975071, 0.039280810581732328},
    {{{Complex(-2, 0.3), Complex(0.4, 0.1), Complex(3, -1), Complex(0.5, 4)}},
     0.036029486705530613, 0.01462256270492243, 0.039516705103305905},
};

Complex mobius(Complex z, Complex a, Complex b, Complex c, Complex d) { return (a * z + b) / (c * z + d); }

}  // namespace

TEST_CASE("separation patterns") {
    CHECK(SeparationPattern::all_bulk().size() == 8);
    CHECK(SeparationPattern::all_boundary().size() == 4);
    CHECK(SeparationPattern::bulk(0b0110) == P14);
    CHECK(SeparationPattern::bulk(0b1100) == P12);
    CHECK(P12.label() == "12|34");
    CHECK(P13.label() == "13|24");
    CHECK(P14.label() == "14|23");
    CHECK(P12.two_sided());
    CHECK_FALSE(SeparationPattern::bulk(0b0001).two_sided());
    CHECK(SeparationPattern::parse_bulk("{3,4}") == P12);
    CHECK_THROWS_AS(SeparationPattern::parse_bulk("12|3"), Error);
}

TEST_CASE("q oracle values and symmetries") {
    struct {
        Complex eta;
        double q;
    } rows[] = {{0.2, 0.0055511601095097002},          {0.5, 0.0069397940453155404},
                {0.7, 0.0063666861678610383},          {Complex(0.3, 0.4), 0.014729982907259334},
                {Complex(-2, 1), 0.068155917386170078}, {Complex(3, -2), 0.075858515779975391}};
    for (auto& r : rows) {
        CHECK(std::abs(q_fn(r.eta) - r.q) < 1e-12);
        CHECK(std::abs(q_fn(r.eta) - q_fn(1.0 - r.eta)) < 1e-8);
        CHECK(std::abs(q_fn(r.eta) - q_fn(std::conj(r.eta))) < 1e-8);
    }
    CHECK(std::abs(q_fn(Complex(0))) < 1e-15);
    CHECK(std::abs(q_fn(Complex(1e-8, 1e-8))) < 1e-6);
}

TEST_CASE("w_bulk oracle values") {
    for (auto& r : kRows) {
        CHECK(rel(w_bulk(P12, r.cfg).value, r.w12) < 1e-10);
        CHECK(rel(w_bulk(P13, r.cfg).value, r.w13) < 1e-10);
        CHECK(rel(w_bulk(P14, r.cfg).value, r.w14) < 1e-10);
    }
    CHECK(std::abs(w_bulk(P13, kSquare).value - q_fn(cross_ratio(kSquare).u)) < 1e-15);
    CHECK_THROWS_AS(w_bulk(SeparationPattern::bulk(1), kSquare), Error);
}

TEST_CASE("w_bulk limits") {
    for (double e : {1e-3, 1e-5}) {
        BulkConfig c{{Complex(0), Complex(e), Complex(1), Complex(1 + e)}};
        CHECK(w_bulk(P14, c).value < 10 * e);
        double eta = std::abs(cross_ratio(c).u);
        double w = w_bulk(P12, c).value;
        CHECK(rel(w, -std::log(eta) / (6 * pi)) < 0.05);
    }
}

TEST_CASE("Mobius invariance") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int i = 0; i < 10; ++i) {
        auto c = random_config(rng);
        Complex a(u(rng), u(rng)), b(u(rng), u(rng)), cc(u(rng), u(rng)), d(1 + u(rng), u(rng));
        BulkConfig m = c;
        for (auto& z : m.z) z = mobius(z, a, b, cc, d);
        for (auto& p : {P12, P13, P14}) {
            double w0 = w_bulk(p, c).value;
            CHECK(std::abs(w_bulk(p, m).value - w0) < 1e-9 * std::max(1.0, w0));
        }
    }
}

TEST_CASE("correlator route") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 10; ++i) {
        auto c = i == 0 ? kSquare : random_config(rng);
        for (auto& p : {P12, P13, P14}) {
            double wb = w_bulk(p, c).value;
            double wc = w_from_correlators(p, c, 1e-4);
            CHECK(rel(wc, wb) < 1e-3);
            CHECK(wc > 0);
            double shifted = w_from_correlators(p, c, 1e-4, {1.0, 1.0, 0});
            CHECK(std::abs(shifted - wc) < 1e-10);
        }
    }
    CHECK_THROWS_AS(w_from_correlators(P12, kSquare, 0.1), Error);
}

TEST_CASE("two-point log mass") {
    CHECK(two_point_log_mass(0, Complex(0.6, 0.8)) == doctest::Approx(0.0));
    CHECK(two_point_log_mass(0, std::numbers::e) == doctest::Approx(1 / (3 * pi)).epsilon(1e-14));
    double d = two_point_log_mass(0, 4.0) - two_point_log_mass(0, 2.0);
    CHECK(d == doctest::Approx(std::log(2.0) / (3 * pi)).epsilon(1e-14));
    CHECK_THROWS_AS(two_point_log_mass(0, 1, -1), Error);
}

TEST_CASE("boundary mass") {
    CHECK(w_boundary_at(-0.125) == doctest::Approx(0.10859152914060899).epsilon(1e-10));
    CHECK(w_boundary_at(-1e-6) == doctest::Approx(0.36755715660242894).epsilon(1e-10));
    CHECK(w_boundary_at(-3) == doctest::Approx(0.09644443768453817).epsilon(1e-10));
    CHECK(w_boundary_at(-100) == doctest::Approx(0.096225307494493026).epsilon(1e-10));
    double lead = -std::log(1e-6) / (12 * pi);
    CHECK(std::abs(w_boundary_at(-1e-6) / lead - 1) < 0.05);

    Complex z1(0, 1), z2(0, 2);
    double w = w_boundary(z1, z2).value;
    CHECK(w == doctest::Approx(0.10859152914060899).epsilon(1e-10));
    CHECK(std::abs(w_boundary(z1 + 0.7, z2 + 0.7).value - w) < 1e-9);
    CHECK(std::abs(w_boundary(3.0 * z1, 3.0 * z2).value - w) < 1e-9);
    CHECK(std::abs(w_boundary(-1.0 / z1, -1.0 / z2).value - w) < 1e-9);
    Complex a(0.3, 1.2), b(2, 0.4);
    CHECK(std::abs(w_boundary(-1.0 / a, -1.0 / b).value - w_boundary(a, b).value) < 1e-9);
}

TEST_CASE("spin-2 component kinematics") {
    Complex z3(1, 0), z4(0.2, 1.1);
    double c2 = 1 / (40 * pi), c1 = 1 / (24 * pi);
    auto exact = [&](Complex z1, Complex z3, Complex z4) {
        Complex z13 = z1 - z3, z14 = z1 - z4, z34 = z3 - z4;
        return 5.0 * (c2 * z34 * z34 / (z13 * z14 * z13 * z14) + c1 * z34 / (z13 * z14 * z14));
    };
    for (Complex z1 : {Complex(0, 0), Complex(-0.5, 0.3), Complex(0.4, -0.8)}) {
        Complex v = spin2_component(z1, z3, z4);
        Complex e = exact(z1, z3, z4);
        CHECK(std::abs(v - e) / std::abs(e) < 1e-6);
    }
    Complex z1(0.1, 0.1);
    double e1 = 1e-3 * std::abs(z1 - z4);
    Complex a = spin2_angular(z1, z3, z4, e1, 256), b = spin2_angular(z1, z3, z4, e1 / 2, 256);
    CHECK(std::abs(a) > 0);
    CHECK_THROWS_AS(spin2_component(z1, z3, z4, {1.0, 2.0, 256, true}), Error);
    CHECK_THROWS_AS(spin2_component(z1, z3, z4, {0.0, 2.0, 16, true}), Error);
}

TEST_CASE("stress two-point scaling") {
    Complex z1(0), z3(1);
    Complex t1 = ttilde_two_point(z1, z3) * std::pow(z1 - z3, 4);
    Complex t2 = ttilde_two_point(z1, 2.0 * z3) * std::pow(z1 - 2.0 * z3, 4);
    CHECK(std::abs(t1 - t2) / std::abs(t1) < 0.05);
    CHECK(std::abs(t1.imag()) < 0.05 * std::abs(t1));
    CHECK(t1.real() == doctest::Approx(-35 / (24 * pi)).epsilon(1e-4));
}
