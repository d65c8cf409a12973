#include <cmath>
#include <numbers>

#include "doctest.h"
#include "loopmass/coulomb_params.hpp"
#include "loopmass/error.hpp"

using namespace loopmass;
using std::numbers::pi;

TEST_CASE("dilute branch anchor points") {
    CHECK(params_from_n(0).kappa == doctest::Approx(8.0 / 3).epsilon(1e-14));
    CHECK(params_from_n(1).kappa == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(params_from_n(2).kappa == doctest::Approx(4.0).epsilon(1e-14));
    CHECK_THROWS_AS(params_from_n(-0.1), Error);
    CHECK_THROWS_AS(params_from_n(2.1), Error);
}

TEST_CASE("parameter invariants over [0, 2]") {
    double prev = 0;
    for (int i = 0; i <= 99; ++i) {
        double n = 2.0 * i / 99;
        auto p = params_from_n(n);
        CHECK(std::abs(2 * std::cos(6 * p.chi) - n) < 1e-12);
        CHECK(std::abs(p.g - (1 - 6 * p.chi / pi)) < 1e-12);
        CHECK(std::abs(p.kappa - 4 / p.g) < 1e-12);
        CHECK(p.kappa >= 8.0 / 3 - 1e-12);
        CHECK(p.kappa <= 4 + 1e-12);
        CHECK(p.chi >= -pi / 12 - 1e-12);
        CHECK(p.chi <= 1e-12);
        if (i > 0) CHECK(p.kappa > prev);
        prev = p.kappa;
        double c = central_charge(p.kappa);
        if (i == 0) CHECK(std::abs(c) < 1e-14);
        else CHECK(c > 0);
        CHECK(std::abs(twist_dimension(p) - x_general(n, -n)) < 1e-12);
        CHECK(std::abs(twist_dimension(p) - 2 * kac_weights(p.kappa).h2) < 1e-14);
    }
}

TEST_CASE("small-n kappa slope") {
    double n = 1e-6;
    CHECK((params_from_n(n).kappa - 8.0 / 3) / n == doctest::Approx(8 / (9 * pi)).epsilon(1e-5));
}

TEST_CASE("twist dimension") {
    CHECK(std::abs(twist_dimension(params_from_n(0))) < 1e-15);
    CHECK(twist_dimension(params_from_n(1)) == doctest::Approx(0.125).epsilon(1e-14));
    double n = 1e-6;
    CHECK(twist_dimension(params_from_n(n)) / n == doctest::Approx(1 / (3 * pi)).epsilon(1e-5));
}

TEST_CASE("x_general") {
    for (double n : {0.0, 0.3, 1.0, 1.7}) CHECK(std::abs(x_general(n, n)) < 1e-15);
    CHECK(x_general(1, -1) == doctest::Approx(0.125).epsilon(1e-13));
    for (double n : {0.1, 0.5, 1.0}) {
        double s = std::asin(n / 2);
        CHECK(x_general(n, -n) == doctest::Approx(2 * s / (3 * pi - 2 * s)).epsilon(1e-13));
        CHECK(x_general(n, -n) == doctest::Approx(3 / (2 * params_from_n(n).g) - 1).epsilon(1e-12));
    }
    CHECK_THROWS_AS(x_general(0.5, 2.5), Error);
}

TEST_CASE("central charge") {
    CHECK(central_charge(8.0 / 3) == doctest::Approx(0.0));
    CHECK(central_charge(3) == doctest::Approx(0.5).epsilon(1e-15));
    double f3 = central_charge(params_from_n(1e-3).kappa) / 1e-3;
    double f4 = central_charge(params_from_n(1e-4).kappa) / 1e-4;
    double slope = (10 * f4 - f3) / 9;
    CHECK(std::abs(slope - 5 / (3 * pi)) / (5 / (3 * pi)) < 1e-4);
}
