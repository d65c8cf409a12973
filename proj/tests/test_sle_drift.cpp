#include <cmath>

#include "doctest.h"
#include "loopmass/error.hpp"
#include "loopmass/pde_check.hpp"
#include "loopmass/sle_drift.hpp"
#include "test_support.hpp"

using namespace loopmass;
using testsupport::kSquare;

TEST_CASE("chain sampling") {
    auto a = sample_chain(6, 1e-4, 0.01, 42, 7), b = sample_chain(6, 1e-4, 0.01, 42, 7);
    CHECK(a.driver == b.driver);
    CHECK(a.steps == 100);
    CHECK(a.driver[0] == 0);
    CHECK(sample_chain(6, 1e-4, 0.01, 42, 8).driver != a.driver);
    CHECK_THROWS_AS(sample_chain(6, 0, 0.01, 1), Error);
    CHECK_THROWS_AS(sample_chain(-1, 1e-4, 0.01, 1), Error);
    CHECK_THROWS_AS(sample_chain(6, 3e-3, 0.01, 1), Error);

    const int N = 10000;
    double s2 = 0, s4 = 0;
    for (int r = 0; r < N; ++r) {
        double u = sample_chain(6, 1e-3, 0.1, 9, std::uint64_t(r)).driver.back();
        s2 += u * u;
        s4 += u * u * u * u;
    }
    double var = s2 / N, se = std::sqrt((s4 / N - var * var) / N);
    CHECK(std::abs(var - 0.6) < 3 * se);
}

TEST_CASE("slit maps") {
    LoewnerChain zero{6, 1e-3, 1, 0, {0.0, 0.0}};
    auto id = evolve_points(zero, {Complex(0.3, 0.5)}, 0);
    CHECK(id[0].z == Complex(0.3, 0.5));
    Complex z = std::polar(1e3, 0.9);
    auto one = evolve_points(zero, {z});
    CHECK(std::abs(one[0].z - z - 2e-3 / z) < 1e-6 / std::norm(z) * 1e3);

    // capacity adds under composition
    LoewnerChain two{6, 1e-3, 2, 0, {0.0, 0.0, 0.0}};
    CHECK(hydrodynamic_defect(two, z) < 1e-9);
    auto c = sample_chain(6, 1e-4, 0.01, 3);
    CHECK(hydrodynamic_defect(c, z) < 1e-4);

    // exact slit from the origin: i y with y < 2 sqrt(t) is swallowed
    auto sw = evolve_points(zero, {Complex(0, 0.01), Complex(0, 1), Complex(0, -1), Complex(2, 0)});
    CHECK(sw[0].swallowed);
    CHECK_FALSE(sw[1].swallowed);
    CHECK(sw[1].z.imag() > 0);
    CHECK(sw[2].z == std::conj(sw[1].z));
    CHECK(sw[3].z.imag() == 0);
    CHECK(sw[3].z.real() > 2);
}

TEST_CASE("predicted drift is stencil-stable") {
    double l1 = laplacian_z1(w_subtracted, kSquare, 2e-3), l2 = laplacian_z1(w_subtracted, kSquare, 1e-3);
    CHECK(std::abs(l1 - l2) < 1e-6);
    CHECK(1.5 * l2 == doctest::Approx(0.016314).epsilon(1e-4));
}

TEST_CASE("drift estimate is deterministic and thread-independent") {
    DriftOptions o;
    o.runs = 400;
    auto a = drift_estimate(kSquare, o);
    o.threads = 3;
    auto b = drift_estimate(kSquare, o);
    CHECK(a.empirical_drift == b.empirical_drift);
    CHECK(a.stderr == b.stderr);
    CHECK(a.raw_drift == b.raw_drift);
    CHECK(a.stderr > 0);
    CHECK(a.n_runs + int(a.censored_runs.size()) == 400);
    o.runs = 50;
    CHECK_THROWS_AS(drift_estimate(kSquare, o), Error);
}

TEST_CASE("censoring cap") {
    // z2 sits right next to the driver, so most runs swallow it
    BulkConfig c{{Complex(0, 0), Complex(0.01, 0), Complex(1, 1), Complex(0, 1)}};
    DriftOptions o;
    o.runs = 200;
    try {
        drift_estimate(c, o);
        FAIL("expected TooManySwallowed");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooManySwallowed);
    }
}

TEST_CASE("drift at kappa 6 against the Laplacian") {
    DriftOptions o;
    o.runs = 4000;
    auto r = drift_estimate(kSquare, o);
    CHECK(std::abs(r.z_score()) < 5);
    CHECK(r.max_hydrodynamic_defect < 1e-4);
    o.kappa = 8.0 / 3;
    auto n = drift_estimate(kSquare, o);
    CHECK(std::abs(n.z_score()) > 5);
}
