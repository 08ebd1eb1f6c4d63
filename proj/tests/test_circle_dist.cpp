#include <cmath>

#include "doctest.h"
#include "levyswarm/circle_dist.hpp"
#include "levyswarm/quadrature.hpp"
#include "levyswarm/rng.hpp"
#include "levyswarm/special.hpp"

using namespace levyswarm;

TEST_CASE("densities are normalized") {
    for (double kappa : {0.0, 0.5, 2.0, 10.0, 100.0, 1e4}) {
        CircleDist d = kappa == 0.0 ? CircleDist::uniform() : CircleDist::von_mises(kappa);
        QuadResult q = integrate([&](double t) { return d.density(t); }, -M_PI, M_PI);
        CHECK(q.converged);
        CHECK(q.value == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("mean cosine matches the Bessel ratio") {
    // I1(2)/I0(2) = 1.590636854637329 / 2.279585302336067
    const double expected = std::cyl_bessel_i(1, 2.0) / std::cyl_bessel_i(0, 2.0);
    CHECK(expected == doctest::Approx(0.6977746579640082).epsilon(1e-8));
    CHECK(CircleDist::von_mises(2.0).mean_cosine() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(CircleDist::uniform().mean_cosine() == 0.0);
}

TEST_CASE("scaled bessels agree with std implementation in the safe range") {
    for (double x : {0.5, 2.0, 10.0, 50.0, 300.0}) {
        CHECK(bessel_i0e(x) ==
              doctest::Approx(std::exp(-x) * std::cyl_bessel_i(0, x)).epsilon(1e-12));
        CHECK(bessel_i1e(x) ==
              doctest::Approx(std::exp(-x) * std::cyl_bessel_i(1, x)).epsilon(1e-12));
    }
    // both sides of the series/asymptotic switch, pinned to external references
    CHECK(bessel_i0e(599.9) == doctest::Approx(0.016291504904956976).epsilon(1e-10));
    CHECK(bessel_i0e(600.1) == doctest::Approx(0.016288788747316513).epsilon(1e-10));
    CHECK(bessel_i1e(599.9) == doctest::Approx(0.016277920719667393).epsilon(1e-10));
    CHECK(bessel_i1e(600.1) == doctest::Approx(0.016275211355257620).epsilon(1e-10));
    CHECK(bessel_i2e(599.9) == doctest::Approx(0.016237236124427994).epsilon(1e-10));
    CHECK(bessel_i2e(600.1) == doctest::Approx(0.016234547083076367).epsilon(1e-10));
    // huge concentration stays finite
    CHECK(std::isfinite(bessel_i0e(1e8)));
}

TEST_CASE("sampled moments match the density") {
    for (double kappa : {0.0, 2.0, 50.0}) {
        CircleDist d = kappa == 0.0 ? CircleDist::uniform() : CircleDist::von_mises(kappa);
        RngStream rng(7, 0, static_cast<uint64_t>(kappa));
        const int n = 200000;
        double sc = 0.0, ss = 0.0;
        for (int i = 0; i < n; ++i) {
            const double t = d.sample(rng);
            CHECK(t >= -M_PI);
            CHECK(t <= M_PI);
            sc += std::cos(t);
            ss += std::sin(t);
        }
        CHECK(std::abs(sc / n - d.mean_cosine()) < 0.01);
        CHECK(std::abs(ss / n) < 0.01); // symmetric about 0
    }
}

TEST_CASE("huge concentration collapses onto the mean direction") {
    CircleDist d = CircleDist::von_mises(1e6);
    RngStream rng(11);
    for (int i = 0; i < 1000; ++i) {
        CHECK(std::abs(d.sample(rng)) < 0.02);
    }
}
