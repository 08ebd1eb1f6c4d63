#include <cmath>
#include <vector>

#include "doctest.h"
#include "levyswarm/errors.hpp"
#include "levyswarm/hyper.hpp"

using namespace levyswarm;

namespace {

Grid2D circle_grid(int n) { return {n, n, 2.0 * M_PI, 2.0 * M_PI, BoundaryMode::periodic}; }

ClosureCoeffs transport_coeffs(double cc0, double cc1, double cc2, double c0 = 1.0) {
    ClosureCoeffs c;
    c.alpha = 1.5;
    c.c0 = c0;
    c.cc0 = cc0;
    c.cc1 = cc1;
    c.cc2 = cc2;
    return c;
}

HyperState uniform_state(const Grid2D& g, double density, double angle) {
    HyperState s(g);
    const Vec2 dir = unit_at(angle);
    for (std::size_t k = 0; k < s.u.v.size(); ++k) {
        s.u.v[k] = density;
        s.lambda.x[k] = dir.x;
        s.lambda.y[k] = dir.y;
    }
    return s;
}

bool bitwise_equal(const HyperState& a, const HyperState& b) {
    for (std::size_t k = 0; k < a.u.v.size(); ++k) {
        if (a.u.v[k] != b.u.v[k]) return false;
        if (a.lambda.x[k] != b.lambda.x[k]) return false;
        if (a.lambda.y[k] != b.lambda.y[k]) return false;
    }
    return true;
}

// quarter-turn: (x, y) -> (-y, x) on the periodic square, direction rotated too
HyperState rotate_quarter(const HyperState& s) {
    const Grid2D& g = s.u.grid;
    HyperState out(g);
    out.time = s.time;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const int ir = g.ny - 1 - j;
            const int jr = i;
            out.u.at(ir, jr) = s.u.at(i, j);
            const Vec2 v = s.lambda.at(i, j);
            out.lambda.set(ir, jr, {-v.y, v.x});
        }
    return out;
}

} // namespace

TEST_CASE("a uniform aligned swarm is bitwise stationary") {
    const Grid2D g = circle_grid(32);
    const ClosureCoeffs coeffs = transport_coeffs(0.5, 0.3, 0.2);
    // an angle whose cosine/sine are not exactly representable
    HyperState state = uniform_state(g, 0.8, 0.7);
    HyperStats stats;
    HyperState out = hyper_solve(state, coeffs, 0.02, 100 * 0.02, &stats);
    CHECK(bitwise_equal(out, state));
    CHECK(stats.steps == 100);
    CHECK(stats.max_mass_drift == 0.0);
}

TEST_CASE("one step against the discrete update formula") {
    // u = 1 + 0.1 sin y with Lambda = (1, 0): the density is constant along
    // the transport direction, so only Lambda turns, by the transverse
    // pressure term -(cc2/cc0) (du/dy) / u with the central-difference
    // derivative 0.1 (sin dy / dy) cos y
    const Grid2D g = circle_grid(64);
    const double cc0 = 0.5, cc1 = 0.3, cc2 = 0.2, dt = 0.02;
    const ClosureCoeffs coeffs = transport_coeffs(cc0, cc1, cc2);
    HyperState state(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            state.u.at(i, j) = 1.0 + 0.1 * std::sin(g.y_center(j));
            state.lambda.set(i, j, {1.0, 0.0});
        }
    HyperState out = hyper_step(state, coeffs, dt);

    const double diff_factor = std::sin(g.dy()) / g.dy();
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.y_center(j);
        const double dudy = 0.1 * diff_factor * std::cos(y);
        const double del = -dt * (cc2 / cc0) * dudy / (1.0 + 0.1 * std::sin(y));
        const double expect_x = 1.0 / std::hypot(1.0, del);
        const double expect_y = del / std::hypot(1.0, del);
        for (int i = 0; i < g.nx; ++i) {
            CHECK(std::abs(out.u.at(i, j) - state.u.at(i, j)) < 1e-15);
            CHECK(std::abs(out.lambda.at(i, j).x - expect_x) < 1e-13);
            CHECK(std::abs(out.lambda.at(i, j).y - expect_y) < 1e-13);
        }
    }
}

TEST_CASE("directions stay unit length after every step") {
    const Grid2D g = circle_grid(32);
    const ClosureCoeffs coeffs = transport_coeffs(0.4, 0.25, 0.15);
    HyperState state(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x_center(i), y = g.y_center(j);
            state.u.at(i, j) = 1.0 + 0.3 * std::cos(x) * std::sin(y);
            state.lambda.set(i, j, unit_at(0.4 * std::sin(x - y)));
        }
    for (int s = 0; s < 50; ++s) {
        state = hyper_step(state, coeffs, 0.02);
        for (std::size_t k = 0; k < state.lambda.x.size(); ++k)
            CHECK(std::abs(std::hypot(state.lambda.x[k], state.lambda.y[k]) - 1.0) < 1e-14);
    }
}

TEST_CASE("transport conserves mass to rounding") {
    const Grid2D g = circle_grid(32);
    const ClosureCoeffs coeffs = transport_coeffs(0.5, 0.3, 0.2);
    HyperState state(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x_center(i), y = g.y_center(j);
            state.u.at(i, j) = 1.0 + 0.4 * std::sin(x) * std::sin(y);
            state.lambda.set(i, j, unit_at(0.3 * std::cos(x)));
        }
    HyperStats stats;
    hyper_solve(state, coeffs, 0.02, 200 * 0.02, &stats);
    CHECK(stats.steps == 200);
    CHECK(stats.max_mass_drift < 1e-13);
    CHECK(stats.mass_final == doctest::Approx(stats.mass_initial).epsilon(1e-12));
}

TEST_CASE("the update is independent of alpha") {
    // alpha enters the density equation only; the transport step reads just
    // (c0, cc0, cc1, cc2), so changing alpha must not move a single bit
    const Grid2D g = circle_grid(32);
    HyperState state(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x_center(i), y = g.y_center(j);
            state.u.at(i, j) = 1.0 + 0.2 * std::cos(x + y);
            state.lambda.set(i, j, unit_at(0.5 * std::sin(y)));
        }
    ClosureCoeffs a = transport_coeffs(0.5, 0.3, 0.2);
    a.alpha = 1.3;
    ClosureCoeffs b = a;
    b.alpha = 1.9;
    HyperState out_a = hyper_step(state, a, 0.02);
    HyperState out_b = hyper_step(state, b, 0.02);
    CHECK(bitwise_equal(out_a, out_b));
}

TEST_CASE("quarter-turn rotation equivariance") {
    const Grid2D g = circle_grid(32);
    const ClosureCoeffs coeffs = transport_coeffs(0.5, 0.3, 0.2);
    HyperState state(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x_center(i), y = g.y_center(j);
            state.u.at(i, j) = 1.0 + 0.3 * std::sin(x) * std::cos(2.0 * y);
            state.lambda.set(i, j, unit_at(0.4 * std::cos(x) + 0.2 * std::sin(y)));
        }
    HyperState direct = state;
    for (int s = 0; s < 10; ++s) direct = hyper_step(direct, coeffs, 0.02);
    HyperState rotated = rotate_quarter(state);
    for (int s = 0; s < 10; ++s) rotated = hyper_step(rotated, coeffs, 0.02);
    const HyperState direct_rotated = rotate_quarter(direct);
    double worst = 0.0;
    for (std::size_t k = 0; k < rotated.u.v.size(); ++k) {
        worst = std::max(worst, std::abs(rotated.u.v[k] - direct_rotated.u.v[k]));
        worst = std::max(worst, std::abs(rotated.lambda.x[k] - direct_rotated.lambda.x[k]));
        worst = std::max(worst, std::abs(rotated.lambda.y[k] - direct_rotated.lambda.y[k]));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("the 1/u guard engages on empty cells and is counted") {
    const Grid2D g = circle_grid(32);
    const ClosureCoeffs coeffs = transport_coeffs(0.5, 0.3, 0.2);
    HyperState state(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            state.u.at(i, j) = i < g.nx / 2 ? 1.0 : 0.0;
            state.lambda.set(i, j, {1.0, 0.0});
        }
    HyperStats stats;
    hyper_step(state, coeffs, 0.01, &stats);
    CHECK(stats.floor_cells_last == g.size() / 2);
}

TEST_CASE("step validation") {
    const Grid2D g = circle_grid(32);
    HyperState state = uniform_state(g, 1.0, 0.0);

    // degenerate closure: no direction to transport
    CHECK_THROWS_AS(hyper_step(state, transport_coeffs(0.0, 0.3, 0.2), 0.01),
                    ValidationError);

    // CFL: c0 cc0 dt must stay under half a cell
    const ClosureCoeffs coeffs = transport_coeffs(1.0, 0.3, 0.2);
    const double h = g.dx();
    CHECK_THROWS_AS(hyper_step(state, coeffs, 0.51 * h), ValidationError);
    CHECK_NOTHROW(hyper_step(state, coeffs, 0.49 * h));

    // directions must be unit length on entry
    HyperState skewed = state;
    skewed.lambda.x[5] = 1.1;
    CHECK_THROWS_AS(hyper_step(skewed, coeffs, 0.01), ValidationError);

    // periodic grids only
    Grid2D walls = g;
    walls.boundary = BoundaryMode::neumann_mirror;
    HyperState walled = uniform_state(walls, 1.0, 0.0);
    CHECK_THROWS_AS(hyper_step(walled, coeffs, 0.01), ValidationError);
}

TEST_CASE("solve lands exactly on t_end with a shortened final step") {
    const Grid2D g = circle_grid(32);
    const ClosureCoeffs coeffs = transport_coeffs(0.5, 0.3, 0.2);
    HyperState state = uniform_state(g, 1.0, 0.3);
    HyperStats stats;
    HyperState out = hyper_solve(state, coeffs, 0.02, 0.07, &stats);
    CHECK(stats.steps == 4);
    CHECK(out.time == doctest::Approx(0.07).epsilon(1e-14));
}

TEST_CASE("normalize_lambda scales rows and rejects zero vectors") {
    const Grid2D g = circle_grid(32);
    VectorField2D lam(g);
    for (std::size_t k = 0; k < lam.x.size(); ++k) {
        lam.x[k] = 3.0;
        lam.y[k] = 4.0;
    }
    normalize_lambda(lam);
    CHECK(lam.x[7] == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(lam.y[7] == doctest::Approx(0.8).epsilon(1e-15));
    lam.x[3] = 0.0;
    lam.y[3] = 0.0;
    CHECK_THROWS_AS(normalize_lambda(lam), ValidationError);
}

TEST_CASE("sampled reorientation moments match the transported first moment") {
    RngStream rng(2024);

    // pure tumbling: no preferred direction survives
    ClosureCheckReport pure =
        closure_check(CircleDist::uniform(), 1.0, 1.0, 0.0, 200000, rng);
    CHECK(pure.pass);
    CHECK(std::abs(pure.expected_x) == 0.0);

    // pure alignment, von Mises kappa = 2 along +y: moment is (0, I1/I0)
    ClosureCheckReport aligned =
        closure_check(CircleDist::von_mises(2.0), 0.0, 0.0, 1.0, 200000, rng);
    CHECK(aligned.pass);
    CHECK(aligned.expected_y == doctest::Approx(0.6977746579640082).epsilon(1e-8));
    CHECK(std::abs(aligned.moment_y - 0.6977746579640082) < aligned.tol);

    // a 50/50 mixture halves the moment
    ClosureCheckReport mixed =
        closure_check(CircleDist::von_mises(2.0), 0.5, 1.0, 0.0, 200000, rng);
    CHECK(mixed.pass);
    CHECK(mixed.expected_x == doctest::Approx(0.5 * 0.6977746579640082).epsilon(1e-8));

    // direction length does not matter, only the direction
    ClosureCheckReport scaled =
        closure_check(CircleDist::von_mises(2.0), 0.0, 0.0, 2.5, 1000, rng);
    CHECK(scaled.expected_y == doctest::Approx(0.6977746579640082).epsilon(1e-8));

    CHECK_THROWS_AS(closure_check(CircleDist::uniform(), -0.1, 1.0, 0.0, 100, rng),
                    ValidationError);
    CHECK_THROWS_AS(closure_check(CircleDist::uniform(), 0.5, 0.0, 0.0, 100, rng),
                    ValidationError);
}
