#include <cmath>
#include <vector>

#include "doctest.h"
#include "levyswarm/errors.hpp"
#include "levyswarm/fracpde.hpp"

using namespace levyswarm;

namespace {

// coefficient bundle with a hand-picked diffusion constant and mobility line
ClosureCoeffs synthetic_coeffs(double alpha, double c_alpha, double f_const,
                               double f_slope) {
    ClosureCoeffs c;
    c.alpha = alpha;
    c.c_alpha = c_alpha;
    c.f_const = f_const;
    c.f_slope = f_slope;
    return c;
}

SolverConfig base_config(double alpha, double dt, double t_end, MobilityMode mode) {
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.coeffs = synthetic_coeffs(alpha, 1.0, 1.0, 0.0);
    cfg.mobility_mode = mode;
    return cfg;
}

Grid2D circle_grid(int n) { return {n, n, 2.0 * M_PI, 2.0 * M_PI, BoundaryMode::periodic}; }

ScalarField2D one_plus_cos(const Grid2D& g, int k, double amp) {
    ScalarField2D u(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) u.at(i, j) = 1.0 + amp * std::cos(k * g.x_center(i));
    return u;
}

ScalarField2D lumpy_density(const Grid2D& g) {
    ScalarField2D u(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x_center(i), y = g.y_center(j);
            u.at(i, j) = 1.0 + 0.4 * std::cos(x) * std::sin(2.0 * y) +
                         0.3 * std::sin(x + y);
        }
    return u;
}

} // namespace

TEST_CASE("one implicit step damps a mode by 1/(1 + dt k^alpha)") {
    // D = c_alpha / f_const = 1, dt = 0.1, mode k = 1: amplification 1/1.1
    const Grid2D g = circle_grid(64);
    SolverConfig cfg = base_config(1.5, 0.1, 0.1, MobilityMode::constant);
    FracDiffusionSolver solver(g, cfg);
    ScalarField2D u = one_plus_cos(g, 1, 0.5);
    ScalarField2D out = solver.step_implicit(u);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            worst = std::max(worst, std::abs(out.at(i, j) -
                                             (1.0 + (0.5 / 1.1) * std::cos(g.x_center(i)))));
    CHECK(worst < 1e-12);
}

TEST_CASE("a constant density is an exact equilibrium") {
    const Grid2D g = circle_grid(32);
    for (MobilityMode mode : {MobilityMode::constant, MobilityMode::nonlinear}) {
        SolverConfig cfg = base_config(1.5, 0.05, 0.5, mode);
        cfg.coeffs.f_slope = 0.5;
        FracDiffusionSolver solver(g, cfg);
        ScalarField2D u(g);
        for (double& v : u.v) v = 0.7;
        Trajectory traj = solver.solve(u);
        CHECK(traj.fields.back().linf_distance(u) < 1e-12);
    }
}

TEST_CASE("generator on a single mode matches the symbol") {
    const Grid2D g = circle_grid(64);
    SolverConfig cfg = base_config(1.7, 0.1, 0.1, MobilityMode::constant);
    cfg.coeffs.c_alpha = 0.3;
    cfg.coeffs.f_const = 0.6;  // D = 0.5
    FracDiffusionSolver solver(g, cfg);
    ScalarField2D u = one_plus_cos(g, 2, 1.0);
    ScalarField2D lu = solver.apply_generator(u);
    const double lam = 0.5 * std::pow(2.0, 1.7);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            worst = std::max(worst, std::abs(lu.at(i, j) + lam * std::cos(2.0 * g.x_center(i))));
    CHECK(worst < 1e-11);
}

TEST_CASE("mass is conserved in both mobility modes") {
    const Grid2D g = circle_grid(32);
    for (MobilityMode mode : {MobilityMode::constant, MobilityMode::nonlinear}) {
        SolverConfig cfg = base_config(1.4, 0.02, 0.4, mode);
        cfg.coeffs.f_slope = 0.8;
        cfg.linear_solver_tol = 1e-12;
        FracDiffusionSolver solver(g, cfg);
        Trajectory traj = solver.solve(lumpy_density(g));
        CHECK(traj.stats.steps == 20);
        CHECK(traj.stats.max_mass_drift < 1e-12);
        CHECK(traj.stats.mass_final ==
              doctest::Approx(traj.stats.mass_initial).epsilon(1e-12));
    }
}

TEST_CASE("implicit stepping converges at first order in dt") {
    const Grid2D g = circle_grid(32);
    const double t_end = 0.2;
    auto run = [&](double dt) {
        SolverConfig cfg = base_config(1.5, dt, t_end, MobilityMode::nonlinear);
        cfg.coeffs.f_slope = 0.5;
        cfg.linear_solver_tol = 1e-12;
        FracDiffusionSolver solver(g, cfg);
        return solver.solve(lumpy_density(g)).fields.back();
    };
    ScalarField2D ref = run(0.000625);
    const double e1 = run(0.01).linf_distance(ref);
    const double e2 = run(0.005).linf_distance(ref);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("alpha = 2 tracks an independent five-point heat solver") {
    // classical heat equation du/dt = D lap u, D = 0.5, integrated explicitly
    // with second-order centered differences as the reference
    const Grid2D g = circle_grid(64);
    const double D = 0.5, t_end = 0.1;

    ScalarField2D ref = lumpy_density(g);
    const double h = g.dx();
    const double dt_ref = 0.2 * h * h / (4.0 * D);
    const int n_ref = static_cast<int>(std::ceil(t_end / dt_ref));
    const double dt_used = t_end / n_ref;
    for (int s = 0; s < n_ref; ++s) {
        ScalarField2D next = ref;
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int ip = (i + 1) % g.nx, im = (i + g.nx - 1) % g.nx;
                const int jp = (j + 1) % g.ny, jm = (j + g.ny - 1) % g.ny;
                const double lap = (ref.at(ip, j) + ref.at(im, j) + ref.at(i, jp) +
                                    ref.at(i, jm) - 4.0 * ref.at(i, j)) /
                                   (h * h);
                next.at(i, j) = ref.at(i, j) + dt_used * D * lap;
            }
        ref = next;
    }

    SolverConfig cfg = base_config(2.0, 1e-4, t_end, MobilityMode::constant);
    cfg.coeffs.c_alpha = D;
    FracDiffusionSolver solver(g, cfg);
    ScalarField2D out = solver.solve(lumpy_density(g)).fields.back();

    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < out.v.size(); ++k) {
        const double d = out.v[k] - ref.v[k];
        num += d * d;
        den += ref.v[k] * ref.v[k];
    }
    CHECK(std::sqrt(num / den) < 0.01);
}

TEST_CASE("nonlinear mobility slows spreading where density is high") {
    // F(u) = f_const + f_slope u grows with u, so the nonlinear run keeps a
    // taller peak than the constant-F run after the same time
    const Grid2D g = circle_grid(64);
    ScalarField2D u0(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double dx = g.x_center(i) - M_PI, dy = g.y_center(j) - M_PI;
            u0.at(i, j) = 5.0 * std::exp(-(dx * dx + dy * dy));
        }
    auto peak_after = [&](MobilityMode mode) {
        SolverConfig cfg = base_config(1.5, 0.01, 0.2, mode);
        cfg.coeffs.f_slope = 2.0;
        FracDiffusionSolver solver(g, cfg);
        return solver.solve(u0).fields.back().max_value();
    };
    CHECK(peak_after(MobilityMode::nonlinear) > 1.02 * peak_after(MobilityMode::constant));
}

TEST_CASE("initial condition blob profile") {
    Grid2D g{64, 52, 200.0, 160.0, BoundaryMode::neumann_mirror};
    ScalarField2D u0 = initial_condition(g, 7.5, 20);
    // center value 1.2 - 0.2 = 1 at the cell nearest the middle
    double best = 1e9;
    double center_val = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = std::hypot(g.x_center(i) - 100.0, g.y_center(j) - 80.0);
            if (d < best) {
                best = d;
                center_val = u0.at(i, j);
            }
        }
    CHECK(center_val == doctest::Approx(1.0).epsilon(5e-2));
    // support radius sqrt(rho n ln 6): inside positive, outside zero
    const double r_support = std::sqrt(7.5 * 20.0 * std::log(6.0));
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double d = std::hypot(g.x_center(i) - 100.0, g.y_center(j) - 80.0);
            if (d < r_support - 3.0) CHECK(u0.at(i, j) > 0.0);
            if (d > r_support + 3.0) CHECK(u0.at(i, j) == 0.0);
        }
    // normalized variant has unit mass
    ScalarField2D un = initial_condition(g, 7.5, 20, true);
    CHECK(un.integral() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coverage of simple profiles") {
    Grid2D g{32, 32, 1.0, 1.0, BoundaryMode::periodic};
    const double rho_bar = 2.0;

    // density everywhere at or above the spread-out level covers everything
    ScalarField2D full(g);
    for (double& v : full.v) v = 2.5;
    CHECK(covered_mass(full, rho_bar) == doctest::Approx(rho_bar * g.area()).epsilon(1e-13));

    // all mass piled on half the domain at 2 rho_bar covers half
    ScalarField2D half(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx / 2; ++i) half.at(i, j) = 2.0 * rho_bar;
    CHECK(covered_mass(half, rho_bar) ==
          doctest::Approx(0.5 * rho_bar * g.area()).epsilon(1e-13));
}

TEST_CASE("coverage target level is one over the domain area") {
    // a constant field above the uniform level covers the whole domain: the
    // fraction pins at 1 regardless of how much mass is present
    Grid2D g{32, 32, 1.0, 1.0, BoundaryMode::periodic};
    SolverConfig cfg = base_config(1.5, 0.05, 0.2, MobilityMode::constant);
    FracDiffusionSolver solver(g, cfg);
    ScalarField2D u(g);
    for (double& v : u.v) v = 3.0;
    solver.solve(u);
    const CoverageCurve& curve = solver.coverage_curve();
    for (double c : curve.covered) CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
    for (double c : curve.averaged) CHECK(c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("running time average by trapezoid") {
    Grid2D g{16, 16, 1.0, 1.0, BoundaryMode::periodic};
    CoverageAccumulator acc(10.0);  // rho_bar far above the data: covered = mass
    ScalarField2D u(g);
    for (double& v : u.v) v = 1.0;   // mass 1
    acc.add(0.0, u);
    for (double& v : u.v) v = 3.0;   // mass 3
    acc.add(1.0, u);
    for (double& v : u.v) v = 3.0;
    acc.add(2.0, u);
    const CoverageCurve& c = acc.curve();
    CHECK(c.covered[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(c.covered[1] == doctest::Approx(3.0).epsilon(1e-13));
    // integral to t=1 is 2 (trapezoid), so the average is 2; to t=2 it is 5/2
    CHECK(c.averaged[1] == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(c.averaged[2] == doctest::Approx(2.5).epsilon(1e-13));
}

TEST_CASE("solver rejects bad inputs") {
    const Grid2D g = circle_grid(32);
    SolverConfig cfg = base_config(1.5, 0.1, 1.0, MobilityMode::constant);
    FracDiffusionSolver solver(g, cfg);

    ScalarField2D negative(g);
    negative.at(2, 2) = -1.0;
    CHECK_THROWS_AS(solver.solve(negative), ValidationError);

    SolverConfig bad = cfg;
    bad.dt = 0.0;
    CHECK_THROWS_AS(FracDiffusionSolver(g, bad), ValidationError);

    // a vanishing mobility denominator is a solver-time failure
    SolverConfig flat = cfg;
    flat.coeffs.f_const = 0.0;
    flat.coeffs.f_slope = 0.0;
    FracDiffusionSolver singular(g, flat);
    ScalarField2D ok(g);
    for (double& v : ok.v) v = 1.0;
    CHECK_THROWS_AS(singular.step_implicit(ok), SolverError);
}

TEST_CASE("trajectory snapshots honor store_every") {
    const Grid2D g = circle_grid(32);
    SolverConfig cfg = base_config(1.5, 0.1, 1.0, MobilityMode::constant);
    cfg.store_every = 2;
    FracDiffusionSolver solver(g, cfg);
    Trajectory traj = solver.solve(one_plus_cos(g, 1, 0.3));
    // steps at t = 0, .2, .4, .6, .8, 1.0
    CHECK(traj.times.size() == 6);
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-12));
}
