#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "levyswarm/coefficients.hpp"
#include "levyswarm/errors.hpp"
#include "levyswarm/experiments.hpp"

using namespace levyswarm;
namespace fs = std::filesystem;

TEST_CASE("benchmark scenario preset") {
    const EPuckScenario sc = epuck_scenario();
    CHECK(sc.params.arena.lx == 200.0);
    CHECK(sc.params.arena.ly == 160.0);
    CHECK(sc.params.rho_diam == 7.5);
    CHECK(sc.params.c == 3.0);
    CHECK(sc.params.zeta == 1.0);
    CHECK(sc.params.nu1 == 0.0);
    CHECK(sc.params.sigma0 == 1.0);
    CHECK(sc.params.n_robots == 20);
    CHECK(sc.epsilon == 0.005);
    CHECK(sc.gamma == 0.5);
    // c0 = c eps^gamma
    CHECK(sc.params.c0 == doctest::Approx(3.0 * std::sqrt(0.005)).epsilon(1e-15));
    CHECK(sc.params.c0 == doctest::Approx(0.21213203435596426).epsilon(1e-14));
    REQUIRE(sc.alpha_list.size() == 4);
    CHECK(sc.alpha_list[0] == 1.3);
    CHECK(sc.alpha_list[3] == 1.9);

    // the preset passes its own scaling admissibility check
    ScalingParams s = validate_scaling(1.3, sc.gamma, sc.epsilon);
    CHECK(s.mu == doctest::Approx(7.0 / 6.0).epsilon(1e-12));
    CHECK(s.xi_minus_theta == doctest::Approx(-2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("two clusters carry exactly twice the single-blob mass") {
    Grid2D g{64, 52, 200.0, 160.0, BoundaryMode::neumann_mirror};
    ScalarField2D single = initial_condition(g, 7.5, 10);
    ScalarField2D twin = two_cluster_initial_condition(g, 7.5, 10);
    CHECK(twin.integral() == doctest::Approx(2.0 * single.integral()).epsilon(1e-12));
    CHECK(twin.min_value() >= 0.0);

    // blobs sit at quarter points of the long axis
    int imax = 0, jmax = 0;
    double best = -1.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx / 2; ++i)
            if (twin.at(i, j) > best) {
                best = twin.at(i, j);
                imax = i;
                jmax = j;
            }
    CHECK(std::abs(g.x_center(imax) - 50.0) <= g.dx());
    CHECK(std::abs(g.y_center(jmax) - 80.0) <= g.dy());
}

TEST_CASE("doubling the swarm doubles the early-time coverage") {
    // two far-apart clusters of N robots vs one cluster of N: while the
    // covered regions stay disjoint, the coverage functional is additive
    Grid2D g{64, 52, 200.0, 160.0, BoundaryMode::neumann_mirror};
    ModelParams p = epuck_scenario().params;
    p.alpha = 1.3;

    ScalarField2D u_single = initial_condition(g, p.rho_diam, 10);
    ScalarField2D u_twin = two_cluster_initial_condition(g, p.rho_diam, 10);

    // at t = 0 the twin blobs are exact translates of the single one, so the
    // covered fraction is exactly doubled
    const double rho_bar = 1.0 / g.area();
    const double f1 = covered_mass(u_single, rho_bar);
    const double f2 = covered_mass(u_twin, rho_bar);
    CHECK(f2 == doctest::Approx(2.0 * f1).epsilon(1e-12));

    // after a short evolution the proportionality is approximate: the fat
    // tails of the two clusters begin to merge
    SolverConfig cfg;
    cfg.dt = 0.5;
    cfg.t_end = 0.5;
    cfg.coeffs = compute_closure(p);
    cfg.mobility_mode = MobilityMode::nonlinear;
    cfg.linear_solver_tol = 1e-8;
    auto covered_after = [&](const ScalarField2D& u0) {
        FracDiffusionSolver solver(g, cfg);
        solver.solve(u0);
        return solver.coverage_curve().covered.back();
    };
    const double e1 = covered_after(u_single);
    const double e2 = covered_after(u_twin);
    CHECK(e2 / e1 == doctest::Approx(2.0).epsilon(0.10));
}

TEST_CASE("coefficient report is valid json with the right numbers") {
    ModelParams p = epuck_scenario().params;
    p.alpha = 1.3;
    const std::string doc = emit_coefficients(p, 0.005, 0.5);
    const nlohmann::json j = nlohmann::json::parse(doc);

    CHECK(j["input"]["alpha"].get<double>() == 1.3);
    CHECK(j["input"]["dim"].get<int>() == 2);
    CHECK(j["coefficients"]["c_alpha"].get<double>() ==
          doctest::Approx(diffusion_constant(p)).epsilon(1e-13));
    CHECK(j["coefficients"]["f_const"].get<double>() ==
          doctest::Approx(mobility_terms(p).f_const).epsilon(1e-13));
    CHECK(j["scaling"]["mu"].get<double>() == doctest::Approx(7.0 / 6.0).epsilon(1e-12));
    CHECK(j["scaling"]["eta"].get<double>() == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(j.contains("formulas"));
    CHECK(j["formulas"].contains("c_alpha"));

    // pure tumbling: no alignment numerator
    CHECK(j["coefficients"]["g_slope"].get<double>() == 0.0);
}

TEST_CASE("cross-validation smoke run on a reduced budget") {
    ModelParams p = epuck_scenario().params;
    p.alpha = 1.3;

    XvalOptions opt;
    opt.n_walkers = 10000;
    opt.fine_nx = 64;
    opt.coarse_nx = 32;
    opt.histogram_nx = 8;
    opt.dt_pde = 1e-3;
    opt.checkpoints = {0.02};
    opt.seed = 1;
    opt.threads = 2;
    opt.threshold = 0.25;        // 1e4 walkers: histogram noise alone is ~0.06
    opt.control_threshold = 0.05;
    opt.t0_threshold = 0.05;

    XvalReport rep = run_cross_validation(p, 0.005, 0.5, opt);
    CHECK(rep.scaling_ok);
    CHECK(rep.alpha == 1.3);
    CHECK(rep.micro_speed == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.micro_run_scale ==
          doctest::Approx(std::pow(0.005, 7.0 / 6.0)).epsilon(1e-12));
    CHECK(rep.diffusion_constant ==
          doctest::Approx(diffusion_constant(p) / mobility_terms(p).f_const)
              .epsilon(1e-12));
    REQUIRE(rep.micro_vs_pde.size() == 1);
    REQUIRE(rep.control_arm.size() == 1);
    CHECK(rep.t0_distance < opt.t0_threshold);
    CHECK(rep.control_arm[0] < opt.control_threshold);
    CHECK(rep.micro_vs_pde[0] < opt.threshold);
    CHECK(rep.pass);
}

TEST_CASE("cross-validation rejects inconsistent setups") {
    ModelParams p = epuck_scenario().params;
    p.alpha = 1.3;
    XvalOptions opt;
    opt.n_walkers = 100;  // too few for a meaningful histogram
    CHECK_THROWS_AS(run_cross_validation(p, 0.005, 0.5, opt), ValidationError);

    XvalOptions bad_grid;
    bad_grid.histogram_nx = 7;  // does not divide the PDE grids
    CHECK_THROWS_AS(run_cross_validation(p, 0.005, 0.5, bad_grid), ValidationError);

    XvalOptions bad_t;
    bad_t.checkpoints = {0.0505};  // not a multiple of dt_pde
    bad_t.dt_pde = 1e-2;
    CHECK_THROWS_AS(run_cross_validation(p, 0.005, 0.5, bad_t), ValidationError);

    ModelParams aligned = p;
    aligned.zeta = 0.5;
    XvalOptions opt_ok;
    CHECK_THROWS_AS(run_cross_validation(aligned, 0.005, 0.5, opt_ok), ValidationError);
}

TEST_CASE("coverage study smoke run with an early readout level") {
    EPuckScenario sc = epuck_scenario();
    CoverageStudyOptions opt;
    opt.dt = 4.0;
    opt.t_cap = 600.0;
    opt.reference_level = 0.05;  // reached within a few steps
    opt.linear_solver_tol = 1e-8;

    const fs::path dir = fs::temp_directory_path() / "levyswarm_cov_smoke";
    fs::remove_all(dir);
    opt.out_dir = dir.string();

    CoverageStudy study = run_coverage_study(sc, {1.7, 1.9}, {20}, opt);
    CHECK(study.reference_alpha == 1.9);
    REQUIRE(study.runs.size() == 2);
    for (const CoverageRun& run : study.runs) {
        CHECK(run.ok);
        CHECK(run.times.size() == run.covered.size());
        CHECK(run.times.size() == run.averaged.size());
        CHECK(run.covered.front() > 0.0);
        CHECK(run.covered.back() <= 1.0 + 1e-12);
    }
    REQUIRE(study.reference_times.size() == 1);
    CHECK(study.reference_times[0] > 0.0);
    CHECK(study.reference_times[0] <= opt.t_cap);
    REQUIRE(study.at_reference.size() == 1);
    REQUIRE(study.at_reference[0].size() == 2);

    // both runs sampled out to the shared readout time
    for (const CoverageRun& run : study.runs)
        CHECK(run.times.back() == doctest::Approx(study.reference_times[0]).epsilon(1e-9));

    CHECK(fs::exists(dir / "coverage.csv"));
    CHECK(fs::exists(dir / "summary.csv"));
    CHECK(fs::exists(dir / "manifest.json"));

    // the combined table has the long-format header
    std::ifstream table(dir / "coverage.csv");
    std::string header;
    std::getline(table, header);
    CHECK(header == "alpha,n_robots,t,covered_fraction,averaged_fraction");

    // manifest parses and echoes the sweep
    std::ifstream mf(dir / "manifest.json");
    const nlohmann::json j = nlohmann::json::parse(mf);
    CHECK(j["reference"]["alpha"].get<double>() == 1.9);
    CHECK(j["scenario"]["arena_lx"].get<double>() == 200.0);
    fs::remove_all(dir);
}
