#include "levyswarm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>
#include <sstream>

#include "levyswarm/csv.hpp"
#include "levyswarm/errors.hpp"
#include "levyswarm/levy.hpp"
#include "levyswarm/manifest.hpp"
#include "levyswarm/microsim.hpp"

namespace levyswarm {

namespace fs = std::filesystem;

EPuckScenario epuck_scenario() {
    EPuckScenario s;
    s.params.alpha = 1.5;
    s.params.sigma0 = 1.0;
    s.params.c = 3.0;
    s.params.c0 = 3.0 * std::pow(0.005, 0.5);
    s.params.zeta = 1.0;
    s.params.nu1 = 0.0;
    s.params.ell = 0.0;
    s.params.kappa_tumble = 0.0;
    s.params.kappa_align = 0.0;
    s.params.rho_diam = 7.5;
    s.params.n_robots = 20;
    s.params.arena = Rect{200.0, 160.0};
    return s;
}

// ---------------------------------------------------------------------------
// coverage study

namespace {

std::string alpha_tag(double alpha) {
    std::ostringstream os;
    os << alpha;
    return os.str();
}

// step the density and accumulate the covered-area fraction (uniform target
// level 1/|domain|); stops at t_stop, or as soon as the running average
// reaches stop_level (if >= 0)
CoverageRun run_curve(const Grid2D& grid, const ModelParams& params,
                      const CoverageStudyOptions& options, double t_stop,
                      double stop_level) {
    CoverageRun run;
    run.alpha = params.alpha;
    run.n_robots = params.n_robots;
    try {
        const ClosureCoeffs coeffs = compute_closure(params);
        SolverConfig config;
        config.dt = options.dt;
        config.t_end = t_stop;
        config.coeffs = coeffs;
        config.mobility_mode = options.mobility_mode;
        config.linear_solver_tol = options.linear_solver_tol;

        ScalarField2D u = initial_condition(grid, params.rho_diam, params.n_robots);
        run.total_mass = u.integral();
        CoverageAccumulator acc(1.0 / grid.area());

        FracDiffusionSolver solver(grid, config);
        acc.add(0.0, u);
        int step = 0;
        double t = 0.0;
        while (t < t_stop - 1e-9) {
            const double h = std::min(options.dt, t_stop - t);
            u = solver.step_implicit(u, h);
            ++step;
            t = step * options.dt < t_stop ? step * options.dt : t_stop;
            acc.add(t, u);
            if (stop_level >= 0.0 && acc.curve().averaged.back() >= stop_level)
                break;
        }
        const CoverageCurve& curve = acc.curve();
        run.times = curve.times;
        run.covered = curve.covered;
        run.averaged = curve.averaged;
        run.ok = true;
    } catch (const std::exception& e) {
        run.ok = false;
        run.error = e.what();
    }
    return run;
}

void write_coverage_outputs(const CoverageStudy& study, const EPuckScenario& scenario,
                            const CoverageStudyOptions& options) {
    const fs::path root(options.out_dir);
    fs::create_directories(root / "runs");

    CsvWriter long_table(
        (root / "coverage.csv").string(),
        {"alpha", "n_robots", "t", "covered_fraction", "averaged_fraction"});
    for (const CoverageRun& run : study.runs) {
        if (!run.ok) continue;
        for (std::size_t k = 0; k < run.times.size(); ++k)
            long_table.row({run.alpha, static_cast<double>(run.n_robots), run.times[k],
                            run.covered[k], run.averaged[k]});
    }
    long_table.close();

    CsvWriter summary((root / "summary.csv").string(),
                      {"n_robots", "alpha", "status", "readout_time",
                       "coverage_at_readout"});
    for (std::size_t ni = 0; ni < study.n_list.size(); ++ni) {
        std::size_t ai = 0;
        for (const CoverageRun& run : study.runs) {
            if (run.n_robots != study.n_list[ni]) continue;
            summary.row({std::to_string(run.n_robots), alpha_tag(run.alpha),
                         run.ok ? "ok" : "failed",
                         format_double(study.reference_times[ni]),
                         format_double(study.at_reference[ni][ai])});
            ++ai;
        }
    }
    summary.close();

    for (const CoverageRun& run : study.runs) {
        if (!run.ok) continue;
        const fs::path dir =
            root / "runs" /
            ("n" + std::to_string(run.n_robots) + "_alpha" + alpha_tag(run.alpha));
        fs::create_directories(dir);
        CsvWriter curve((dir / "coverage.csv").string(),
                        {"t", "covered_fraction", "averaged_fraction"});
        for (std::size_t k = 0; k < run.times.size(); ++k)
            curve.row({run.times[k], run.covered[k], run.averaged[k]});
        curve.close();

        Manifest m;
        m.set_double("params.alpha", run.alpha);
        m.set_int("params.n_robots", run.n_robots);
        m.set_double("params.rho_diam", scenario.params.rho_diam);
        m.set_double("params.c0", scenario.params.c0);
        m.set_double("params.zeta", scenario.params.zeta);
        m.set_double("initial_mass", run.total_mass);
        m.set_int("grid.nx", options.nx);
        m.set_int("grid.ny", options.ny);
        m.set_double("solver.dt", options.dt);
        m.set_string("solver.mobility",
                     options.mobility_mode == MobilityMode::nonlinear ? "nonlinear"
                                                                      : "constant");
        m.set_int("seed", static_cast<long long>(options.seed));
        m.write((dir / "manifest.json").string());
    }

    Manifest top;
    top.set_double("scenario.arena_lx", scenario.params.arena.lx);
    top.set_double("scenario.arena_ly", scenario.params.arena.ly);
    top.set_double("scenario.rho_diam", scenario.params.rho_diam);
    top.set_double("scenario.c0", scenario.params.c0);
    top.set_double("reference.alpha", study.reference_alpha);
    top.set_double("reference.level", options.reference_level);
    top.set_doubles("reference.times", study.reference_times);
    std::vector<std::string> order_flags;
    for (bool flag : study.decreasing_in_alpha)
        order_flags.push_back(flag ? "strictly-decreasing" : "violated");
    top.set_strings("reference.alpha_ordering", order_flags);
    top.set_int("grid.nx", options.nx);
    top.set_int("grid.ny", options.ny);
    top.set_double("solver.dt", options.dt);
    top.set_int("seed", static_cast<long long>(options.seed));
    top.write((root / "manifest.json").string());
}

}  // namespace

CoverageStudy run_coverage_study(const EPuckScenario& scenario,
                                 const std::vector<double>& alpha_list,
                                 const std::vector<int>& n_list,
                                 const CoverageStudyOptions& options) {
    if (alpha_list.empty() || n_list.empty())
        throw ValidationError("coverage study needs at least one alpha and one N");
    Grid2D grid{options.nx, options.ny, scenario.params.arena.lx,
                scenario.params.arena.ly, BoundaryMode::neumann_mirror};
    grid.validate();

    std::vector<double> alphas = alpha_list;
    std::sort(alphas.begin(), alphas.end());

    CoverageStudy study;
    study.reference_alpha = alphas.back();
    study.n_list = n_list;

    for (int n : n_list) {
        ModelParams p = scenario.params;
        p.n_robots = n;

        // the slowest-spreading curve defines the readout time for this N
        p.alpha = study.reference_alpha;
        CoverageRun ref =
            run_curve(grid, p, options, options.t_cap, options.reference_level);
        double t_ref = std::numeric_limits<double>::quiet_NaN();
        if (ref.ok && !ref.averaged.empty() &&
            ref.averaged.back() >= options.reference_level)
            t_ref = ref.times.back();
        study.reference_times.push_back(t_ref);

        std::vector<CoverageRun> block;
        for (double alpha : alphas) {
            if (alpha == study.reference_alpha) {
                block.push_back(ref);
                continue;
            }
            p.alpha = alpha;
            const double t_stop = std::isnan(t_ref) ? options.t_cap : t_ref;
            block.push_back(run_curve(grid, p, options, t_stop, -1.0));
        }

        std::vector<double> readout(alphas.size(),
                                    std::numeric_limits<double>::quiet_NaN());
        bool decreasing = !std::isnan(t_ref);
        for (std::size_t k = 0; k < block.size(); ++k) {
            if (!block[k].ok || block[k].averaged.empty()) {
                decreasing = false;
                continue;
            }
            readout[k] = block[k].averaged.back();
        }
        for (std::size_t k = 0; k + 1 < readout.size() && decreasing; ++k)
            if (!(readout[k] > readout[k + 1])) decreasing = false;
        study.at_reference.push_back(readout);
        study.decreasing_in_alpha.push_back(decreasing);
        for (CoverageRun& run : block) study.runs.push_back(std::move(run));
    }

    if (!options.out_dir.empty()) write_coverage_outputs(study, scenario, options);
    return study;
}

ScalarField2D two_cluster_initial_condition(const Grid2D& grid, double rho_diam,
                                            int n_each) {
    grid.validate();
    if (!(rho_diam > 0.0) || n_each < 1)
        throw ValidationError("cluster initial condition requires rho_diam > 0, n >= 1");
    const double scale = rho_diam * n_each;
    const double cy = 0.5 * grid.ly;
    const double cx1 = 0.25 * grid.lx, cx2 = 0.75 * grid.lx;
    ScalarField2D u(grid);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x_center(i), y = grid.y_center(j);
            const double r1 = (x - cx1) * (x - cx1) + (y - cy) * (y - cy);
            const double r2 = (x - cx2) * (x - cx2) + (y - cy) * (y - cy);
            u.at(i, j) = std::max(1.2 * std::exp(-r1 / scale) - 0.2, 0.0) +
                         std::max(1.2 * std::exp(-r2 / scale) - 0.2, 0.0);
        }
    }
    return u;
}

// ---------------------------------------------------------------------------
// cross-validation

namespace {

ScalarField2D unit_blob(const Grid2D& grid, double scale) {
    ScalarField2D u(grid);
    const double cx = 0.5 * grid.lx, cy = 0.5 * grid.ly;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double dx = grid.x_center(i) - cx;
            const double dy = grid.y_center(j) - cy;
            u.at(i, j) = std::max(1.2 * std::exp(-(dx * dx + dy * dy) / scale) - 0.2, 0.0);
        }
    }
    const double mass = u.integral();
    if (!(mass > 0.0)) throw ValidationError("initial bump has zero mass");
    for (double& v : u.v) v /= mass;
    return u;
}

// mass-preserving block average onto a coarser grid with the same extent
ScalarField2D aggregate(const ScalarField2D& u, const Grid2D& coarse) {
    const Grid2D& g = u.grid;
    if (g.nx % coarse.nx != 0 || g.ny % coarse.ny != 0)
        throw ValidationError("aggregation requires grid sizes to divide evenly");
    const int bx = g.nx / coarse.nx, by = g.ny / coarse.ny;
    ScalarField2D out(coarse);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            out.at(i / bx, j / by) += u.at(i, j);
    const double w = 1.0 / (bx * by);
    for (double& v : out.v) v *= w;
    return out;
}

double l1_distance(const ScalarField2D& a, const ScalarField2D& b) {
    if (!a.grid.same_shape(b.grid))
        throw ValidationError("L1 distance needs identical grids");
    double s = 0.0;
    for (std::size_t k = 0; k < a.v.size(); ++k) s += std::abs(a.v[k] - b.v[k]);
    return s * a.grid.cell_area();
}

// walkers allocated to cells proportionally to the cell mass, remainders to
// the largest fractional parts (ties to the lower cell index); deterministic
SwarmState walkers_from_density(const ScalarField2D& u0, int n_walkers,
                                const MicroConfig& config) {
    const Grid2D& g = u0.grid;
    const double cell_mass_to_count = n_walkers * g.cell_area();
    std::vector<int> counts(u0.v.size(), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    remainders.reserve(u0.v.size());
    long long assigned = 0;
    for (std::size_t k = 0; k < u0.v.size(); ++k) {
        const double target = u0.v[k] * cell_mass_to_count;
        const double base = std::floor(target);
        counts[k] = static_cast<int>(base);
        assigned += counts[k];
        remainders.emplace_back(-(target - base), k);  // negated: sort ascending
    }
    std::sort(remainders.begin(), remainders.end());
    long long leftover = n_walkers - assigned;
    if (leftover < 0)
        throw SolverError("walker allocation overshot the target count");
    for (long long r = 0; r < leftover; ++r)
        counts[remainders[static_cast<std::size_t>(r) % remainders.size()].second] += 1;

    const RunTimeLaw law(config.params.alpha, config.params.sigma0);
    SwarmState state;
    state.agents.reserve(n_walkers);
    std::uint64_t id = 0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
            for (int c = 0; c < counts[k]; ++c) {
                RngStream rng(config.seed, id, 0);
                Agent a;
                a.pos = {g.x_center(i), g.y_center(j)};
                const double angle = rng.uniform(-M_PI, M_PI);
                a.dir = {std::cos(angle), std::sin(angle)};
                a.time_to_stop = law.sample(rng);
                state.agents.push_back(a);
                ++id;
            }
        }
    }
    if (static_cast<int>(state.agents.size()) != n_walkers)
        throw SolverError("walker allocation produced " +
                          std::to_string(state.agents.size()) + " of " +
                          std::to_string(n_walkers));
    return state;
}

}  // namespace

XvalReport run_cross_validation(const ModelParams& params, double epsilon, double gamma,
                                const XvalOptions& options) {
    params.validate();
    if (params.zeta != 1.0)
        throw ValidationError("cross-validation requires zeta = 1 (no alignment)");
    if (options.n_walkers < 10000)
        throw ValidationError("cross-validation needs at least 10^4 walkers");
    if (options.fine_nx % options.histogram_nx != 0 ||
        options.coarse_nx % options.histogram_nx != 0)
        throw ValidationError("histogram resolution must divide both PDE grids");
    if (options.checkpoints.empty())
        throw ValidationError("cross-validation needs at least one checkpoint");

    XvalReport report;
    report.alpha = params.alpha;
    report.checkpoints = options.checkpoints;
    std::sort(report.checkpoints.begin(), report.checkpoints.end());
    report.checkpoints.erase(
        std::unique(report.checkpoints.begin(), report.checkpoints.end()),
        report.checkpoints.end());
    for (double t : report.checkpoints) {
        if (t <= 0.0)
            throw ValidationError("checkpoints must be positive times");
        const double steps = t / options.dt_pde;
        if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps))
            throw ValidationError("checkpoint " + std::to_string(t) +
                                  " is not a multiple of dt_pde");
    }

    const ScalingParams scaling = validate_scaling(params.alpha, gamma, epsilon);
    report.scaling_ok = true;
    report.micro_speed = params.c0 * std::pow(epsilon, -gamma);
    report.micro_run_scale = scaled_run_scale(params.sigma0, scaling);

    const ClosureCoeffs coeffs = compute_closure(params);
    report.diffusion_constant = coeffs.c_alpha / coeffs.f_const;

    const Grid2D fine{options.fine_nx, options.fine_nx, 1.0, 1.0,
                      BoundaryMode::periodic};
    const Grid2D coarse{options.coarse_nx, options.coarse_nx, 1.0, 1.0,
                        BoundaryMode::periodic};
    const Grid2D hist{options.histogram_nx, options.histogram_nx, 1.0, 1.0,
                      BoundaryMode::periodic};
    fine.validate();
    coarse.validate();
    // the histogram grid never feeds a transform, so the solver-grade
    // constraints (even, >= 16) do not apply; it only has to be nonempty
    if (options.histogram_nx < 1)
        throw ValidationError("histogram resolution must be >= 1");

    // macro side, on both grids
    auto solve_checkpoints = [&](const Grid2D& grid) {
        SolverConfig config;
        config.dt = options.dt_pde;
        config.t_end = report.checkpoints.back();
        config.coeffs = coeffs;
        config.mobility_mode = MobilityMode::constant;  // free walkers: F = f_const
        std::vector<ScalarField2D> snaps;
        std::size_t next = 0;
        StepObserver observer = [&](int, double t, const ScalarField2D& u) {
            while (next < report.checkpoints.size() &&
                   std::abs(t - report.checkpoints[next]) <=
                       1e-9 * std::max(1.0, report.checkpoints[next])) {
                snaps.push_back(u);
                ++next;
            }
        };
        FracDiffusionSolver solver(grid, config);
        solver.solve(unit_blob(grid, options.blob_scale), {observer});
        if (snaps.size() != report.checkpoints.size())
            throw SolverError("missed a checkpoint snapshot (got " +
                              std::to_string(snaps.size()) + ")");
        return snaps;
    };
    const std::vector<ScalarField2D> fine_snaps = solve_checkpoints(fine);
    const std::vector<ScalarField2D> coarse_snaps = solve_checkpoints(coarse);

    // micro side: scaled speed and run law on the unit box, no collisions
    MicroConfig mc;
    mc.params = params;
    mc.params.c = report.micro_speed;
    mc.params.sigma0 = report.micro_run_scale;
    mc.params.arena = Rect{1.0, 1.0};
    mc.params.n_robots = 1;  // placement is external; validate() wants >= 1
    mc.boundary = MicroBoundary::periodic;
    mc.enable_collisions = false;
    mc.seed = options.seed;
    mc.threads = options.threads;
    mc.dt = 1.0;  // rewritten per leg below

    const ScalarField2D u0_fine = unit_blob(fine, options.blob_scale);
    SwarmState swarm = walkers_from_density(u0_fine, options.n_walkers, mc);

    report.t0_distance =
        l1_distance(observe(swarm, hist).density, aggregate(u0_fine, hist));

    std::vector<ScalarField2D> micro_hists;
    double t_prev = 0.0;
    for (double t : report.checkpoints) {
        mc.dt = t - t_prev;
        step(swarm, mc);
        t_prev = t;
        micro_hists.push_back(observe(swarm, hist).density);
    }

    for (std::size_t k = 0; k < report.checkpoints.size(); ++k) {
        report.micro_vs_pde.push_back(
            l1_distance(micro_hists[k], aggregate(fine_snaps[k], hist)));
        report.control_arm.push_back(l1_distance(aggregate(coarse_snaps[k], hist),
                                                 aggregate(fine_snaps[k], hist)));
    }

    report.pass = report.t0_distance <= options.t0_threshold;
    for (double d : report.micro_vs_pde)
        if (!(d <= options.threshold)) report.pass = false;
    for (double d : report.control_arm)
        if (!(d <= options.control_threshold)) report.pass = false;

    if (!options.out_dir.empty()) {
        const fs::path root(options.out_dir);
        fs::create_directories(root / "fields");
        CsvWriter distances((root / "distances.csv").string(),
                            {"t", "micro_vs_pde_l1", "control_arm_l1"});
        distances.row({0.0, report.t0_distance, 0.0});
        for (std::size_t k = 0; k < report.checkpoints.size(); ++k)
            distances.row({report.checkpoints[k], report.micro_vs_pde[k],
                           report.control_arm[k]});
        distances.close();
        for (std::size_t k = 0; k < report.checkpoints.size(); ++k) {
            const std::string tag = "_t" + std::to_string(k) + ".csv";
            write_scalar_field_csv((root / "fields" / ("micro" + tag)).string(),
                                   micro_hists[k]);
            write_scalar_field_csv((root / "fields" / ("pde" + tag)).string(),
                                   aggregate(fine_snaps[k], hist));
        }

        Manifest m;
        m.set_double("params.alpha", params.alpha);
        m.set_double("params.sigma0", params.sigma0);
        m.set_double("params.c0", params.c0);
        m.set_double("scaling.epsilon", epsilon);
        m.set_double("scaling.gamma", gamma);
        m.set_double("scaling.mu", scaling.mu);
        m.set_double("micro.speed", report.micro_speed);
        m.set_double("micro.run_scale", report.micro_run_scale);
        m.set_int("micro.n_walkers", options.n_walkers);
        m.set_int("micro.seed", static_cast<long long>(options.seed));
        m.set_double("pde.diffusion_constant", report.diffusion_constant);
        m.set_int("pde.fine_nx", options.fine_nx);
        m.set_int("pde.coarse_nx", options.coarse_nx);
        m.set_double("pde.dt", options.dt_pde);
        m.set_doubles("distances.checkpoints", report.checkpoints);
        m.set_doubles("distances.micro_vs_pde", report.micro_vs_pde);
        m.set_doubles("distances.control_arm", report.control_arm);
        m.set_double("distances.t0", report.t0_distance);
        m.set_bool("pass", report.pass);
        m.write((root / "manifest.json").string());
    }
    return report;
}

// ---------------------------------------------------------------------------
// coefficient report

std::string emit_coefficients(const ModelParams& params, double epsilon, double gamma) {
    params.validate();
    const ClosureCoeffs c = compute_closure(params);
    const ScalingParams s = validate_scaling(params.alpha, gamma, epsilon);

    Manifest m;
    m.set_double("input.alpha", params.alpha);
    m.set_double("input.sigma0", params.sigma0);
    m.set_double("input.c", params.c);
    m.set_double("input.c0", params.c0);
    m.set_double("input.zeta", params.zeta);
    m.set_double("input.nu1", params.nu1);
    m.set_double("input.ell", params.ell);
    m.set_double("input.kappa_tumble", params.kappa_tumble);
    m.set_double("input.kappa_align", params.kappa_align);
    m.set_double("input.rho_diam", params.rho_diam);
    m.set_int("input.n_robots", params.n_robots);
    m.set_double("input.arena_lx", params.arena.lx);
    m.set_double("input.arena_ly", params.arena.ly);
    m.set_int("input.dim", ModelParams::dim);

    m.set_double("coefficients.c_alpha", c.c_alpha);
    m.set_double("coefficients.f_const", c.f_const);
    m.set_double("coefficients.f_slope", c.f_slope);
    m.set_double("coefficients.g_slope", c.g_slope);
    m.set_double("coefficients.z", c.z);
    m.set_double("coefficients.a0", c.a0);
    m.set_double("coefficients.a1", c.a1);
    m.set_double("coefficients.a3", c.a3);
    m.set_double("coefficients.cc0", c.cc0);
    m.set_double("coefficients.cc1", c.cc1);
    m.set_double("coefficients.cc2", c.cc2);
    m.set_bool("coefficients.degenerate_closure", c.degenerate_closure);
    m.set_double("coefficients.b", c.b);
    m.set_double("coefficients.laplace_a", c.laplace_a);
    m.set_double("coefficients.laplace_b", c.laplace_b);
    m.set_double("coefficients.s_area", c.s_area);

    m.set_double("scaling.epsilon", s.epsilon);
    m.set_double("scaling.gamma", s.gamma);
    m.set_double("scaling.mu", s.mu);
    m.set_double("scaling.eta", s.eta);
    m.set_double("scaling.xi_minus_theta", s.xi_minus_theta);

    m.set_string("formulas.c_alpha",
                 "-sigma0^(alpha-2) c0^(alpha-1) (alpha-1)^2 pi / (sin(pi alpha) "
                 "Gamma(alpha)) * (|S| - 4 zeta nu1) / |S|^2");
    m.set_string("formulas.f_const", "(alpha-1) dim (1 - zeta nu1) / (sigma0 |S|)");
    m.set_string("formulas.f_slope", "(8/3) b c0 / |S|^2");
    m.set_string("formulas.g_slope", "(1 - zeta) |S| z (alpha-1) / sigma0");
    m.set_string("formulas.z", "int Phi(theta) cos(theta) dtheta");
    m.set_string("formulas.a0", "int Phi(theta) cos^2(theta) dtheta");
    m.set_string("formulas.a1", "int Phi(theta) sin^2(theta) dtheta");
    m.set_string("formulas.a3", "a0 - a1");
    m.set_string("formulas.cc0", "z (1 - zeta)");
    m.set_string("formulas.cc1", "c0 (1 - zeta) a3");
    m.set_string("formulas.cc2", "c0 (1 - zeta) a1 + c0 pi zeta");
    m.set_string("formulas.b", "int_S |2 sin(s/2)| ds");
    m.set_string("formulas.laplace_a", "(alpha-1) / sigma0");
    m.set_string("formulas.laplace_b", "-sigma0^(alpha-2) (alpha-1)^2 Gamma(1-alpha)");
    m.set_string("formulas.mu", "(1 - alpha (1 - gamma)) / (alpha - 1)");
    m.set_string("formulas.eta", "-gamma");
    m.set_string("formulas.xi_minus_theta", "1 - gamma / (alpha - 1)");

    return m.to_json();
}

}  // namespace levyswarm
