#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levyswarm/coefficients.hpp"
#include "levyswarm/fracpde.hpp"
#include "levyswarm/grid.hpp"
#include "levyswarm/params.hpp"

namespace levyswarm {

// The benchmark arena: 200 x 160 cm, robot diameter 7.5 cm, speed 3 cm/s,
// epsilon 0.005, gamma 0.5, pure tumbling (zeta = 1, uniform kernel).
struct EPuckScenario {
    ModelParams params;
    double epsilon = 0.005;
    double gamma = 0.5;
    std::vector<double> alpha_list{1.3, 1.5, 1.7, 1.9};
};

EPuckScenario epuck_scenario();

// ---------------------------------------------------------------------------
// coverage study

struct CoverageStudyOptions {
    int nx = 64, ny = 52;            // solver grid over the arena
    double dt = 0.25;                // implicit step (s); coverage saturates in seconds
    double t_cap = 600.0;            // give up if the reference curve never hits 1/2
    double reference_level = 0.5;    // time-averaged coverage defining the readout time
    MobilityMode mobility_mode = MobilityMode::nonlinear;
    double linear_solver_tol = 1e-8;
    std::uint64_t seed = 0;          // echoed into outputs; the solve is deterministic
    std::string out_dir;             // empty: no files written
};

struct CoverageRun {
    double alpha = 0.0;
    int n_robots = 0;
    bool ok = false;
    std::string error;               // set when the solve failed
    double total_mass = 0.0;         // raw initial mass of u0
    std::vector<double> times;
    std::vector<double> covered;     // instantaneous covered fraction, in [0, 1]
    std::vector<double> averaged;    // running time average of the same
};

struct CoverageStudy {
    std::vector<CoverageRun> runs;               // ordered by (n_robots, alpha)
    double reference_alpha = 0.0;                // largest alpha in the sweep
    std::vector<int> n_list;
    std::vector<double> reference_times;         // per N: averaged cov hits the level
    std::vector<bool> decreasing_in_alpha;       // per N: strictly decreasing readout
    std::vector<std::vector<double>> at_reference;  // [N index][alpha index]
};

// One density solve per (alpha, N): the largest alpha runs first to fix the
// readout time where its time-averaged coverage reaches the reference level,
// then every other alpha runs to that time.  Failures are recorded and the
// sweep continues.  With out_dir set, writes per-run curve CSVs, a combined
// long-format table, a summary table, and a manifest.
CoverageStudy run_coverage_study(const EPuckScenario& scenario,
                                 const std::vector<double>& alpha_list,
                                 const std::vector<int>& n_list,
                                 const CoverageStudyOptions& options);

// Initial density of two blobs of n_each robots, centered at (lx/4, ly/2) and
// (3lx/4, ly/2): doubling the swarm without changing the local density, for
// the small-time proportionality check.
ScalarField2D two_cluster_initial_condition(const Grid2D& grid, double rho_diam,
                                            int n_each);

// ---------------------------------------------------------------------------
// micro vs. macro cross-validation

struct XvalOptions {
    int n_walkers = 100000;
    int fine_nx = 256;               // PDE grid (square, unit box)
    int coarse_nx = 128;             // control-arm grid
    int histogram_nx = 8;            // comparison histogram resolution
    double dt_pde = 5e-4;
    double blob_scale = 0.005;       // squared width of the initial bump
    std::vector<double> checkpoints{0.05, 0.1, 0.2};
    std::uint64_t seed = 1;
    int threads = 1;
    double threshold = 0.05;         // micro vs macro L1 limit
    double control_threshold = 0.01; // coarse vs fine PDE L1 limit
    double t0_threshold = 0.01;      // binning-only error at t = 0
    std::string out_dir;             // empty: no files written
};

struct XvalReport {
    double alpha = 0.0;
    double micro_speed = 0.0;        // c0 eps^(-gamma)
    double micro_run_scale = 0.0;    // sigma0 eps^mu
    double diffusion_constant = 0.0; // c_alpha / f_const of the macro equation
    double t0_distance = 0.0;
    std::vector<double> checkpoints;
    std::vector<double> micro_vs_pde;   // L1 per checkpoint
    std::vector<double> control_arm;    // L1 coarse-vs-fine per checkpoint
    bool scaling_ok = false;
    bool pass = false;               // all micro_vs_pde <= threshold,
                                     // control <= control_threshold, t0 ok
};

// Free walkers (zeta = 1, no collisions) on the periodic unit box, initialized
// deterministically from the discretized initial density, against the
// constant-mobility density equation with coefficients from params; both sides
// normalized to unit mass and compared on a coarse histogram at each
// checkpoint.  Scaling violations abort before anything runs.
XvalReport run_cross_validation(const ModelParams& params, double epsilon, double gamma,
                                const XvalOptions& options);

// ---------------------------------------------------------------------------
// coefficient report

// Full closure-coefficient set for the given parameters as a JSON document:
// input echo, derived constants, scaling exponents, and the defining formula
// of each constant as a string.
std::string emit_coefficients(const ModelParams& params, double epsilon, double gamma);

}  // namespace levyswarm
