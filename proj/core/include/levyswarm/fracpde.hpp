#pragma once

#include <functional>
#include <vector>

#include "levyswarm/coefficients.hpp"
#include "levyswarm/grid.hpp"
#include "levyswarm/spectral.hpp"

namespace levyswarm {

enum class MobilityMode {
    constant,   // F = f_const: the operator is diagonal in frequency space
    nonlinear,  // F(u) = f_const + f_slope * u, lagged at the previous step
};

struct SolverConfig {
    double dt = 0.0;
    double t_end = 0.0;
    ClosureCoeffs coeffs;  // carries alpha next to the derived constants
    MobilityMode mobility_mode = MobilityMode::nonlinear;
    double linear_solver_tol = 1e-10;
    int linear_solver_max_iter = 500;
    int store_every = 0;  // snapshot decimation; 0 keeps endpoints only

    void validate() const;
};

struct SolverStats {
    int steps = 0;
    int max_linear_iterations = 0;
    double max_linear_residual = 0.0;  // relative, worst accepted step
    double min_density = 0.0;          // deepest undershoot seen (negatives monitored)
    double max_negative_fraction = 0.0;
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double max_mass_drift = 0.0;       // relative, per step
};

struct Trajectory {
    std::vector<double> times;
    std::vector<ScalarField2D> fields;
    SolverStats stats;
};

struct CoverageCurve {
    std::vector<double> times;
    std::vector<double> covered;   // instantaneous covered fraction, in [0, 1]
    std::vector<double> averaged;  // running time average
};

using StepObserver = std::function<void(int step, double t, const ScalarField2D&)>;

// Centered blob profile max(1.2 exp(-|x - center|^2 / (rho_diam n_robots)) - 0.2, 0).
ScalarField2D initial_condition(const Grid2D& grid, double rho_diam, int n_robots,
                                bool normalize_mass = false);

// Instantaneous covered mass: integral of min(u, rho_bar).  The standard
// target level is rho_bar = 1 / domain area, which bounds the result by 1
// and reads as the fraction of the domain effectively reached.
double covered_mass(const ScalarField2D& u, double rho_bar);

// Accumulates the coverage functional every step; time average by trapezoid.
class CoverageAccumulator {
  public:
    explicit CoverageAccumulator(double rho_bar) : rho_bar_(rho_bar) {}
    void add(double t, const ScalarField2D& u);
    const CoverageCurve& curve() const { return curve_; }

  private:
    double rho_bar_;
    double integral_ = 0.0;  // running trapezoid of the instantaneous series
    CoverageCurve curve_;
};

// Coverage series recomputed from stored snapshots (trapezoid over the stored
// times; solve() itself accumulates every step regardless of decimation).
CoverageCurve coverage(const Trajectory& traj, const Grid2D& grid);

// Nonlocal diffusion with density-dependent mobility:
//   du/dt = div( (c_alpha / F(u)) grad^(alpha-1) u ),
// stepped by implicit Euler with the mobility lagged one step.  One solver
// instance serves one solve at a time; independent instances run concurrently.
class FracDiffusionSolver {
  public:
    FracDiffusionSolver(const Grid2D& grid, const SolverConfig& config);

    // div((c_alpha / F(u)) grad^(alpha-1) u) for the configured mobility mode
    ScalarField2D apply_generator(const ScalarField2D& u);

    // one implicit-Euler step of length dt (config dt when dt <= 0)
    ScalarField2D step_implicit(const ScalarField2D& u, double dt = 0.0);

    // solve (I + dt L(u_for_mobility)) x = rhs; lets callers fold extra explicit
    // flux terms into rhs while keeping the diffusive part implicit
    ScalarField2D step_implicit_with_source(const ScalarField2D& u_for_mobility,
                                            const ScalarField2D& rhs, double dt = 0.0);

    // iterate to t_end, invoking observers each step (including step 0)
    Trajectory solve(const ScalarField2D& u0,
                     const std::vector<StepObserver>& observers = {});

    // same loop with a custom one-step map (used by the alignment-coupled solver)
    using Stepper = std::function<ScalarField2D(const ScalarField2D&, double)>;
    Trajectory solve_with(const ScalarField2D& u0, const Stepper& stepper,
                          const std::vector<StepObserver>& observers = {});

    const SolverStats& stats() const { return stats_; }
    const CoverageCurve& coverage_curve() const { return coverage_.curve(); }
    SpectralWorkspace& workspace() { return work_; }

  private:
    Grid2D grid_;
    SolverConfig config_;
    SpectralWorkspace work_;
    SolverStats stats_;
    CoverageAccumulator coverage_;
    int last_linear_iterations_ = 0;
    double last_linear_residual_ = 0.0;

    std::vector<double> mobility_field(const ScalarField2D& u) const;  // c_alpha / F(u)
    ScalarField2D apply_operator(const ScalarField2D& v, const std::vector<double>& mob,
                                 double dt);  // (I + dt L) v with frozen mobility
    ScalarField2D bicgstab(const ScalarField2D& b, const std::vector<double>& mob,
                           double dt, double f_max);
};

// Convenience single-shot wrappers used by tests and simple callers.
ScalarField2D apply_generator(const ScalarField2D& u, const SolverConfig& config);
ScalarField2D step_implicit(const ScalarField2D& u, const SolverConfig& config);
Trajectory solve(const ScalarField2D& u0, const SolverConfig& config,
                 const std::vector<StepObserver>& observers = {});

}  // namespace levyswarm
