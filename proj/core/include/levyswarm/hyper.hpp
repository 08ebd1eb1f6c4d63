#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "levyswarm/circle_dist.hpp"
#include "levyswarm/coefficients.hpp"
#include "levyswarm/grid.hpp"
#include "levyswarm/rng.hpp"

namespace levyswarm {

// Density and mean-direction pair evolved by the swarming system
//   d_t u + c0 cc0 div(u Lambda) = 0
//   d_t Lambda = -(cc1/cc0) (Lambda . grad) Lambda - (cc2/(cc0 u)) Pperp grad u
// with Pperp = I - Lambda Lambda^T keeping |Lambda| = 1.
struct HyperState {
    ScalarField2D u;
    VectorField2D lambda;
    double time = 0.0;

    explicit HyperState(const Grid2D& grid) : u(grid), lambda(grid) {}
};

struct HyperStats {
    int steps = 0;
    std::size_t floor_cells_last = 0;   // cells where the 1/u guard engaged
    std::size_t floor_cells_total = 0;
    double mass_initial = 0.0;
    double mass_final = 0.0;
    double max_mass_drift = 0.0;        // relative, per step
    double min_density = 0.0;
};

// Scales lambda to unit length cellwise; throws if a cell has zero direction.
void normalize_lambda(VectorField2D& lambda);

// One explicit step: conservative upwind transport of u at velocity
// c0 cc0 Lambda (face velocity averaged from the adjacent cells), central
// differences for the Lambda equation, renormalization wherever the update
// moved the direction.  Periodic grids only.  Rejects degenerate closures
// (|cc0| < 1e-12) and steps breaking c0 |cc0| dt <= 0.5 min(dx, dy).
HyperState hyper_step(const HyperState& state, const ClosureCoeffs& coeffs, double dt,
                      HyperStats* stats = nullptr);

using HyperObserver = std::function<void(int, const HyperState&)>;

// Steps from init.time to t_end (shortened final step), invoking observers
// each step including step 0.
HyperState hyper_solve(const HyperState& init, const ClosureCoeffs& coeffs, double dt,
                       double t_end, HyperStats* stats = nullptr,
                       const std::vector<HyperObserver>& observers = {});

// Monte-Carlo check that directions drawn from the tumble-or-align mixture
//   (1 - zeta) * align_dist(theta - angle(Lambda)) + zeta * uniform
// have first moment z (1 - zeta) Lambda.
struct ClosureCheckReport {
    double moment_x = 0.0, moment_y = 0.0;      // empirical mean direction vector
    double expected_x = 0.0, expected_y = 0.0;  // z (1 - zeta) Lambda
    double error = 0.0;                         // Euclidean distance
    double tol = 0.0;                           // 3/sqrt(n) + 1e-3
    int n_samples = 0;
    bool pass = false;
};

ClosureCheckReport closure_check(const CircleDist& align_dist, double zeta, double lambda_x,
                                 double lambda_y, int n_samples, RngStream& rng);

}  // namespace levyswarm
