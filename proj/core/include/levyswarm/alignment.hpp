#pragma once

#include <cstdint>
#include <vector>

#include "levyswarm/fracpde.hpp"
#include "levyswarm/grid.hpp"
#include "levyswarm/spectral.hpp"

namespace levyswarm {

// Exponential influence kernel exp(-r / range), treated as zero beyond cutoff.
// Normalization is irrelevant where the kernel only steers directions; the
// flux keeps the unnormalized values.
struct InfluenceKernelSpec {
    double range = 0.0;   // e-folding length (cm)
    double cutoff = 0.0;  // 0 requests the default 5 * range

    void validate() const;          // range > 0, cutoff >= 5 * range
    double resolved_cutoff() const { return cutoff > 0.0 ? cutoff : 5.0 * range; }
    double evaluate(double r) const;
};

// Unit direction field with a mask for cells where the flux vanished and the
// alignment term is dropped.
struct LambdaField {
    VectorField2D lambda;
    std::vector<std::uint8_t> degenerate;
    std::size_t degenerate_count = 0;
};

// Kernel-smoothed flux J = K * w (componentwise grid convolution, cell-area
// weighted), on the boundary mode of the workspace.
VectorField2D nonlocal_flux(const VectorField2D& w, const InfluenceKernelSpec& kernel,
                            SpectralWorkspace& work);

// Pointwise J / |J|; cells with |J| < 1e-12 return the zero vector and are marked.
LambdaField lambda_w(const VectorField2D& w, const InfluenceKernelSpec& kernel,
                     SpectralWorkspace& work);

// First-order weak-alignment flux
//   w = -(c_alpha / F(u)) grad^(alpha-1) u + ell (G(u)/F(u)) Lambda^u,
// with Lambda^u the normalized kernel-smoothed leading-order flux.
VectorField2D weak_alignment_w(const ScalarField2D& u, const ClosureCoeffs& coeffs,
                               double ell, const InfluenceKernelSpec& kernel,
                               SpectralWorkspace& work);

struct AlignStats {
    int max_fixed_point_iterations = 0;
    double worst_final_update = 0.0;  // sup-norm of the last fixed-point update
    std::size_t degenerate_cells_last = 0;
};

// Density evolution with the alignment-coupled flux: each step resolves
//   w = -(c_alpha/F(u)) grad^(alpha-1) u + ell (G(u)/F(u)) Lambda^w
// by damped fixed-point iteration (damping 0.5, update tolerance 1e-8, at most
// 100 iterations), then advances u implicitly with the diffusive part and the
// resolved alignment flux frozen as a source.  ell = 0 reproduces the plain
// solver exactly.
class AlignedSolver {
  public:
    AlignedSolver(const Grid2D& grid, const SolverConfig& config, double ell,
                  const InfluenceKernelSpec& kernel);

    ScalarField2D step(const ScalarField2D& u, double dt = 0.0);
    Trajectory solve(const ScalarField2D& u0,
                     const std::vector<StepObserver>& observers = {});

    // the flux the fixed point settled on for the last step
    const VectorField2D& last_flux() const { return last_w_; }
    const AlignStats& align_stats() const { return align_stats_; }
    const SolverStats& stats() const { return base_.stats(); }
    const CoverageCurve& coverage_curve() const { return base_.coverage_curve(); }

  private:
    FracDiffusionSolver base_;
    SolverConfig config_;
    double ell_;
    InfluenceKernelSpec kernel_;
    SpectralKernel spectral_kernel_;
    bool kernel_ready_ = false;
    VectorField2D last_w_;
    AlignStats align_stats_;

    VectorField2D resolve_flux(const ScalarField2D& u);
};

}  // namespace levyswarm
