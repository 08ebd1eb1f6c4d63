#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "levyswarm/grid.hpp"

namespace levyswarm {

// Fourier image of a real, even (wraparound-symmetric) convolution kernel on
// the transform grid of the workspace that built it.
struct SpectralKernel {
    std::vector<double> spectrum;  // real because the kernel is even
    int tnx = 0;
    int tny = 0;
};

// FFT scratch space plus the nonlocal operators used by the field solvers.
// Periodic grids transform directly; Neumann (zero-flux) grids are evenly
// mirrored onto a doubled periodic grid, operated on there, and restricted
// back.  One workspace serves one solve at a time (shared internal buffers);
// independent workspaces are safe to use concurrently.
class SpectralWorkspace {
  public:
    explicit SpectralWorkspace(const Grid2D& grid);
    ~SpectralWorkspace();
    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    const Grid2D& grid() const { return grid_; }

    // Nonlocal gradient with per-frequency multiplier i xi |xi|^(alpha-2)
    // (zero at xi = 0 and at the Nyquist rows, where the odd multiplier has no
    // faithful discrete image).  alpha = 2 is the classical gradient.
    VectorField2D frac_gradient(const ScalarField2D& u, double alpha);

    // Spectral divergence; composed with frac_gradient the multiplier is
    // -|xi|^alpha away from the Nyquist rows.
    ScalarField2D divergence(const VectorField2D& w);

    // Exact composition: multiplier -scale * |xi|^alpha on every mode.
    ScalarField2D neg_frac_laplacian(const ScalarField2D& u, double alpha, double scale);

    // Diagonal implicit-Euler solve: u_hat / (1 + s |xi|^alpha).  The zero
    // mode is untouched, so the mean is preserved exactly.
    ScalarField2D implicit_diagonal_solve(const ScalarField2D& u, double alpha, double s);

    // Sample a radial kernel on the transform grid (wraparound distances) and
    // transform it once for repeated convolve() calls.
    SpectralKernel make_radial_kernel(const std::function<double(double)>& radial);

    // Cell-area-weighted circular convolution sum_j k(x_i - x_j) u_j * dA,
    // i.e. the grid quadrature of the continuous convolution integral.
    ScalarField2D convolve(const ScalarField2D& u, const SpectralKernel& kernel);

  private:
    struct Impl;
    Grid2D grid_;
    Impl* impl_;

    void forward(const ScalarField2D& u);           // physical -> uhat_
    ScalarField2D inverse_to_field();               // spec buffer -> physical
    static void require_alpha_range(double alpha);
};

// Chunked index-parallel map; fn must not mutate shared state.  threads <= 1
// runs inline.  Results are identical for every thread count by construction.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t, std::size_t)>& range_fn);

}  // namespace levyswarm
