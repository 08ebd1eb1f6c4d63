#include "levyswarm/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

#include "levyswarm/errors.hpp"

namespace levyswarm {

namespace {

// FFTW's planner mutates global state; serialize plan creation/destruction.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

struct SpectralWorkspace::Impl {
    int tnx = 0;   // transform grid (doubled when mirroring)
    int tny = 0;
    double tlx = 0.0;
    double tly = 0.0;
    bool mirrored = false;

    fftw_complex* buf = nullptr;   // in-place transform buffer
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    std::vector<std::complex<double>> uhat;  // spectrum of the last forward()
    std::vector<double> wx;   // wavenumbers per index
    std::vector<double> wy;

    std::size_t tsize() const { return static_cast<std::size_t>(tnx) * tny; }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * tnx + i; }
};

SpectralWorkspace::SpectralWorkspace(const Grid2D& grid) : grid_(grid) {
    grid_.validate();
    impl_ = new Impl;
    impl_->mirrored = grid_.boundary == BoundaryMode::neumann_mirror;
    impl_->tnx = impl_->mirrored ? 2 * grid_.nx : grid_.nx;
    impl_->tny = impl_->mirrored ? 2 * grid_.ny : grid_.ny;
    impl_->tlx = impl_->mirrored ? 2.0 * grid_.lx : grid_.lx;
    impl_->tly = impl_->mirrored ? 2.0 * grid_.ly : grid_.ly;

    impl_->buf = fftw_alloc_complex(impl_->tsize());
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        // row-major (ny, nx): x is the contiguous direction
        impl_->fwd = fftw_plan_dft_2d(impl_->tny, impl_->tnx, impl_->buf, impl_->buf,
                                      FFTW_FORWARD, FFTW_ESTIMATE);
        impl_->bwd = fftw_plan_dft_2d(impl_->tny, impl_->tnx, impl_->buf, impl_->buf,
                                      FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    impl_->uhat.resize(impl_->tsize());

    impl_->wx.resize(impl_->tnx);
    for (int i = 0; i < impl_->tnx; ++i) {
        const int m = i <= impl_->tnx / 2 ? i : i - impl_->tnx;
        impl_->wx[i] = 2.0 * std::numbers::pi * m / impl_->tlx;
    }
    impl_->wy.resize(impl_->tny);
    for (int j = 0; j < impl_->tny; ++j) {
        const int m = j <= impl_->tny / 2 ? j : j - impl_->tny;
        impl_->wy[j] = 2.0 * std::numbers::pi * m / impl_->tly;
    }
}

SpectralWorkspace::~SpectralWorkspace() {
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(impl_->fwd);
        fftw_destroy_plan(impl_->bwd);
    }
    fftw_free(impl_->buf);
    delete impl_;
}

void SpectralWorkspace::require_alpha_range(double alpha) {
    if (!(alpha > 1.0) || !(alpha <= 2.0))
        throw ValidationError("alpha = " + std::to_string(alpha) +
                              " violates 1 < alpha <= 2 for the nonlocal gradient");
}

// load physical field (mirror-extended if needed), run forward FFT into uhat
void SpectralWorkspace::forward(const ScalarField2D& u) {
    Impl& w = *impl_;
    const int nx = grid_.nx, ny = grid_.ny;
    for (int j = 0; j < w.tny; ++j) {
        const int sj = j < ny ? j : 2 * ny - 1 - j;
        for (int i = 0; i < w.tnx; ++i) {
            const int si = i < nx ? i : 2 * nx - 1 - i;
            const std::size_t k = w.idx(i, j);
            w.buf[k][0] = u.at(si, sj);
            w.buf[k][1] = 0.0;
        }
    }
    fftw_execute(w.fwd);
    const std::size_t n = w.tsize();
    for (std::size_t k = 0; k < n; ++k)
        w.uhat[k] = {w.buf[k][0], w.buf[k][1]};
}

// inverse-transform buf, normalize, restrict to the physical grid
ScalarField2D SpectralWorkspace::inverse_to_field() {
    Impl& w = *impl_;
    fftw_execute(w.bwd);
    ScalarField2D out(grid_);
    const double norm = 1.0 / static_cast<double>(w.tsize());
    for (int j = 0; j < grid_.ny; ++j)
        for (int i = 0; i < grid_.nx; ++i)
            out.at(i, j) = w.buf[w.idx(i, j)][0] * norm;
    return out;
}

VectorField2D SpectralWorkspace::frac_gradient(const ScalarField2D& u, double alpha) {
    require_alpha_range(alpha);
    if (!u.grid.same_shape(grid_))
        throw ValidationError("field grid does not match the workspace grid");
    Impl& w = *impl_;
    forward(u);

    VectorField2D g(grid_);
    for (int comp = 0; comp < 2; ++comp) {
        for (int j = 0; j < w.tny; ++j) {
            for (int i = 0; i < w.tnx; ++i) {
                const std::size_t k = w.idx(i, j);
                const double kx = w.wx[i], ky = w.wy[j];
                const double mag = std::hypot(kx, ky);
                // odd multiplier: no image at the zero mode or Nyquist rows
                const bool nyq = (i == w.tnx / 2) || (j == w.tny / 2);
                double mult = 0.0;
                if (mag > 0.0 && !nyq)
                    mult = (comp == 0 ? kx : ky) * std::pow(mag, alpha - 2.0);
                // i * mult * uhat
                const std::complex<double> val =
                    std::complex<double>(0.0, mult) * w.uhat[k];
                w.buf[k][0] = val.real();
                w.buf[k][1] = val.imag();
            }
        }
        ScalarField2D part = inverse_to_field();
        (comp == 0 ? g.x : g.y) = std::move(part.v);
    }
    return g;
}

ScalarField2D SpectralWorkspace::divergence(const VectorField2D& f) {
    if (!f.grid.same_shape(grid_))
        throw ValidationError("field grid does not match the workspace grid");
    Impl& w = *impl_;
    std::vector<std::complex<double>> acc(w.tsize(), {0.0, 0.0});

    for (int comp = 0; comp < 2; ++comp) {
        ScalarField2D tmp(grid_);
        tmp.v = comp == 0 ? f.x : f.y;
        // components of a flux on a mirrored grid extend with odd symmetry so
        // that the restricted divergence sees zero flux through the walls
        const int nx = grid_.nx, ny = grid_.ny;
        for (int j = 0; j < w.tny; ++j) {
            const int sj = j < ny ? j : 2 * ny - 1 - j;
            const double sy = (comp == 1 && j >= ny) ? -1.0 : 1.0;
            for (int i = 0; i < w.tnx; ++i) {
                const int si = i < nx ? i : 2 * nx - 1 - i;
                const double sx = (comp == 0 && i >= nx) ? -1.0 : 1.0;
                const std::size_t k = w.idx(i, j);
                w.buf[k][0] = sx * sy * tmp.at(si, sj);
                w.buf[k][1] = 0.0;
            }
        }
        fftw_execute(w.fwd);
        for (int j = 0; j < w.tny; ++j) {
            for (int i = 0; i < w.tnx; ++i) {
                const std::size_t k = w.idx(i, j);
                const bool nyq = (i == w.tnx / 2) || (j == w.tny / 2);
                const double mult = nyq ? 0.0 : (comp == 0 ? w.wx[i] : w.wy[j]);
                acc[k] += std::complex<double>(0.0, mult) *
                          std::complex<double>(w.buf[k][0], w.buf[k][1]);
            }
        }
    }
    for (std::size_t k = 0; k < w.tsize(); ++k) {
        w.buf[k][0] = acc[k].real();
        w.buf[k][1] = acc[k].imag();
    }
    return inverse_to_field();
}

ScalarField2D SpectralWorkspace::neg_frac_laplacian(const ScalarField2D& u, double alpha,
                                                    double scale) {
    require_alpha_range(alpha);
    if (!u.grid.same_shape(grid_))
        throw ValidationError("field grid does not match the workspace grid");
    Impl& w = *impl_;
    forward(u);
    for (int j = 0; j < w.tny; ++j) {
        for (int i = 0; i < w.tnx; ++i) {
            const std::size_t k = w.idx(i, j);
            const double mag = std::hypot(w.wx[i], w.wy[j]);
            const double mult = mag > 0.0 ? -scale * std::pow(mag, alpha) : 0.0;
            const std::complex<double> val = mult * w.uhat[k];
            w.buf[k][0] = val.real();
            w.buf[k][1] = val.imag();
        }
    }
    return inverse_to_field();
}

ScalarField2D SpectralWorkspace::implicit_diagonal_solve(const ScalarField2D& u,
                                                         double alpha, double s) {
    require_alpha_range(alpha);
    if (!u.grid.same_shape(grid_))
        throw ValidationError("field grid does not match the workspace grid");
    if (!(s >= 0.0))
        throw ValidationError("implicit solve requires a nonnegative diffusion number");
    Impl& w = *impl_;
    forward(u);
    for (int j = 0; j < w.tny; ++j) {
        for (int i = 0; i < w.tnx; ++i) {
            const std::size_t k = w.idx(i, j);
            const double mag = std::hypot(w.wx[i], w.wy[j]);
            const double denom = mag > 0.0 ? 1.0 + s * std::pow(mag, alpha) : 1.0;
            const std::complex<double> val = w.uhat[k] / denom;
            w.buf[k][0] = val.real();
            w.buf[k][1] = val.imag();
        }
    }
    return inverse_to_field();
}

SpectralKernel SpectralWorkspace::make_radial_kernel(
    const std::function<double(double)>& radial) {
    Impl& w = *impl_;
    // sample at wraparound (minimum-image) distances from the origin cell
    for (int j = 0; j < w.tny; ++j) {
        double dy = j * (w.tly / w.tny);
        if (dy > 0.5 * w.tly) dy = w.tly - dy;
        for (int i = 0; i < w.tnx; ++i) {
            double dx = i * (w.tlx / w.tnx);
            if (dx > 0.5 * w.tlx) dx = w.tlx - dx;
            const std::size_t k = w.idx(i, j);
            w.buf[k][0] = radial(std::hypot(dx, dy));
            w.buf[k][1] = 0.0;
        }
    }
    fftw_execute(w.fwd);
    SpectralKernel out;
    out.tnx = w.tnx;
    out.tny = w.tny;
    out.spectrum.resize(w.tsize());
    for (std::size_t k = 0; k < w.tsize(); ++k)
        out.spectrum[k] = w.buf[k][0];  // even kernel: spectrum is real
    return out;
}

ScalarField2D SpectralWorkspace::convolve(const ScalarField2D& u,
                                          const SpectralKernel& kernel) {
    Impl& w = *impl_;
    if (kernel.tnx != w.tnx || kernel.tny != w.tny)
        throw ValidationError("kernel was built for a different grid");
    forward(u);
    const double da = grid_.cell_area();
    for (std::size_t k = 0; k < w.tsize(); ++k) {
        const std::complex<double> val = w.uhat[k] * (kernel.spectrum[k] * da);
        w.buf[k][0] = val.real();
        w.buf[k][1] = val.imag();
    }
    return inverse_to_field();
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& range_fn) {
    if (n == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(std::max(threads, 1), n);
    if (workers <= 1) {
        range_fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    std::mutex err_mutex;
    std::exception_ptr first_error;
    for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&range_fn, &err_mutex, &first_error, lo, hi] {
            try {
                range_fn(lo, hi);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace levyswarm
