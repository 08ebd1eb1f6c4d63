#include "levyswarm/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levyswarm/errors.hpp"

namespace levyswarm {

void InfluenceKernelSpec::validate() const {
    if (!(range > 0.0)) throw ValidationError("influence kernel range must be positive");
    if (cutoff > 0.0 && cutoff < 5.0 * range)
        throw ValidationError("influence kernel cutoff must be at least 5 * range");
    if (cutoff < 0.0) throw ValidationError("influence kernel cutoff must be nonnegative");
}

double InfluenceKernelSpec::evaluate(double r) const {
    if (r > resolved_cutoff()) return 0.0;
    return std::exp(-r / range);
}

namespace {

SpectralKernel build_kernel(const InfluenceKernelSpec& kernel, SpectralWorkspace& work) {
    kernel.validate();
    return work.make_radial_kernel([&](double r) { return kernel.evaluate(r); });
}

VectorField2D convolve_components(const VectorField2D& w, const SpectralKernel& k,
                                  SpectralWorkspace& work) {
    ScalarField2D wx(w.grid), wy(w.grid);
    wx.v = w.x;
    wy.v = w.y;
    VectorField2D out(w.grid);
    out.x = work.convolve(wx, k).v;
    out.y = work.convolve(wy, k).v;
    return out;
}

LambdaField normalize_flux(const VectorField2D& j) {
    LambdaField lam;
    lam.lambda = VectorField2D(j.grid);
    lam.degenerate.assign(j.x.size(), 0);
    for (std::size_t k = 0; k < j.x.size(); ++k) {
        const double mag = std::hypot(j.x[k], j.y[k]);
        if (mag < 1e-12) {
            lam.degenerate[k] = 1;
            ++lam.degenerate_count;
            continue;  // direction undefined: drop the alignment pull here
        }
        lam.lambda.x[k] = j.x[k] / mag;
        lam.lambda.y[k] = j.y[k] / mag;
    }
    return lam;
}

// -(c_alpha / F(u)) grad^(alpha-1) u, the down-gradient part of the flux
VectorField2D diffusive_flux(const ScalarField2D& u, const ClosureCoeffs& coeffs,
                             SpectralWorkspace& work) {
    VectorField2D w0 = work.frac_gradient(u, coeffs.alpha);
    for (std::size_t k = 0; k < w0.x.size(); ++k) {
        const double f = coeffs.f_const + coeffs.f_slope * u.v[k];
        if (!(f > 0.0))
            throw SolverError("singular mobility in alignment flux: F(u) = " +
                              std::to_string(f));
        const double m = -coeffs.c_alpha / f;
        w0.x[k] *= m;
        w0.y[k] *= m;
    }
    return w0;
}

// ell * G(u)/F(u), the weight multiplying the alignment direction
std::vector<double> alignment_weight(const ScalarField2D& u, const ClosureCoeffs& coeffs,
                                     double ell) {
    std::vector<double> gf(u.v.size());
    for (std::size_t k = 0; k < gf.size(); ++k) {
        const double f = coeffs.f_const + coeffs.f_slope * u.v[k];
        gf[k] = ell * coeffs.g_slope * u.v[k] / f;
    }
    return gf;
}

}  // namespace

VectorField2D nonlocal_flux(const VectorField2D& w, const InfluenceKernelSpec& kernel,
                            SpectralWorkspace& work) {
    const SpectralKernel k = build_kernel(kernel, work);
    return convolve_components(w, k, work);
}

LambdaField lambda_w(const VectorField2D& w, const InfluenceKernelSpec& kernel,
                     SpectralWorkspace& work) {
    return normalize_flux(nonlocal_flux(w, kernel, work));
}

VectorField2D weak_alignment_w(const ScalarField2D& u, const ClosureCoeffs& coeffs,
                               double ell, const InfluenceKernelSpec& kernel,
                               SpectralWorkspace& work) {
    VectorField2D w0 = diffusive_flux(u, coeffs, work);
    if (ell == 0.0) return w0;
    const SpectralKernel k = build_kernel(kernel, work);
    const LambdaField lam = normalize_flux(convolve_components(w0, k, work));
    const std::vector<double> gf = alignment_weight(u, coeffs, ell);
    for (std::size_t i = 0; i < w0.x.size(); ++i) {
        w0.x[i] += gf[i] * lam.lambda.x[i];
        w0.y[i] += gf[i] * lam.lambda.y[i];
    }
    return w0;
}

AlignedSolver::AlignedSolver(const Grid2D& grid, const SolverConfig& config, double ell,
                             const InfluenceKernelSpec& kernel)
    : base_(grid, config), config_(config), ell_(ell), kernel_(kernel), last_w_(grid) {
    if (!(ell >= 0.0)) throw ValidationError("alignment strength ell must be nonnegative");
    kernel_.validate();
}

// Damped fixed point for w = w0 + ell (G/F) J(w)/|J(w)|, J = K * w.  Returns the
// settled flux; the caller splits off the alignment part as an explicit source.
VectorField2D AlignedSolver::resolve_flux(const ScalarField2D& u) {
    SpectralWorkspace& work = base_.workspace();
    if (!kernel_ready_) {
        spectral_kernel_ = build_kernel(kernel_, work);
        kernel_ready_ = true;
    }
    const VectorField2D w0 = diffusive_flux(u, config_.coeffs, work);
    const std::vector<double> gf = alignment_weight(u, config_.coeffs, ell_);

    VectorField2D w = w0;
    const double tol = 1e-8;
    const int max_iter = 500;
    const double mix = 0.7;  // light damping: full steps can oscillate near kinks
    double update = 0.0;
    int used = 0;
    for (int it = 1; it <= max_iter; ++it) {
        const LambdaField lam =
            normalize_flux(convolve_components(w, spectral_kernel_, work));
        update = 0.0;
        for (std::size_t k = 0; k < w.x.size(); ++k) {
            const double tx = w0.x[k] + gf[k] * lam.lambda.x[k];
            const double ty = w0.y[k] + gf[k] * lam.lambda.y[k];
            const double nx = (1.0 - mix) * w.x[k] + mix * tx;
            const double ny = (1.0 - mix) * w.y[k] + mix * ty;
            update = std::max(update, std::abs(nx - w.x[k]));
            update = std::max(update, std::abs(ny - w.y[k]));
            w.x[k] = nx;
            w.y[k] = ny;
        }
        used = it;
        if (update <= tol) break;
    }
    align_stats_.max_fixed_point_iterations =
        std::max(align_stats_.max_fixed_point_iterations, used);
    align_stats_.worst_final_update = std::max(align_stats_.worst_final_update, update);
    if (update > tol)
        throw SolverError("alignment flux fixed point stalled: update " +
                          std::to_string(update) + " after " + std::to_string(used) +
                          " iterations");
    return w;
}

ScalarField2D AlignedSolver::step(const ScalarField2D& u, double dt) {
    if (dt <= 0.0) dt = config_.dt;
    SpectralWorkspace& work = base_.workspace();
    const VectorField2D w = resolve_flux(u);
    last_w_ = w;

    // alignment part of the settled flux, frozen over the step
    const LambdaField lam = normalize_flux(convolve_components(w, spectral_kernel_, work));
    align_stats_.degenerate_cells_last = lam.degenerate_count;
    const std::vector<double> gf = alignment_weight(u, config_.coeffs, ell_);
    VectorField2D source(u.grid);
    for (std::size_t k = 0; k < source.x.size(); ++k) {
        source.x[k] = gf[k] * lam.lambda.x[k];
        source.y[k] = gf[k] * lam.lambda.y[k];
    }
    const ScalarField2D div_s = work.divergence(source);
    ScalarField2D rhs = u;
    for (std::size_t k = 0; k < rhs.v.size(); ++k) rhs.v[k] -= dt * div_s.v[k];
    return base_.step_implicit_with_source(u, rhs, dt);
}

Trajectory AlignedSolver::solve(const ScalarField2D& u0,
                                const std::vector<StepObserver>& observers) {
    align_stats_ = AlignStats{};
    return base_.solve_with(
        u0, [this](const ScalarField2D& u, double h) { return step(u, h); }, observers);
}

}  // namespace levyswarm
