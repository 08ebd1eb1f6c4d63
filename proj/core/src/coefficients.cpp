#include "levyswarm/coefficients.hpp"

#include <cmath>
#include <sstream>

#include "levyswarm/errors.hpp"
#include "levyswarm/quadrature.hpp"

namespace levyswarm {

namespace {

constexpr double kSArea = 2.0 * M_PI;

void require_alpha(double alpha) {
    if (!(alpha > 1.0 && alpha < 2.0)) {
        std::ostringstream os;
        os << "alpha = " << alpha << " violates 1 < alpha < 2";
        throw ValidationError(os.str());
    }
}

void check_normalized(const CircleDensity& density) {
    QuadResult q = integrate(density, -M_PI, M_PI);
    if (!q.converged || std::abs(q.value - 1.0) > 1e-8) {
        std::ostringstream os;
        os << "alignment density integrates to " << q.value << ", expected 1 within 1e-8";
        throw ValidationError(os.str());
    }
}

CircleDensity as_density(const CircleDist& dist) {
    return [dist](double t) { return dist.density(t); };
}

} // namespace

double collision_b() {
    QuadResult q = integrate([](double s) { return 2.0 * std::abs(std::sin(0.5 * s)); },
                             0.0, 2.0 * M_PI);
    return q.value;
}

double closure_z(const CircleDensity& align_density) {
    check_normalized(align_density);
    QuadResult q = integrate([&](double t) { return align_density(t) * std::cos(t); },
                             -M_PI, M_PI);
    return q.value;
}

double closure_z(const CircleDist& align_dist) { return closure_z(as_density(align_dist)); }

AngularMoments closure_moments(const CircleDensity& align_density) {
    check_normalized(align_density);
    QuadResult q0 = integrate(
        [&](double t) {
            const double ct = std::cos(t);
            return align_density(t) * ct * ct;
        },
        -M_PI, M_PI);
    QuadResult q1 = integrate(
        [&](double t) {
            const double st = std::sin(t);
            return align_density(t) * st * st;
        },
        -M_PI, M_PI);
    return {q0.value, q1.value, q0.value - q1.value};
}

AngularMoments closure_moments(const CircleDist& align_dist) {
    return closure_moments(as_density(align_dist));
}

double diffusion_constant(const ModelParams& p) {
    require_alpha(p.alpha);
    p.validate();
    const double S = kSArea;
    const double am1 = p.alpha - 1.0;
    const double front = std::pow(p.sigma0, p.alpha - 2.0) * std::pow(p.c0, am1) * am1 * am1 *
                         M_PI / (std::sin(M_PI * p.alpha) * std::tgamma(p.alpha));
    return -front * (S - 4.0 * p.zeta * p.nu1) / (S * S);
}

MobilityTerms mobility_terms(const ModelParams& p, double collision_prefactor) {
    require_alpha(p.alpha);
    p.validate();
    if (collision_prefactor != 8.0 / 3.0 && collision_prefactor != 4.0 / 3.0) {
        std::ostringstream os;
        os << "collision_prefactor = " << collision_prefactor << " must be 8/3 or 4/3";
        throw ValidationError(os.str());
    }
    const double S = kSArea;
    const double n = static_cast<double>(ModelParams::dim);
    MobilityTerms m;
    m.f_const = (p.alpha - 1.0) * n * (1.0 - p.zeta * p.nu1) / (p.sigma0 * S);
    m.f_slope = collision_prefactor * collision_b() * p.c0 / (S * S);
    return m;
}

double alignment_g_slope(const ModelParams& p, double z) {
    require_alpha(p.alpha);
    return (1.0 - p.zeta) * kSArea * z * (p.alpha - 1.0) / p.sigma0;
}

HyperCoeffs hyperbolic_coeffs(const CircleDist& align_dist, double zeta, double c0) {
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw ValidationError("zeta must be in [0,1]");
    if (!(c0 > 0.0)) throw ValidationError("c0 must be > 0");
    HyperCoeffs h{};
    h.z = closure_z(align_dist);
    const AngularMoments m = closure_moments(align_dist);
    h.a0 = m.a0;
    h.a1 = m.a1;
    h.a3 = m.a3;
    h.cc0 = h.z * (1.0 - zeta);
    h.cc1 = c0 * (1.0 - zeta) * m.a3;
    h.cc2 = c0 * (1.0 - zeta) * m.a1 + c0 * M_PI * zeta;
    h.degenerate = std::abs(h.cc0) < 1e-12;
    return h;
}

LaplaceConstants laplace_constants(double alpha, double sigma0) {
    require_alpha(alpha);
    if (!(sigma0 > 0.0)) throw ValidationError("sigma0 must be > 0");
    const double am1 = alpha - 1.0;
    LaplaceConstants lc;
    lc.a = am1 / sigma0;
    lc.b = -std::pow(sigma0, alpha - 2.0) * am1 * am1 * std::tgamma(1.0 - alpha);
    return lc;
}

ClosureCoeffs compute_closure(const ModelParams& p, double collision_prefactor) {
    ClosureCoeffs c;
    c.alpha = p.alpha;
    c.c0 = p.c0;
    c.zeta = p.zeta;
    c.s_area = kSArea;
    c.b = collision_b();
    c.c_alpha = diffusion_constant(p);
    const MobilityTerms m = mobility_terms(p, collision_prefactor);
    c.f_const = m.f_const;
    c.f_slope = m.f_slope;

    const CircleDist align = p.kappa_align == 0.0 ? CircleDist::uniform()
                                                  : CircleDist::von_mises(p.kappa_align);
    c.z = closure_z(align);
    const AngularMoments am = closure_moments(align);
    c.a0 = am.a0;
    c.a1 = am.a1;
    c.a3 = am.a3;
    c.g_slope = alignment_g_slope(p, c.z);

    const HyperCoeffs h = hyperbolic_coeffs(align, p.zeta, p.c0);
    c.cc0 = h.cc0;
    c.cc1 = h.cc1;
    c.cc2 = h.cc2;
    c.degenerate_closure = h.degenerate;

    const LaplaceConstants lc = laplace_constants(p.alpha, p.sigma0);
    c.laplace_a = lc.a;
    c.laplace_b = lc.b;
    return c;
}

} // namespace levyswarm
