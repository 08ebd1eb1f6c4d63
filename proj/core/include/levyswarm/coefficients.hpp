#pragma once

#include <functional>

#include "levyswarm/circle_dist.hpp"
#include "levyswarm/params.hpp"

namespace levyswarm {

// Closure constants of the macroscopic equations, all derived from the model
// parameters and the angular distributions by quadrature or closed form.
struct ClosureCoeffs {
    double alpha = 0.0;   // input echo: tail exponent, microscopic speed scale,
    double c0 = 0.0;      // and tumble probability (solvers downstream need them
    double zeta = 0.0;    // next to the derived constants)

    double s_area = 0.0;  // circumference of the unit circle, |S| = 2 pi

    double c_alpha = 0.0; // fractional diffusion constant
    double f_const = 0.0; // mobility denominator F(u) = f_const + f_slope * u
    double f_slope = 0.0;
    double g_slope = 0.0; // alignment numerator G(u) = g_slope * u

    double z = 0.0;       // first moment of the alignment distribution
    double a0 = 0.0;      // second angular moments of the alignment distribution
    double a1 = 0.0;
    double a3 = 0.0;      // a0 - a1

    double cc0 = 0.0;     // hyperbolic system coefficients
    double cc1 = 0.0;
    double cc2 = 0.0;
    bool degenerate_closure = false; // |cc0| < 1e-12: no transported direction

    double b = 0.0;       // collision cross-section integral, equals 8

    double laplace_a = 0.0; // leading Laplace-expansion constants of the run law
    double laplace_b = 0.0;
};

// Integral of 2 |sin(s/2)| over a full circle (collision cross-section
// factor).  Evaluates to 8 exactly; computed by quadrature.
double collision_b();

// A density on the circle as a plain function of the angle offset from the
// mean direction, theta in [-pi, pi].
using CircleDensity = std::function<double(double)>;

// First moment integral z = int density(theta) cos(theta) dtheta.  Rejects a
// density whose integral deviates from 1 by more than 1e-8.
double closure_z(const CircleDensity& align_density);
double closure_z(const CircleDist& align_dist);

// Second angular moments of the alignment distribution:
//   a0 = int density cos^2, a1 = int density sin^2, a3 = a0 - a1.
struct AngularMoments {
    double a0, a1, a3;
};
AngularMoments closure_moments(const CircleDensity& align_density);
AngularMoments closure_moments(const CircleDist& align_dist);

// Fractional diffusion constant
//   C_alpha = -sigma0^(alpha-2) c0^(alpha-1) (alpha-1)^2 pi
//             / (sin(pi alpha) Gamma(alpha)) * (|S| - 4 zeta nu1) / |S|^2.
double diffusion_constant(const ModelParams& p);

// Mobility denominator terms: F(u) = f_const + f_slope * u with
//   f_const = (alpha-1) n (1 - zeta nu1) / (sigma0 |S|),
//   f_slope = collision_prefactor * b * c0 / |S|^2.
// collision_prefactor must be 8/3 (default) or 4/3.
struct MobilityTerms {
    double f_const, f_slope;
};
MobilityTerms mobility_terms(const ModelParams& p, double collision_prefactor = 8.0 / 3.0);

// Alignment numerator G(u) = g_slope * u with
//   g_slope = (1 - zeta) |S| z (alpha - 1) / sigma0.
double alignment_g_slope(const ModelParams& p, double z);

// Hyperbolic-regime coefficients:
//   cc0 = z (1 - zeta), cc1 = c0 (1 - zeta) a3, cc2 = c0 (1 - zeta) a1 + c0 pi zeta.
// Marks the closure degenerate when |cc0| < 1e-12 (e.g. uniform alignment
// distribution), in which case the orientation equation has no time scale.
struct HyperCoeffs {
    double cc0, cc1, cc2;
    double z, a0, a1, a3;
    bool degenerate;
};
HyperCoeffs hyperbolic_coeffs(const CircleDist& align_dist, double zeta, double c0);

// Leading constants of the Laplace expansion of the run-time law:
//   A = (alpha-1)/sigma0,  B = -sigma0^(alpha-2) (alpha-1)^2 Gamma(1-alpha).
struct LaplaceConstants {
    double a, b;
};
LaplaceConstants laplace_constants(double alpha, double sigma0);

// Everything at once, as consumed by the solvers and the coefficient report.
ClosureCoeffs compute_closure(const ModelParams& p,
                              double collision_prefactor = 8.0 / 3.0);

} // namespace levyswarm
