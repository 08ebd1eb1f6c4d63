#pragma once

#include <vector>

#include "levyswarm/rng.hpp"

namespace levyswarm {

// Heavy-tailed run-time law with survival function (a/(a+tau))^alpha.
// Runs have finite mean a/(alpha-1) but infinite variance for alpha < 2,
// which is what makes the walk superdiffusive.
struct RunTimeLaw {
    double alpha = 1.5;
    double a = 1.0; // time scale: sigma0 for the bare law, sigma0 eps^mu when scaled

    RunTimeLaw(double alpha_, double a_);

    double survival(double tau) const;      // P(run > tau)
    double stopping_rate(double tau) const; // alpha / (a + tau)
    double mean_run() const { return a / (alpha - 1.0); }

    // Inverse-CDF draw: tau = a (U^(-1/alpha) - 1) with U uniform on (0,1].
    double sample(RngStream& rng) const;
};

// One evaluation point of the Laplace-domain consistency check: the ratio of
// the Laplace transforms of the run-time density and survival function,
// computed by quadrature, against its closed-form small-lambda truncation
//   (alpha-1)/a - lambda/(2-alpha) - a^(alpha-2) lambda^(alpha-1) (alpha-1)^2 Gamma(1-alpha).
// The leftover residual is dominated by the square of the fractional term:
// it scales like lambda^(2(alpha-1)) with coefficient B^2/A (see the tests),
// which sits below the lambda^alpha remainder of the expansion itself for
// every alpha in (1,2).
struct LaplacePoint {
    double lambda = 0.0;
    double quadrature_value = 0.0;
    double truncation_value = 0.0;
    double residual = 0.0;
    double rel_residual = 0.0;
    bool quadrature_converged = false;
};

struct LaplaceReport {
    std::vector<LaplacePoint> points;
    bool all_converged = false;
};

// Laplace transform of the survival function by adaptive quadrature.  The
// integrand is truncated where survival drops below 1e-12 of its value at 0.
double laplace_of_survival(const RunTimeLaw& law, double lambda, bool* converged = nullptr);

// Laplace transform of the run-time density -d survival/d tau.
double laplace_of_density(const RunTimeLaw& law, double lambda, bool* converged = nullptr);

LaplaceReport verify_laplace_expansion(double alpha, double a,
                                       const std::vector<double>& lambdas);

} // namespace levyswarm
