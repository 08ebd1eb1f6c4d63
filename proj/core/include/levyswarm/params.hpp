#pragma once

#include <string>

namespace levyswarm {

struct Rect {
    double lx = 1.0;
    double ly = 1.0;
    double area() const { return lx * ly; }
};

// Physical and behavioural parameters of the walker model.  Everything the
// closure formulas and the simulators consume lives here.
struct ModelParams {
    double alpha = 1.5;        // run-time tail exponent, open interval (1,2)
    double sigma0 = 1.0;       // run-time scale of the unscaled law
    double c = 1.0;            // walker speed
    double c0 = 1.0;           // scaled speed c * eps^gamma once a scaling is chosen
    double zeta = 1.0;         // probability a stop event is a tumble (else align)
    double nu1 = 0.0;          // mean cosine of the tumble kernel
    double ell = 0.0;          // alignment flux weight in the parabolic model
    double kappa_tumble = 0.0; // von Mises concentration of the tumble kernel
    double kappa_align = 0.0;  // von Mises concentration around the local mean direction
    double rho_diam = 1.0;     // robot diameter (collision distance)
    int n_robots = 1;
    Rect arena;

    static constexpr int dim = 2;

    // Throws ValidationError naming the violated inequality.
    void validate() const;

    // Keeps nu1 consistent with a von Mises tumble kernel of the given
    // concentration (kappa = 0 recovers the uniform kernel, nu1 = 0).
    void set_tumble_kappa(double kappa);
};

// Exponents of the parabolic space/time/run-time scaling.  epsilon is the
// small parameter, gamma the speed-scaling exponent.
struct ScalingParams {
    double epsilon = 0.0;
    double gamma = 0.0;
    double mu = 0.0;             // run-time exponent (1 - alpha(1-gamma))/(alpha-1)
    double eta = 0.0;            // equals -gamma
    double xi_minus_theta = 0.0; // 1 - gamma/(alpha-1), must be negative
};

// Checks the admissibility of (alpha, gamma, epsilon) and returns the derived
// exponents.  Throws ValidationError naming the violated inequality.
ScalingParams validate_scaling(double alpha, double gamma, double epsilon);

// Run-time scale of the scaled law: sigma0 * eps^mu.
double scaled_run_scale(double sigma0, const ScalingParams& s);

// Scaled speed entering the macroscopic coefficients: c * eps^gamma.
double scaled_speed(double c, const ScalingParams& s);

} // namespace levyswarm
