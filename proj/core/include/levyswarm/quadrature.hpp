#pragma once

#include <functional>

namespace levyswarm {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error
    long evaluations = 0;
    bool converged = false;
};

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    long max_evaluations = 2'000'000;
};

// Adaptive Gauss-Kronrod (7,15) on a finite interval.  Segments are kept in
// a worst-error-first queue and bisected until the summed error estimate
// meets max(abs_tol, rel_tol * |integral|) or the evaluation budget runs out.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadOptions& opt = {});

} // namespace levyswarm
