#include "levyswarm/special.hpp"

#include <cmath>

namespace levyswarm {

namespace {

// Large-argument asymptotic series:
//   I_nu(x) ~ e^x / sqrt(2 pi x) * sum_k (-1)^k a_k(nu) / x^k,
//   a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j-1)^2) / (k! 8^k).
double i_scaled_asymptotic(double nu, double x) {
    const double fournu2 = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 20; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(fournu2 - odd * odd) / (8.0 * x * k);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * M_PI * x);
}

double i_scaled(int n, double x) {
    if (x < 0.0) x = -x; // I_n is even for integer n
    if (x < 600.0) return std::exp(-x) * std::cyl_bessel_i(static_cast<double>(n), x);
    return i_scaled_asymptotic(static_cast<double>(n), x);
}

} // namespace

double bessel_i0e(double x) { return i_scaled(0, x); }
double bessel_i1e(double x) { return i_scaled(1, x); }
double bessel_i2e(double x) { return i_scaled(2, x); }

} // namespace levyswarm
