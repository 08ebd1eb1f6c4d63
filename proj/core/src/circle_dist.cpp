#include "levyswarm/circle_dist.hpp"

#include <cmath>

#include "levyswarm/errors.hpp"
#include "levyswarm/special.hpp"

namespace levyswarm {

CircleDist::CircleDist(double kappa) : kappa_(kappa) {
    if (kappa < 0.0) throw ValidationError("circle distribution needs kappa >= 0");
    // density is written exp(kappa (cos t - 1)) / (2 pi i0e(kappa)) so that
    // large concentrations never overflow
    log_norm_ = std::log(2.0 * M_PI * bessel_i0e(kappa));
}

CircleDist CircleDist::von_mises(double kappa) { return CircleDist(kappa); }

double CircleDist::density(double theta) const {
    return std::exp(kappa_ * (std::cos(theta) - 1.0) - log_norm_);
}

double CircleDist::mean_cosine() const {
    if (kappa_ == 0.0) return 0.0;
    return bessel_i1e(kappa_) / bessel_i0e(kappa_);
}

double CircleDist::sample(RngStream& rng) const {
    if (kappa_ < 1e-8) {
        return M_PI * (1.0 - 2.0 * rng.uniform());
    }
    // Best & Fisher wrapped-Cauchy envelope rejection
    const double a = 1.0 + std::sqrt(1.0 + 4.0 * kappa_ * kappa_);
    const double b = (a - std::sqrt(2.0 * a)) / (2.0 * kappa_);
    const double r = (1.0 + b * b) / (2.0 * b);

    for (;;) {
        const double z = std::cos(M_PI * rng.uniform());
        const double f = (1.0 + r * z) / (r + z);
        const double cc = kappa_ * (r - f);
        const double u2 = rng.uniform_open0();
        if (cc * (2.0 - cc) - u2 > 0.0 || std::log(cc / u2) + 1.0 - cc >= 0.0) {
            const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
            return sign * std::acos(f);
        }
    }
}

} // namespace levyswarm
