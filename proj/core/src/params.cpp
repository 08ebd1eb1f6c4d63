#include "levyswarm/params.hpp"

#include <cmath>
#include <sstream>

#include "levyswarm/errors.hpp"
#include "levyswarm/special.hpp"

namespace levyswarm {

namespace {

[[noreturn]] void fail(const std::string& what) { throw ValidationError(what); }

} // namespace

void ModelParams::validate() const {
    std::ostringstream os;
    if (!(alpha > 1.0 && alpha < 2.0)) {
        os << "alpha = " << alpha << " violates 1 < alpha < 2";
        fail(os.str());
    }
    if (!(zeta >= 0.0 && zeta <= 1.0)) {
        os << "zeta = " << zeta << " violates 0 <= zeta <= 1";
        fail(os.str());
    }
    if (!(sigma0 > 0.0)) {
        os << "sigma0 = " << sigma0 << " violates sigma0 > 0";
        fail(os.str());
    }
    if (!(c > 0.0)) {
        os << "c = " << c << " violates c > 0";
        fail(os.str());
    }
    if (!(c0 > 0.0)) {
        os << "c0 = " << c0 << " violates c0 > 0";
        fail(os.str());
    }
    if (!(rho_diam > 0.0)) {
        os << "rho_diam = " << rho_diam << " violates rho_diam > 0";
        fail(os.str());
    }
    if (!(nu1 >= 0.0 && nu1 < 1.0)) {
        os << "nu1 = " << nu1 << " violates 0 <= nu1 < 1";
        fail(os.str());
    }
    if (n_robots < 1) {
        os << "n_robots = " << n_robots << " violates n_robots >= 1";
        fail(os.str());
    }
    if (!(arena.lx > 0.0) || !(arena.ly > 0.0)) {
        os << "arena " << arena.lx << " x " << arena.ly << " violates lx, ly > 0";
        fail(os.str());
    }
}

void ModelParams::set_tumble_kappa(double kappa) {
    if (kappa < 0.0) fail("kappa_tumble must be >= 0");
    kappa_tumble = kappa;
    nu1 = (kappa == 0.0) ? 0.0 : bessel_i1e(kappa) / bessel_i0e(kappa);
}

ScalingParams validate_scaling(double alpha, double gamma, double epsilon) {
    std::ostringstream os;
    if (!(alpha > 1.0 && alpha < 2.0)) {
        os << "alpha = " << alpha << " violates 1 < alpha < 2";
        fail(os.str());
    }
    if (!(gamma > 0.0 && gamma <= 1.0)) {
        os << "gamma = " << gamma << " violates 0 < gamma <= 1";
        fail(os.str());
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        os << "epsilon = " << epsilon << " violates 0 < epsilon < 1";
        fail(os.str());
    }

    ScalingParams s;
    s.epsilon = epsilon;
    s.gamma = gamma;
    s.mu = (1.0 - alpha * (1.0 - gamma)) / (alpha - 1.0);
    s.eta = -gamma;
    s.xi_minus_theta = 1.0 - gamma / (alpha - 1.0);

    if (!(s.mu > 0.0)) {
        os << "mu = " << s.mu << " violates mu > 0 (needs gamma > (alpha-1)/alpha = "
           << (alpha - 1.0) / alpha << ")";
        fail(os.str());
    }
    if (!(s.xi_minus_theta < 0.0)) {
        os << "xi - theta = " << s.xi_minus_theta
           << " violates xi - theta < 0 (needs gamma > alpha - 1 = " << alpha - 1.0 << ")";
        fail(os.str());
    }
    return s;
}

double scaled_run_scale(double sigma0, const ScalingParams& s) {
    return sigma0 * std::pow(s.epsilon, s.mu);
}

double scaled_speed(double c, const ScalingParams& s) {
    return c * std::pow(s.epsilon, s.gamma);
}

} // namespace levyswarm
