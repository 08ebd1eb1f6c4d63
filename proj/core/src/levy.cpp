#include "levyswarm/levy.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "levyswarm/errors.hpp"
#include "levyswarm/quadrature.hpp"

namespace levyswarm {

RunTimeLaw::RunTimeLaw(double alpha_, double a_) : alpha(alpha_), a(a_) {
    std::ostringstream os;
    if (!(alpha > 1.0 && alpha < 2.0)) {
        os << "alpha = " << alpha << " violates 1 < alpha < 2";
        throw ValidationError(os.str());
    }
    if (!(a > 0.0)) {
        os << "run-time scale a = " << a << " violates a > 0";
        throw ValidationError(os.str());
    }
}

double RunTimeLaw::survival(double tau) const {
    if (tau < 0.0) throw ValidationError("survival needs tau >= 0");
    return std::pow(a / (a + tau), alpha);
}

double RunTimeLaw::stopping_rate(double tau) const {
    if (tau < 0.0) throw ValidationError("stopping_rate needs tau >= 0");
    return alpha / (a + tau);
}

double RunTimeLaw::sample(RngStream& rng) const {
    const double u = rng.uniform_open0();
    return a * (std::pow(u, -1.0 / alpha) - 1.0);
}

namespace {

// Integrates f over [0, tau_max] where tau_max is the point at which the
// survival function has decayed to 1e-12.  Panels: [0, a], then dyadic
// doubling; each panel adaptively refined.
double laplace_quad(const RunTimeLaw& law, const std::function<double(double)>& f,
                    bool* converged) {
    const double tau_max = law.a * (std::pow(1e12, 1.0 / law.alpha) - 1.0);
    QuadOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-12;

    bool ok = true;
    double total = 0.0;
    double lo = 0.0;
    double hi = law.a;
    while (lo < tau_max) {
        hi = std::min(hi, tau_max);
        QuadResult q = integrate(f, lo, hi, opt);
        total += q.value;
        ok = ok && q.converged;
        lo = hi;
        hi = 2.0 * hi;
    }
    if (converged) *converged = ok;
    return total;
}

} // namespace

double laplace_of_survival(const RunTimeLaw& law, double lambda, bool* converged) {
    return laplace_quad(
        law, [&](double tau) { return std::exp(-lambda * tau) * law.survival(tau); },
        converged);
}

double laplace_of_density(const RunTimeLaw& law, double lambda, bool* converged) {
    const double aa = law.a;
    const double al = law.alpha;
    return laplace_quad(
        law,
        [&](double tau) {
            // density = -survival' = alpha a^alpha / (a+tau)^(alpha+1)
            return std::exp(-lambda * tau) * al * std::pow(aa, al) /
                   std::pow(aa + tau, al + 1.0);
        },
        converged);
}

LaplaceReport verify_laplace_expansion(double alpha, double a,
                                       const std::vector<double>& lambdas) {
    RunTimeLaw law(alpha, a);
    LaplaceReport report;
    report.all_converged = true;

    const double gam = std::tgamma(1.0 - alpha); // negative for alpha in (1,2)
    for (double lambda : lambdas) {
        if (!(lambda > 0.0)) throw ValidationError("lambda grid must be positive");
        LaplacePoint pt;
        pt.lambda = lambda;

        bool ok_psi = false, ok_phi = false;
        const double psi_hat = laplace_of_survival(law, lambda, &ok_psi);
        const double phi_hat = laplace_of_density(law, lambda, &ok_phi);
        pt.quadrature_converged = ok_psi && ok_phi;
        report.all_converged = report.all_converged && pt.quadrature_converged;

        pt.quadrature_value = phi_hat / psi_hat;
        pt.truncation_value = (alpha - 1.0) / a - lambda / (2.0 - alpha) -
                              std::pow(a, alpha - 2.0) * std::pow(lambda, alpha - 1.0) *
                                  (alpha - 1.0) * (alpha - 1.0) * gam;
        pt.residual = std::abs(pt.quadrature_value - pt.truncation_value);
        pt.rel_residual = pt.residual / std::abs(pt.truncation_value);
        report.points.push_back(pt);
    }
    return report;
}

} // namespace levyswarm
