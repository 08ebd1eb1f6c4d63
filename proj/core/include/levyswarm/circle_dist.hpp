#pragma once

#include "levyswarm/rng.hpp"

namespace levyswarm {

// A symmetric probability density on the circle, parameterized by the angle
// offset from a reference direction.  density(theta) integrates to 1 over
// [-pi, pi].  kappa = 0 is the uniform distribution, kappa > 0 the von Mises
// distribution exp(kappa cos theta) / (2 pi I0(kappa)).
class CircleDist {
public:
    static CircleDist uniform() { return CircleDist(0.0); }
    static CircleDist von_mises(double kappa);

    double density(double theta) const;

    // Mean cosine E[cos theta] = I1(kappa)/I0(kappa); 0 for uniform.
    double mean_cosine() const;

    // Draws an angle offset in (-pi, pi].  Best-Fisher rejection sampling for
    // the von Mises case.
    double sample(RngStream& rng) const;

    double kappa() const { return kappa_; }

private:
    explicit CircleDist(double kappa);

    double kappa_;
    double log_norm_; // log of 2 pi I0(kappa), computed in scaled form
};

} // namespace levyswarm
