#pragma once

namespace levyswarm {

// Exponentially scaled modified Bessel functions exp(-x) * I_n(x) for x >= 0.
// The scaling keeps the von Mises normalization finite for arbitrarily large
// concentration, where I_n(x) itself overflows around x ~ 709.
double bessel_i0e(double x);
double bessel_i1e(double x);
double bessel_i2e(double x);

} // namespace levyswarm
