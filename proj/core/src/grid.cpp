#include "levyswarm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levyswarm/errors.hpp"

namespace levyswarm {

void Grid2D::validate() const {
    if (nx < 16 || ny < 16 || nx % 2 != 0 || ny % 2 != 0)
        throw ValidationError("grid dimensions " + std::to_string(nx) + "x" +
                              std::to_string(ny) + " violate: nx, ny even and >= 16");
    if (!(lx > 0.0) || !(ly > 0.0))
        throw ValidationError("grid extent must satisfy lx > 0 and ly > 0");
}

double ScalarField2D::integral() const {
    double s = 0.0;
    for (double value : v) s += value;
    return s * grid.cell_area();
}

double ScalarField2D::mean() const {
    double s = 0.0;
    for (double value : v) s += value;
    return s / static_cast<double>(v.size());
}

double ScalarField2D::min_value() const {
    return *std::min_element(v.begin(), v.end());
}

double ScalarField2D::max_value() const {
    return *std::max_element(v.begin(), v.end());
}

double ScalarField2D::l1_norm() const {
    double s = 0.0;
    for (double value : v) s += std::abs(value);
    return s * grid.cell_area();
}

double ScalarField2D::l2_norm() const {
    double s = 0.0;
    for (double value : v) s += value * value;
    return std::sqrt(s * grid.cell_area());
}

double ScalarField2D::linf_distance(const ScalarField2D& o) const {
    double m = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k)
        m = std::max(m, std::abs(v[k] - o.v[k]));
    return m;
}

void ScalarField2D::require_finite(const char* what) const {
    for (double value : v)
        if (!std::isfinite(value))
            throw ValidationError(std::string(what) + " contains a non-finite value");
}

void ScalarField2D::require_nonnegative(const char* what) const {
    for (double value : v)
        if (value < 0.0)
            throw ValidationError(std::string(what) + " contains a negative value");
}

void VectorField2D::require_finite(const char* what) const {
    for (double value : x)
        if (!std::isfinite(value))
            throw ValidationError(std::string(what) + " contains a non-finite value");
    for (double value : y)
        if (!std::isfinite(value))
            throw ValidationError(std::string(what) + " contains a non-finite value");
}

}  // namespace levyswarm
