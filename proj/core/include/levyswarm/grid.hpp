#pragma once

#include <cstddef>
#include <vector>

#include "levyswarm/vec2.hpp"

namespace levyswarm {

enum class BoundaryMode {
    periodic,
    neumann_mirror,  // zero-flux walls via even mirror extension to a doubled grid
};

// Uniform rectangular cell grid.  Cell (i, j) is centered at
// ((i + 0.5) dx, (j + 0.5) dy); fields live at cell centers.
struct Grid2D {
    int nx = 0;
    int ny = 0;
    double lx = 0.0;  // physical extent (cm)
    double ly = 0.0;
    BoundaryMode boundary = BoundaryMode::periodic;

    // throws ValidationError unless nx, ny are even and >= 16 and lx, ly > 0
    void validate() const;

    double dx() const { return lx / nx; }
    double dy() const { return ly / ny; }
    double cell_area() const { return dx() * dy(); }
    double area() const { return lx * ly; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

    double x_center(int i) const { return (i + 0.5) * dx(); }
    double y_center(int j) const { return (j + 0.5) * dy(); }

    bool same_shape(const Grid2D& o) const {
        return nx == o.nx && ny == o.ny && lx == o.lx && ly == o.ly &&
               boundary == o.boundary;
    }
};

// Scalar cell-center field, row-major with x fastest: v[j * nx + i].
struct ScalarField2D {
    Grid2D grid;
    std::vector<double> v;

    ScalarField2D() = default;
    explicit ScalarField2D(const Grid2D& g) : grid(g), v(g.size(), 0.0) {}

    double& at(int i, int j) { return v[static_cast<std::size_t>(j) * grid.nx + i]; }
    double at(int i, int j) const { return v[static_cast<std::size_t>(j) * grid.nx + i]; }

    double integral() const;        // sum * cell area
    double mean() const;
    double min_value() const;
    double max_value() const;
    double l1_norm() const;         // integral of |v|
    double l2_norm() const;         // sqrt(integral of v^2)
    double linf_distance(const ScalarField2D& o) const;

    // ingestion checks for fields used as densities
    void require_finite(const char* what) const;      // ValidationError on NaN/inf
    void require_nonnegative(const char* what) const; // ValidationError on v < 0
};

// Vector cell-center field stored as two scalar components on a shared grid.
struct VectorField2D {
    Grid2D grid;
    std::vector<double> x;
    std::vector<double> y;

    VectorField2D() = default;
    explicit VectorField2D(const Grid2D& g)
        : grid(g), x(g.size(), 0.0), y(g.size(), 0.0) {}

    Vec2 at(int i, int j) const {
        const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
        return {x[k], y[k]};
    }
    void set(int i, int j, Vec2 value) {
        const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
        x[k] = value.x;
        y[k] = value.y;
    }

    void require_finite(const char* what) const;
};

}  // namespace levyswarm
