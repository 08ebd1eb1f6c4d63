#include "levyswarm/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levyswarm/errors.hpp"

namespace levyswarm {

void normalize_lambda(VectorField2D& lambda) {
    for (std::size_t k = 0; k < lambda.x.size(); ++k) {
        const double m = std::hypot(lambda.x[k], lambda.y[k]);
        if (!(m > 0.0))
            throw ValidationError("direction field has a zero vector at cell " +
                                  std::to_string(k));
        lambda.x[k] /= m;
        lambda.y[k] /= m;
    }
}

namespace {

void check_step(const HyperState& state, const ClosureCoeffs& coeffs, double dt) {
    const Grid2D& grid = state.u.grid;
    grid.validate();
    if (grid.boundary != BoundaryMode::periodic)
        throw ValidationError("the swarming solver supports periodic grids only");
    if (!state.lambda.grid.same_shape(grid))
        throw ValidationError("direction field grid does not match the density grid");
    if (coeffs.degenerate_closure || std::abs(coeffs.cc0) < 1e-12)
        throw ValidationError("degenerate closure: |cc0| < 1e-12, no direction dynamics");
    if (!(dt > 0.0)) throw ValidationError("hyper dt must be positive");
    const double speed = std::abs(coeffs.c0 * coeffs.cc0);
    const double h = std::min(grid.dx(), grid.dy());
    if (speed * dt > 0.5 * h)
        throw ValidationError("CFL violation: c0 cc0 dt = " + std::to_string(speed * dt) +
                              " exceeds half the cell size " + std::to_string(0.5 * h));
    for (std::size_t k = 0; k < state.lambda.x.size(); ++k) {
        const double m = std::hypot(state.lambda.x[k], state.lambda.y[k]);
        if (std::abs(m - 1.0) > 1e-12)
            throw ValidationError("direction field is not unit length at cell " +
                                  std::to_string(k));
    }
}

}  // namespace

HyperState hyper_step(const HyperState& state, const ClosureCoeffs& coeffs, double dt,
                      HyperStats* stats) {
    check_step(state, coeffs, dt);
    const Grid2D& grid = state.u.grid;
    const int nx = grid.nx, ny = grid.ny;
    const double dx = grid.dx(), dy = grid.dy();
    const double v0 = coeffs.c0 * coeffs.cc0;   // transport velocity scale
    const double adv = coeffs.cc1 / coeffs.cc0; // direction self-advection speed
    const double prs = coeffs.cc2 / coeffs.cc0; // density-gradient coupling

    const std::vector<double>& u = state.u.v;
    const std::vector<double>& lx = state.lambda.x;
    const std::vector<double>& ly = state.lambda.y;

    HyperState out(grid);
    out.time = state.time + dt;
    std::size_t floor_cells = 0;

    auto id = [nx](int i, int j) { return j * nx + i; };
    auto ip = [nx](int i) { return i + 1 < nx ? i + 1 : 0; };
    auto im = [nx](int i) { return i > 0 ? i - 1 : nx - 1; };
    auto jp = [ny](int j) { return j + 1 < ny ? j + 1 : 0; };
    auto jm = [ny](int j) { return j > 0 ? j - 1 : ny - 1; };

    // upwind fluxes through the right and top faces of each cell
    std::vector<double> fx(u.size()), fy(u.size());
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t k = id(i, j);
            const std::size_t kr = id(ip(i), j);
            const std::size_t kt = id(i, jp(j));
            const double vxf = v0 * 0.5 * (lx[k] + lx[kr]);
            const double vyf = v0 * 0.5 * (ly[k] + ly[kt]);
            fx[k] = vxf > 0.0 ? vxf * u[k] : vxf * u[kr];
            fy[k] = vyf > 0.0 ? vyf * u[k] : vyf * u[kt];
        }
    }

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const std::size_t k = id(i, j);
            const std::size_t kl = id(im(i), j);
            const std::size_t kb = id(i, jm(j));
            out.u.v[k] = u[k] - dt * ((fx[k] - fx[kl]) / dx + (fy[k] - fy[kb]) / dy);

            const std::size_t kr = id(ip(i), j);
            const std::size_t kt = id(i, jp(j));
            const double dudx = (u[kr] - u[kl]) / (2.0 * dx);
            const double dudy = (u[kt] - u[kb]) / (2.0 * dy);
            const double dlxdx = (lx[kr] - lx[kl]) / (2.0 * dx);
            const double dlxdy = (lx[kt] - lx[kb]) / (2.0 * dy);
            const double dlydx = (ly[kr] - ly[kl]) / (2.0 * dx);
            const double dlydy = (ly[kt] - ly[kb]) / (2.0 * dy);

            const double adv_x = lx[k] * dlxdx + ly[k] * dlxdy;
            const double adv_y = lx[k] * dlydx + ly[k] * dlydy;

            double ug = u[k];
            if (ug < 1e-12) {
                ug = 1e-12;
                ++floor_cells;
            }
            const double gdotl = dudx * lx[k] + dudy * ly[k];
            const double pg_x = dudx - gdotl * lx[k];
            const double pg_y = dudy - gdotl * ly[k];

            const double del_x = dt * (-adv * adv_x - prs * pg_x / ug);
            const double del_y = dt * (-adv * adv_y - prs * pg_y / ug);
            if (del_x == 0.0 && del_y == 0.0) {
                // nothing moved: keep the old direction bit for bit
                out.lambda.x[k] = lx[k];
                out.lambda.y[k] = ly[k];
                continue;
            }
            const double nx_ = lx[k] + del_x;
            const double ny_ = ly[k] + del_y;
            const double m = std::hypot(nx_, ny_);
            if (m > 0.0) {
                out.lambda.x[k] = nx_ / m;
                out.lambda.y[k] = ny_ / m;
            } else {
                // update cancelled the direction entirely; keep the old one
                out.lambda.x[k] = lx[k];
                out.lambda.y[k] = ly[k];
            }
        }
    }

    if (stats) {
        stats->floor_cells_last = floor_cells;
        stats->floor_cells_total += floor_cells;
    }
    return out;
}

HyperState hyper_solve(const HyperState& init, const ClosureCoeffs& coeffs, double dt,
                       double t_end, HyperStats* stats,
                       const std::vector<HyperObserver>& observers) {
    check_step(init, coeffs, dt);
    if (!(t_end >= init.time)) throw ValidationError("hyper t_end precedes the start time");
    init.u.require_finite("density");

    HyperStats local;
    HyperStats* st = stats ? stats : &local;
    *st = HyperStats{};
    st->mass_initial = init.u.integral();
    st->min_density = init.u.min_value();

    HyperState state = init;
    for (const HyperObserver& obs : observers) obs(0, state);

    const double span = t_end - init.time;
    double prev_mass = st->mass_initial;
    int step = 0;
    double elapsed = 0.0;
    while (elapsed < span - 1e-12 * std::max(1.0, span)) {
        const double h = std::min(dt, span - elapsed);
        state = hyper_step(state, coeffs, h, st);
        ++step;
        elapsed = step * dt < span ? step * dt : span;
        state.time = init.time + elapsed;

        st->steps = step;
        const double mass = state.u.integral();
        st->max_mass_drift =
            std::max(st->max_mass_drift,
                     std::abs(mass - prev_mass) / std::max(std::abs(prev_mass), 1e-300));
        prev_mass = mass;
        st->min_density = std::min(st->min_density, state.u.min_value());
        for (const HyperObserver& obs : observers) obs(step, state);
    }
    st->mass_final = state.u.integral();
    return state;
}

ClosureCheckReport closure_check(const CircleDist& align_dist, double zeta, double lambda_x,
                                 double lambda_y, int n_samples, RngStream& rng) {
    if (!(zeta >= 0.0) || !(zeta <= 1.0))
        throw ValidationError("closure check requires zeta in [0, 1]");
    if (n_samples < 1) throw ValidationError("closure check requires n_samples >= 1");
    const double lm = std::hypot(lambda_x, lambda_y);
    if (!(lm > 0.0)) throw ValidationError("closure check requires a nonzero direction");
    const double base = std::atan2(lambda_y / lm, lambda_x / lm);

    double sx = 0.0, sy = 0.0;
    for (int s = 0; s < n_samples; ++s) {
        double theta;
        if (rng.uniform() < zeta) {
            theta = rng.uniform(-M_PI, M_PI);
        } else {
            theta = base + align_dist.sample(rng);
        }
        sx += std::cos(theta);
        sy += std::sin(theta);
    }

    ClosureCheckReport rep;
    rep.n_samples = n_samples;
    rep.moment_x = sx / n_samples;
    rep.moment_y = sy / n_samples;
    const double z = align_dist.mean_cosine();
    rep.expected_x = z * (1.0 - zeta) * lambda_x / lm;
    rep.expected_y = z * (1.0 - zeta) * lambda_y / lm;
    rep.error = std::hypot(rep.moment_x - rep.expected_x, rep.moment_y - rep.expected_y);
    rep.tol = 3.0 / std::sqrt(static_cast<double>(n_samples)) + 1e-3;
    rep.pass = rep.error <= rep.tol;
    return rep;
}

}  // namespace levyswarm
