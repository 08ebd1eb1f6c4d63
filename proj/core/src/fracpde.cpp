#include "levyswarm/fracpde.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "levyswarm/errors.hpp"

namespace levyswarm {

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw ValidationError("solver dt must be positive");
    if (!(t_end >= 0.0)) throw ValidationError("solver t_end must be nonnegative");
    if (!(linear_solver_tol > 0.0))
        throw ValidationError("linear_solver_tol must be positive");
    if (linear_solver_max_iter < 1)
        throw ValidationError("linear_solver_max_iter must be at least 1");
    if (store_every < 0) throw ValidationError("store_every must be nonnegative");
    if (!(coeffs.alpha > 1.0) || !(coeffs.alpha <= 2.0))
        throw ValidationError("solver requires 1 < alpha <= 2");
}

ScalarField2D initial_condition(const Grid2D& grid, double rho_diam, int n_robots,
                                bool normalize_mass) {
    grid.validate();
    if (!(rho_diam > 0.0) || n_robots < 1)
        throw ValidationError("initial condition requires rho_diam > 0 and n_robots >= 1");
    const double scale = rho_diam * n_robots;
    const double cx = 0.5 * grid.lx;
    const double cy = 0.5 * grid.ly;
    ScalarField2D u(grid);
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double dx = grid.x_center(i) - cx;
            const double dy = grid.y_center(j) - cy;
            const double r2 = dx * dx + dy * dy;
            u.at(i, j) = std::max(1.2 * std::exp(-r2 / scale) - 0.2, 0.0);
        }
    }
    if (normalize_mass) {
        const double mass = u.integral();
        if (!(mass > 0.0)) throw ValidationError("initial condition has zero mass");
        for (double& value : u.v) value /= mass;
    }
    return u;
}

double covered_mass(const ScalarField2D& u, double rho_bar) {
    double s = 0.0;
    for (double value : u.v) s += std::min(value, rho_bar);
    return s * u.grid.cell_area();
}

void CoverageAccumulator::add(double t, const ScalarField2D& u) {
    const double m = covered_mass(u, rho_bar_);
    if (!curve_.times.empty()) {
        const double t_prev = curve_.times.back();
        const double m_prev = curve_.covered.back();
        integral_ += 0.5 * (m + m_prev) * (t - t_prev);
    }
    curve_.times.push_back(t);
    curve_.covered.push_back(m);
    curve_.averaged.push_back(t > 0.0 ? integral_ / t : m);
}

CoverageCurve coverage(const Trajectory& traj, const Grid2D& grid) {
    if (traj.fields.empty()) throw ValidationError("coverage of an empty trajectory");
    CoverageAccumulator acc(1.0 / grid.area());
    for (std::size_t k = 0; k < traj.fields.size(); ++k)
        acc.add(traj.times[k], traj.fields[k]);
    return acc.curve();
}

FracDiffusionSolver::FracDiffusionSolver(const Grid2D& grid, const SolverConfig& config)
    : grid_(grid), config_(config), work_(grid), coverage_(1.0 / grid.area()) {
    config_.validate();
}

std::vector<double> FracDiffusionSolver::mobility_field(const ScalarField2D& u) const {
    const ClosureCoeffs& c = config_.coeffs;
    std::vector<double> mob(u.v.size());
    if (config_.mobility_mode == MobilityMode::constant) {
        if (!(c.f_const > 0.0))
            throw SolverError("singular mobility: F = " + std::to_string(c.f_const));
        std::fill(mob.begin(), mob.end(), c.c_alpha / c.f_const);
        return mob;
    }
    for (std::size_t k = 0; k < u.v.size(); ++k) {
        const double f = c.f_const + c.f_slope * u.v[k];
        if (!(f > 0.0))
            throw SolverError("singular mobility: F(u) = " + std::to_string(f) +
                              " at cell " + std::to_string(k));
        mob[k] = c.c_alpha / f;
    }
    return mob;
}

ScalarField2D FracDiffusionSolver::apply_generator(const ScalarField2D& u) {
    const ClosureCoeffs& c = config_.coeffs;
    if (config_.mobility_mode == MobilityMode::constant) {
        if (!(c.f_const > 0.0))
            throw SolverError("singular mobility: F = " + std::to_string(c.f_const));
        // exact multiplier -(c_alpha/F)|xi|^alpha on every mode
        return work_.neg_frac_laplacian(u, c.alpha, c.c_alpha / c.f_const);
    }
    const std::vector<double> mob = mobility_field(u);
    VectorField2D g = work_.frac_gradient(u, c.alpha);
    for (std::size_t k = 0; k < mob.size(); ++k) {
        g.x[k] *= mob[k];
        g.y[k] *= mob[k];
    }
    return work_.divergence(g);
}

// (I + dt L) v with L v = -div(mob grad^(alpha-1) v), mobility frozen
ScalarField2D FracDiffusionSolver::apply_operator(const ScalarField2D& v,
                                                  const std::vector<double>& mob,
                                                  double dt) {
    VectorField2D g = work_.frac_gradient(v, config_.coeffs.alpha);
    for (std::size_t k = 0; k < mob.size(); ++k) {
        g.x[k] *= mob[k];
        g.y[k] *= mob[k];
    }
    ScalarField2D div = work_.divergence(g);
    ScalarField2D out = v;
    for (std::size_t k = 0; k < out.v.size(); ++k) out.v[k] -= dt * div.v[k];
    return out;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

ScalarField2D FracDiffusionSolver::bicgstab(const ScalarField2D& b,
                                            const std::vector<double>& mob, double dt,
                                            double f_max) {
    const ClosureCoeffs& c = config_.coeffs;
    const double tol = config_.linear_solver_tol;
    const double precond_s = dt * c.c_alpha / f_max;
    auto precond = [&](const ScalarField2D& v) {
        return work_.implicit_diagonal_solve(v, c.alpha, precond_s);
    };

    ScalarField2D x = b;  // warm start at the previous density
    ScalarField2D ax = apply_operator(x, mob, dt);
    ScalarField2D r = b;
    for (std::size_t k = 0; k < r.v.size(); ++k) r.v[k] -= ax.v[k];

    const double b_norm = norm(b.v);
    const double target = tol * (b_norm > 0.0 ? b_norm : 1.0);
    last_linear_iterations_ = 0;
    last_linear_residual_ = norm(r.v) / (b_norm > 0.0 ? b_norm : 1.0);
    if (norm(r.v) <= target) return x;

    ScalarField2D rhat = r;
    ScalarField2D p(grid_), v(grid_);
    double rho = 1.0, alpha = 1.0, omega = 1.0;

    for (int it = 1; it <= config_.linear_solver_max_iter; ++it) {
        const double rho_new = dot(rhat.v, r.v);
        if (rho_new == 0.0) break;  // breakdown; report non-convergence below
        if (it == 1) {
            p = r;
        } else {
            const double beta = (rho_new / rho) * (alpha / omega);
            for (std::size_t k = 0; k < p.v.size(); ++k)
                p.v[k] = r.v[k] + beta * (p.v[k] - omega * v.v[k]);
        }
        rho = rho_new;
        ScalarField2D phat = precond(p);
        v = apply_operator(phat, mob, dt);
        const double denom = dot(rhat.v, v.v);
        if (denom == 0.0) break;
        alpha = rho / denom;
        ScalarField2D s = r;
        for (std::size_t k = 0; k < s.v.size(); ++k) s.v[k] -= alpha * v.v[k];
        if (norm(s.v) <= target) {
            for (std::size_t k = 0; k < x.v.size(); ++k) x.v[k] += alpha * phat.v[k];
            last_linear_iterations_ = it;
            last_linear_residual_ = norm(s.v) / (b_norm > 0.0 ? b_norm : 1.0);
            return x;
        }
        ScalarField2D shat = precond(s);
        ScalarField2D t = apply_operator(shat, mob, dt);
        const double tt = dot(t.v, t.v);
        if (tt == 0.0) break;
        omega = dot(t.v, s.v) / tt;
        for (std::size_t k = 0; k < x.v.size(); ++k)
            x.v[k] += alpha * phat.v[k] + omega * shat.v[k];
        for (std::size_t k = 0; k < r.v.size(); ++k) r.v[k] = s.v[k] - omega * t.v[k];
        last_linear_iterations_ = it;
        last_linear_residual_ = norm(r.v) / (b_norm > 0.0 ? b_norm : 1.0);
        if (norm(r.v) <= target) return x;
        if (omega == 0.0) break;
    }
    throw SolverError("linear solve did not converge after " +
                      std::to_string(last_linear_iterations_) +
                      " iterations (relative residual " +
                      std::to_string(last_linear_residual_) + ")");
}

ScalarField2D FracDiffusionSolver::step_implicit(const ScalarField2D& u, double dt) {
    return step_implicit_with_source(u, u, dt);
}

ScalarField2D FracDiffusionSolver::step_implicit_with_source(
    const ScalarField2D& u_for_mobility, const ScalarField2D& rhs, double dt) {
    if (dt <= 0.0) dt = config_.dt;
    const ClosureCoeffs& c = config_.coeffs;
    if (config_.mobility_mode == MobilityMode::constant) {
        if (!(c.f_const > 0.0))
            throw SolverError("singular mobility: F = " + std::to_string(c.f_const));
        last_linear_iterations_ = 0;
        last_linear_residual_ = 0.0;
        return work_.implicit_diagonal_solve(rhs, c.alpha, dt * c.c_alpha / c.f_const);
    }
    const std::vector<double> mob = mobility_field(u_for_mobility);
    double f_max = 0.0;
    for (double value : u_for_mobility.v)
        f_max = std::max(f_max, c.f_const + c.f_slope * value);
    return bicgstab(rhs, mob, dt, f_max);
}

Trajectory FracDiffusionSolver::solve(const ScalarField2D& u0,
                                      const std::vector<StepObserver>& observers) {
    return solve_with(
        u0, [this](const ScalarField2D& u, double h) { return step_implicit(u, h); },
        observers);
}

Trajectory FracDiffusionSolver::solve_with(const ScalarField2D& u0, const Stepper& stepper,
                                           const std::vector<StepObserver>& observers) {
    if (!u0.grid.same_shape(grid_))
        throw ValidationError("initial field grid does not match the solver grid");
    u0.require_finite("initial density");
    u0.require_nonnegative("initial density");

    stats_ = SolverStats{};
    stats_.mass_initial = u0.integral();
    coverage_ = CoverageAccumulator(1.0 / grid_.area());
    stats_.min_density = u0.min_value();

    Trajectory traj;
    ScalarField2D u = u0;
    double t = 0.0;
    int step = 0;

    auto record = [&](bool store) {
        coverage_.add(t, u);
        if (store) {
            traj.times.push_back(t);
            traj.fields.push_back(u);
        }
        for (const StepObserver& obs : observers) obs(step, t, u);
    };
    record(true);

    const double t_end = config_.t_end;
    const double dt = config_.dt;
    double prev_mass = stats_.mass_initial;
    while (t < t_end - 1e-12 * std::max(1.0, t_end)) {
        const double h = std::min(dt, t_end - t);
        try {
            u = stepper(u, h);
        } catch (const SolverError& e) {
            throw SolverError(std::string(e.what()) + " at step " + std::to_string(step + 1));
        }
        ++step;
        t = step * dt < t_end ? step * dt : t_end;

        stats_.steps = step;
        stats_.max_linear_iterations =
            std::max(stats_.max_linear_iterations, last_linear_iterations_);
        stats_.max_linear_residual =
            std::max(stats_.max_linear_residual, last_linear_residual_);
        const double mn = u.min_value();
        stats_.min_density = std::min(stats_.min_density, mn);
        if (mn < 0.0) {
            std::size_t neg = 0;
            for (double value : u.v)
                if (value < 0.0) ++neg;
            stats_.max_negative_fraction = std::max(
                stats_.max_negative_fraction, static_cast<double>(neg) / u.v.size());
        }
        const double mass = u.integral();
        stats_.max_mass_drift =
            std::max(stats_.max_mass_drift,
                     std::abs(mass - prev_mass) / std::max(std::abs(prev_mass), 1e-300));
        prev_mass = mass;

        const bool at_end = t >= t_end - 1e-12 * std::max(1.0, t_end);
        const bool store =
            at_end || (config_.store_every > 0 && step % config_.store_every == 0);
        record(store);
    }
    if (traj.times.empty() || traj.times.back() != t) {
        traj.times.push_back(t);
        traj.fields.push_back(u);
    }
    stats_.mass_final = u.integral();
    traj.stats = stats_;
    return traj;
}

ScalarField2D apply_generator(const ScalarField2D& u, const SolverConfig& config) {
    FracDiffusionSolver solver(u.grid, config);
    return solver.apply_generator(u);
}

ScalarField2D step_implicit(const ScalarField2D& u, const SolverConfig& config) {
    FracDiffusionSolver solver(u.grid, config);
    return solver.step_implicit(u);
}

Trajectory solve(const ScalarField2D& u0, const SolverConfig& config,
                 const std::vector<StepObserver>& observers) {
    FracDiffusionSolver solver(u0.grid, config);
    return solver.solve(u0, observers);
}

}  // namespace levyswarm
