#include "levyswarm/microsim.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "levyswarm/circle_dist.hpp"
#include "levyswarm/errors.hpp"
#include "levyswarm/fracpde.hpp"
#include "levyswarm/levy.hpp"
#include "levyswarm/spectral.hpp"

namespace levyswarm {

void MicroConfig::validate() const {
    params.validate();
    if (!(dt > 0.0)) throw ValidationError("micro dt must be positive");
    if (enable_collisions && !(dt * params.c < 0.5 * params.rho_diam))
        throw ValidationError(
            "dt c must stay below rho_diam/2 when collisions are on (no tunneling); "
            "got dt c = " + std::to_string(dt * params.c));
    if (params.zeta < 1.0) {
        if (!(kernel_range > 0.0))
            throw ValidationError("alignment requires a positive kernel_range");
        if (resolved_sensing_radius() < kernel_range)
            throw ValidationError("sensing_radius must be at least kernel_range");
    }
    if (threads < 1) throw ValidationError("micro threads must be at least 1");
}

namespace {

Vec2 rotate(const Vec2& v, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {v.x * c - v.y * s, v.x * s + v.y * c};
}

Vec2 renormalize(Vec2 v) {
    const double m = std::hypot(v.x, v.y);
    if (!(m > 0.0)) throw SolverError("direction collapsed to zero");
    return {v.x / m, v.y / m};
}

Vec2 draw_about(const Vec2& center, double kappa, RngStream& rng) {
    const CircleDist dist =
        kappa > 0.0 ? CircleDist::von_mises(kappa) : CircleDist::uniform();
    return renormalize(rotate(center, dist.sample(rng)));
}

// straight flight with specular wall bounces; disp accumulates what the agent
// actually traveled
void move_reflecting(Vec2& pos, Vec2& dir, double length, double lx, double ly,
                     Vec2& disp) {
    int guard = 0;
    while (length > 0.0) {
        if (++guard > 10000)
            throw SolverError("runaway wall-bounce loop (agent pinned at a wall?)");
        double t = length;
        int wall = 0;  // 1: x wall, 2: y wall
        if (dir.x > 0.0) {
            const double cand = (lx - pos.x) / dir.x;
            if (cand < t) { t = cand; wall = 1; }
        } else if (dir.x < 0.0) {
            const double cand = -pos.x / dir.x;
            if (cand < t) { t = cand; wall = 1; }
        }
        if (dir.y > 0.0) {
            const double cand = (ly - pos.y) / dir.y;
            if (cand < t) { t = cand; wall = 2; }
        } else if (dir.y < 0.0) {
            const double cand = -pos.y / dir.y;
            if (cand < t) { t = cand; wall = 2; }
        }
        t = std::max(t, 0.0);
        const Vec2 from = pos;
        pos.x += t * dir.x;
        pos.y += t * dir.y;
        pos.x = std::clamp(pos.x, 0.0, lx);
        pos.y = std::clamp(pos.y, 0.0, ly);
        disp.x += pos.x - from.x;
        disp.y += pos.y - from.y;
        length -= t;
        if (wall == 1) dir.x = -dir.x;
        else if (wall == 2) dir.y = -dir.y;
        else break;  // flight ended inside the arena
    }
}

double wrap(double x, double l) {
    x -= l * std::floor(x / l);
    if (x >= l) x -= l;  // floor rounding can land exactly on l
    return x < 0.0 ? 0.0 : x;
}

void move_periodic(Vec2& pos, const Vec2& dir, double length, double lx, double ly,
                   Vec2& disp) {
    disp.x += length * dir.x;
    disp.y += length * dir.y;
    pos.x = wrap(pos.x + length * dir.x, lx);
    pos.y = wrap(pos.y + length * dir.y, ly);
}

Vec2 kernel_mean(const Vec2& at, std::size_t self_index, const Vec2& own_dir,
                 const SwarmState& state, const MicroConfig& config,
                 const CellList& neighbors) {
    const double range = config.kernel_range;
    double jx = 0.0, jy = 0.0;
    neighbors.for_neighbors_of_point(
        at.x, at.y, [&](std::size_t j, double, double, double r2) {
            if (j == self_index) return;
            const double w = std::exp(-std::sqrt(r2) / range);
            jx += w * state.agents[j].dir.x;
            jy += w * state.agents[j].dir.y;
        });
    if (std::hypot(jx, jy) < 1e-12) return own_dir;  // nothing to align with
    return renormalize({jx, jy});
}

CellList sensing_list(const std::vector<double>& xs, const std::vector<double>& ys,
                      const MicroConfig& config) {
    return CellList(xs, ys, config.params.arena.lx, config.params.arena.ly,
                    config.resolved_sensing_radius(),
                    config.boundary == MicroBoundary::periodic);
}

}  // namespace

Vec2 tumble(const Vec2& dir, double kappa_tumble, RngStream& rng) {
    return draw_about(dir, kappa_tumble, rng);
}

Vec2 align_direction(const Vec2& lambda, double kappa_align, RngStream& rng) {
    return draw_about(lambda, kappa_align, rng);
}

Vec2 local_mean_direction_at(const Vec2& at, std::size_t self_index,
                             const SwarmState& state, const MicroConfig& config,
                             const CellList& neighbors) {
    return kernel_mean(at, self_index, state.agents[self_index].dir, state, config,
                       neighbors);
}

Vec2 local_mean_direction(const SwarmState& state, std::size_t agent_index,
                          const MicroConfig& config) {
    std::vector<double> xs(state.agents.size()), ys(state.agents.size());
    for (std::size_t k = 0; k < state.agents.size(); ++k) {
        xs[k] = state.agents[k].pos.x;
        ys[k] = state.agents[k].pos.y;
    }
    const CellList list = sensing_list(xs, ys, config);
    return local_mean_direction_at(state.agents[agent_index].pos, agent_index, state,
                                   config, list);
}

SwarmState random_swarm(const MicroConfig& config) {
    config.validate();
    const ModelParams& p = config.params;
    const double lx = p.arena.lx, ly = p.arena.ly;
    const RunTimeLaw law(p.alpha, p.sigma0);
    SwarmState state;
    state.agents.resize(p.n_robots);
    for (int i = 0; i < p.n_robots; ++i) {
        RngStream rng(config.seed, static_cast<std::uint64_t>(i), 0);
        Agent& a = state.agents[i];
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
            a.pos = {rng.uniform(0.0, lx), rng.uniform(0.0, ly)};
            placed = true;
            if (!config.enable_collisions) break;
            for (int j = 0; j < i; ++j) {
                double dx = state.agents[j].pos.x - a.pos.x;
                double dy = state.agents[j].pos.y - a.pos.y;
                if (config.boundary == MicroBoundary::periodic) {
                    if (dx > 0.5 * lx) dx -= lx;
                    if (dx < -0.5 * lx) dx += lx;
                    if (dy > 0.5 * ly) dy -= ly;
                    if (dy < -0.5 * ly) dy += ly;
                }
                if (dx * dx + dy * dy < p.rho_diam * p.rho_diam) {
                    placed = false;
                    break;
                }
            }
        }
        if (!placed)
            throw ValidationError("could not place " + std::to_string(p.n_robots) +
                                  " agents with clearance " + std::to_string(p.rho_diam) +
                                  " in the arena (packing too dense)");
        const double angle = rng.uniform(-M_PI, M_PI);
        a.dir = {std::cos(angle), std::sin(angle)};
        a.time_to_stop = law.sample(rng);
        a.disp = {0.0, 0.0};
    }
    return state;
}

void step(SwarmState& state, const MicroConfig& config) {
    config.validate();
    const ModelParams& p = config.params;
    const std::size_t n = state.agents.size();
    if (n == 0) throw ValidationError("stepping an empty swarm");
    const std::uint64_t epoch = state.step_count + 1;
    const RunTimeLaw law(p.alpha, p.sigma0);
    const bool periodic = config.boundary == MicroBoundary::periodic;
    const double lx = p.arena.lx, ly = p.arena.ly;

    // neighbor list over start-of-step positions; only needed if agents align
    std::optional<CellList> list;
    std::vector<double> xs, ys;
    if (p.zeta < 1.0) {
        xs.resize(n);
        ys.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            xs[k] = state.agents[k].pos.x;
            ys[k] = state.agents[k].pos.y;
        }
        list.emplace(sensing_list(xs, ys, config));
    }

    std::vector<Agent> next(n);
    std::vector<int> tumbles(n, 0), aligns(n, 0);
    const SwarmState& old = state;

    parallel_for(n, config.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            RngStream rng(config.seed, i, epoch);
            Agent a = old.agents[i];
            double remaining = config.dt;
            int events = 0;
            while (remaining > 0.0) {
                const double adv = std::min(remaining, a.time_to_stop);
                if (adv > 0.0) {
                    if (periodic)
                        move_periodic(a.pos, a.dir, p.c * adv, lx, ly, a.disp);
                    else
                        move_reflecting(a.pos, a.dir, p.c * adv, lx, ly, a.disp);
                    a.time_to_stop -= adv;
                    remaining -= adv;
                }
                if (remaining <= 0.0) break;
                // stop event: reorient instantaneously, draw the next run
                if (++events > 100000)
                    throw SolverError("agent " + std::to_string(i) +
                                      " hit the per-step reorientation cap");
                if (rng.uniform() < p.zeta) {
                    a.dir = tumble(a.dir, p.kappa_tumble, rng);
                    ++tumbles[i];
                } else {
                    const Vec2 lam =
                        kernel_mean(a.pos, i, a.dir, old, config, *list);
                    a.dir = align_direction(lam, p.kappa_align, rng);
                    ++aligns[i];
                }
                a.time_to_stop = law.sample(rng);
            }
            next[i] = a;
        }
    });

    state.agents = std::move(next);
    for (std::size_t i = 0; i < n; ++i) {
        state.n_tumbles += tumbles[i];
        state.n_aligns += aligns[i];
    }

    if (config.enable_collisions) resolve_collisions(state, config);

    state.step_count += 1;
    state.time += config.dt;
}

void resolve_collisions(SwarmState& state, const MicroConfig& config) {
    if (!config.enable_collisions || state.agents.size() < 2) return;
    const ModelParams& p = config.params;
    const double rho = p.rho_diam;
    const bool periodic = config.boundary == MicroBoundary::periodic;
    const double lx = p.arena.lx, ly = p.arena.ly;
    const std::size_t n = state.agents.size();
    const std::uint64_t epoch = state.step_count + 1;
    const RunTimeLaw law(p.alpha, p.sigma0);

    // dedicated streams for the post-collision run-time draws, persistent
    // across sweeps so repeat collisions keep consuming fresh variates
    std::vector<std::optional<RngStream>> clock_rng(n);
    auto reset_clock = [&](std::size_t i) {
        if (!config.collision_resets_clock) return;
        if (!clock_rng[i]) clock_rng[i].emplace(config.seed, i + n, epoch);
        state.agents[i].time_to_stop = law.sample(*clock_rng[i]);
    };

    std::vector<double> xs(n), ys(n);
    for (int sweep = 0; sweep < 10; ++sweep) {
        for (std::size_t k = 0; k < n; ++k) {
            xs[k] = state.agents[k].pos.x;
            ys[k] = state.agents[k].pos.y;
        }
        const CellList list(xs, ys, lx, ly, rho, periodic);
        bool touched = false;
        for (const auto& [i, j] : list.close_pairs()) {
            Agent& ai = state.agents[i];
            Agent& aj = state.agents[j];
            double dx = aj.pos.x - ai.pos.x;
            double dy = aj.pos.y - ai.pos.y;
            if (periodic) {
                if (dx > 0.5 * lx) dx -= lx;
                if (dx < -0.5 * lx) dx += lx;
                if (dy > 0.5 * ly) dy -= ly;
                if (dy < -0.5 * ly) dy += ly;
            }
            const double r = std::hypot(dx, dy);
            if (r >= rho) continue;  // an earlier separation already fixed it
            double nux, nuy;
            if (r > 1e-12 * rho) {
                nux = dx / r;
                nuy = dy / r;
            } else {
                nux = 1.0;  // coincident centers: any line works, pick one
                nuy = 0.0;
            }
            // d/dt |x_i - x_j|^2 < 0, written with nu pointing from i to j
            const bool approaching =
                nux * (ai.dir.x - aj.dir.x) + nuy * (ai.dir.y - aj.dir.y) > 0.0;
            if (approaching) {
                const double pi_ = ai.dir.x * nux + ai.dir.y * nuy;
                const double pj_ = aj.dir.x * nux + aj.dir.y * nuy;
                ai.dir = renormalize({ai.dir.x - 2.0 * pi_ * nux,
                                      ai.dir.y - 2.0 * pi_ * nuy});
                aj.dir = renormalize({aj.dir.x - 2.0 * pj_ * nux,
                                      aj.dir.y - 2.0 * pj_ * nuy});
                state.n_collisions += 1;
                reset_clock(i);
                reset_clock(j);
            }
            const double push = 0.5 * (rho - r);
            const Vec2 from_i = ai.pos, from_j = aj.pos;
            ai.pos.x -= push * nux;
            ai.pos.y -= push * nuy;
            aj.pos.x += push * nux;
            aj.pos.y += push * nuy;
            if (periodic) {
                ai.pos.x = wrap(ai.pos.x, lx);
                ai.pos.y = wrap(ai.pos.y, ly);
                aj.pos.x = wrap(aj.pos.x, lx);
                aj.pos.y = wrap(aj.pos.y, ly);
                ai.disp.x -= push * nux;
                ai.disp.y -= push * nuy;
                aj.disp.x += push * nux;
                aj.disp.y += push * nuy;
            } else {
                ai.pos.x = std::clamp(ai.pos.x, 0.0, lx);
                ai.pos.y = std::clamp(ai.pos.y, 0.0, ly);
                aj.pos.x = std::clamp(aj.pos.x, 0.0, lx);
                aj.pos.y = std::clamp(aj.pos.y, 0.0, ly);
                ai.disp.x += ai.pos.x - from_i.x;
                ai.disp.y += ai.pos.y - from_i.y;
                aj.disp.x += aj.pos.x - from_j.x;
                aj.disp.y += aj.pos.y - from_j.y;
            }
            touched = true;
        }
        if (!touched) return;
    }

    // ten sweeps were not enough; report the first remaining overlap
    for (std::size_t k = 0; k < n; ++k) {
        xs[k] = state.agents[k].pos.x;
        ys[k] = state.agents[k].pos.y;
    }
    const CellList list(xs, ys, lx, ly, rho, periodic);
    for (const auto& [i, j] : list.close_pairs()) {
        double dx = xs[j] - xs[i];
        double dy = ys[j] - ys[i];
        if (periodic) {
            if (dx > 0.5 * lx) dx -= lx;
            if (dx < -0.5 * lx) dx += lx;
            if (dy > 0.5 * ly) dy -= ly;
            if (dy < -0.5 * ly) dy += ly;
        }
        const double r = std::hypot(dx, dy);
        if (r < rho * (1.0 - 1e-9))
            throw SolverError("unresolved overlap between agents " + std::to_string(i) +
                              " and " + std::to_string(j) + " after 10 sweeps (distance " +
                              std::to_string(r) + ", clearance " + std::to_string(rho) +
                              ")");
    }
}

Observables observe(const SwarmState& state, const Grid2D& grid, double total_mass) {
    // binning grid, not a solver grid: any nonempty box works
    if (grid.nx < 1 || grid.ny < 1 || !(grid.lx > 0.0) || !(grid.ly > 0.0))
        throw ValidationError("observation grid must be nonempty with positive extent");
    const std::size_t n = state.agents.size();
    if (n == 0) throw ValidationError("observing an empty swarm");
    Observables obs{ScalarField2D(grid)};
    obs.time = state.time;

    double sx = 0.0, sy = 0.0, msd = 0.0;
    for (const Agent& a : state.agents) {
        int ci = static_cast<int>(std::floor(a.pos.x / grid.dx()));
        int cj = static_cast<int>(std::floor(a.pos.y / grid.dy()));
        ci = std::clamp(ci, 0, grid.nx - 1);
        cj = std::clamp(cj, 0, grid.ny - 1);
        obs.density.at(ci, cj) += 1.0;
        sx += a.dir.x;
        sy += a.dir.y;
        msd += a.disp.x * a.disp.x + a.disp.y * a.disp.y;
    }
    const double scale = total_mass / (static_cast<double>(n) * grid.cell_area());
    for (double& v : obs.density.v) v *= scale;
    obs.msd = msd / static_cast<double>(n);
    obs.polarization = std::hypot(sx, sy) / static_cast<double>(n);
    obs.covered = covered_mass(obs.density, 1.0 / grid.area());
    return obs;
}

}  // namespace levyswarm
