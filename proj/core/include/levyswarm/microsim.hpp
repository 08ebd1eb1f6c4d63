#pragma once

#include <cstdint>
#include <vector>

#include "levyswarm/cell_list.hpp"
#include "levyswarm/grid.hpp"
#include "levyswarm/params.hpp"
#include "levyswarm/rng.hpp"
#include "levyswarm/vec2.hpp"

namespace levyswarm {

// One walker: position in the arena, unit heading, remaining run time, and the
// accumulated true displacement since the start (kept separately so the mean
// squared displacement survives periodic wrapping).
struct Agent {
    Vec2 pos;
    Vec2 dir;
    double time_to_stop = 0.0;
    Vec2 disp;
};

enum class MicroBoundary { reflecting, periodic };

struct MicroConfig {
    ModelParams params;
    double dt = 0.1;              // step length (s)
    MicroBoundary boundary = MicroBoundary::reflecting;
    double sensing_radius = 0.0;  // neighbor cutoff; 0 requests 5 * kernel_range
    double kernel_range = 1.0;    // e-folding length of the influence kernel
    std::uint64_t seed = 0;
    bool enable_collisions = true;
    bool collision_resets_clock = true;  // fresh run time after a reflection
    int threads = 1;

    double resolved_sensing_radius() const {
        return sensing_radius > 0.0 ? sensing_radius : 5.0 * kernel_range;
    }
    // Rejects dt c >= rho/2 when collisions are on (a step may not tunnel
    // through a collision partner) and sensing_radius < kernel_range.
    void validate() const;
};

// Counters distinguish the reorientation channels so tests can confirm a
// channel is fully off (zeta = 1 or 0).
struct SwarmState {
    std::vector<Agent> agents;
    double time = 0.0;
    std::uint64_t step_count = 0;
    long long n_tumbles = 0;
    long long n_aligns = 0;
    long long n_collisions = 0;
};

struct Observables {
    ScalarField2D density;  // histogram scaled so its integral is total_mass
    double time = 0.0;
    double msd = 0.0;
    double polarization = 0.0;
    double covered = 0.0;   // integral of min(density, total_mass / area)
};

// New heading after a tumble: symmetric kernel about the old heading, uniform
// for kappa = 0 and von Mises(kappa) otherwise.
Vec2 tumble(const Vec2& dir, double kappa_tumble, RngStream& rng);

// New heading after aligning: von Mises about lambda (uniform for kappa = 0).
Vec2 align_direction(const Vec2& lambda, double kappa_align, RngStream& rng);

// Kernel-weighted mean neighbor heading J = sum_j exp(-r_ij / kernel_range)
// dir_j over neighbors within the sensing radius, self excluded; returns
// J / |J|, or the agent's own heading when |J| < 1e-12.
Vec2 local_mean_direction(const SwarmState& state, std::size_t agent_index,
                          const MicroConfig& config);
// Same with a prebuilt neighbor list over the state's positions, queried at an
// arbitrary point (used mid-step, where the agent has already moved).
Vec2 local_mean_direction_at(const Vec2& at, std::size_t self_index,
                             const SwarmState& state, const MicroConfig& config,
                             const CellList& neighbors);

// Uniform random initial state: positions i.i.d. in the arena (respecting the
// pair clearance when collisions are on), uniform headings, fresh run times.
SwarmState random_swarm(const MicroConfig& config);

// Advance one step of length config.dt: every agent runs at speed c along its
// heading, sub-stepped at its stop events (tumble with probability zeta, align
// otherwise, then a fresh run time), with walls handled during the flight;
// then pair collisions are resolved.  Reads the old state, writes the new one,
// so results are independent of the thread count.
void step(SwarmState& state, const MicroConfig& config);

// Elastic reflection theta' = theta - 2 (theta . nu) nu for every approaching
// pair closer than rho_diam, plus symmetric separation of overlaps; sweeps in
// ascending pair order until clean, at most 10 times.
void resolve_collisions(SwarmState& state, const MicroConfig& config);

Observables observe(const SwarmState& state, const Grid2D& grid, double total_mass = 1.0);

}  // namespace levyswarm
