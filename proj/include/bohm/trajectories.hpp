#pragma once
// Trajectory ensembles on top of (center path, width path) via the dressing
// decomposition x(t) = q(t) + (x0 - q(0)) sigma(t)/sigma(0), plus the MSD and
// diffusion-coefficient observables built from them.

#include <cstdint>
#include <vector>

#include "bohm/dynamics.hpp"
#include "bohm/rng.hpp"

namespace bohm {

// An ensemble of dressed trajectories sharing one grid. trajectories[i][k]
// is particle i at grid point k; initial_positions[i] is its Born-rule draw.
struct TrajectoryEnsemble {
    TrajectoryEnsemble(const TimeGrid& g, std::uint64_t seed)
        : grid(g), master_seed(seed), born_substream(kSubstreamBornPosition) {}

    TimeGrid grid;
    std::vector<double> initial_positions;
    std::vector<std::vector<double>> trajectories;
    std::uint64_t master_seed;      // seed provenance
    std::uint32_t born_substream;   // substream id used for the position draws
};

// Dress one particle: value = q(t) + (x0_particle - q(0)) sigma(t)/sigma(0),
// derivative = q_dot(t) + (x0_particle - q(0)) sigma_dot(t)/sigma(0).
// Throws if the two paths are on different grids or sigma is not positive.
Path dressing_trajectory(double x0_particle, const Path& q_path, const Path& sigma_path);

// Velocity field v(x,t) = (sigma_dot/sigma)(x - q(t)) + q_dot(t) evaluated at
// a grid time (t must coincide with a grid point of the shared grid).
double velocity_field(double x, double t, const Path& q_path, const Path& sigma_path);

// n Born-rule draws: mean q0, standard deviation sigma0, consumed
// sequentially from the given stream.
std::vector<double> sample_initial_positions(std::size_t n, double q0, double sigma0,
                                             RandomStream& stream);

// Thermal mean square displacement of a free damped particle,
//   MSD(t) = 2 kT/(m gamma) * (t - (1 - e^{-gamma t})/gamma),
// with a series branch for gamma*t < 1e-4 (including gamma = 0, where it
// degenerates to the ballistic kT t^2/m).
double msd_classical_analytic(double kT, double m, double gamma, double t);

struct DiffusionPair {
    double d_cl;  // classical: MSD_cl / 2t
    double d_q;   // quantum:   d_cl + (sigma(t) - sigma(0))^2 / 2t
};

// Both diffusion coefficients at a grid time t > 0 (t = 0 is rejected: the
// ratio is 0/0 there and both limits are 0 by convention at the caller).
DiffusionPair diffusion_coefficients(double kT, double m, double gamma, const Path& sigma_path,
                                     double t);

// Monte-Carlo MSD of dressed trajectories: centers[i] is a thermal center
// realization, born_samples[i] its Born position draw. Returns
// <(x_i(t) - x_i(0))^2> at every grid point, where
// x_i(t) - x_i(0) = (q_i(t) - q_i(0)) + (born_i - q_i(0)) (sigma(t)/sigma(0) - 1).
std::vector<double> msd_monte_carlo(const std::vector<Path>& centers,
                                    const std::vector<double>& born_samples,
                                    const Path& sigma_path);

// Build n dressed trajectories around a shared center/width pair. Each
// particle's Born draw comes from its own (master_seed, i, born) stream, so
// the ensemble is independent of evaluation order.
TrajectoryEnsemble build_ensemble(std::size_t n, const Path& q_path, const Path& sigma_path,
                                  std::uint64_t master_seed);

}  // namespace bohm
