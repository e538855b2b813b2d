#include "bohm/trajectories.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bohm {

namespace {

bool same_grid(const TimeGrid& a, const TimeGrid& b) {
    return a.t0 == b.t0 && a.dt == b.dt && a.n_steps == b.n_steps;
}

void require_shared_grid(const Path& q_path, const Path& sigma_path) {
    if (!same_grid(q_path.grid, sigma_path.grid))
        throw std::invalid_argument("center and width paths live on different time grids");
}

void require_positive_width(const Path& sigma_path) {
    for (double s : sigma_path.value)
        if (!(s > 0.0))
            throw std::invalid_argument("width path must be strictly positive everywhere");
}

// Index of the grid point equal to t (within rounding slack); throws if t is
// not a grid time.
std::size_t grid_index(const TimeGrid& grid, double t) {
    const double pos = (t - grid.t0) / grid.dt;
    const long long k = std::llround(pos);
    if (k < 0 || static_cast<std::size_t>(k) >= grid.n_points() ||
        std::fabs(grid.time(static_cast<std::size_t>(k)) - t) >
            1e-9 * (1.0 + std::fabs(t))) {
        std::ostringstream msg;
        msg << "t = " << t << " is not a grid time of [" << grid.t0 << ", " << grid.t1
            << "] step " << grid.dt;
        throw std::invalid_argument(msg.str());
    }
    return static_cast<std::size_t>(k);
}

}  // namespace

Path dressing_trajectory(double x0_particle, const Path& q_path, const Path& sigma_path) {
    require_shared_grid(q_path, sigma_path);
    require_positive_width(sigma_path);
    const double sigma0 = sigma_path.value[0];
    const double offset = x0_particle - q_path.value[0];
    Path out(q_path.grid);
    for (std::size_t k = 0; k < out.grid.n_points(); ++k) {
        out.value[k] = q_path.value[k] + offset * sigma_path.value[k] / sigma0;
        out.derivative[k] = q_path.derivative[k] + offset * sigma_path.derivative[k] / sigma0;
    }
    return out;
}

double velocity_field(double x, double t, const Path& q_path, const Path& sigma_path) {
    require_shared_grid(q_path, sigma_path);
    const std::size_t k = grid_index(q_path.grid, t);
    const double s = sigma_path.value[k];
    if (!(s > 0.0)) throw std::invalid_argument("width must be positive at the requested time");
    return (sigma_path.derivative[k] / s) * (x - q_path.value[k]) + q_path.derivative[k];
}

std::vector<double> sample_initial_positions(std::size_t n, double q0, double sigma0,
                                             RandomStream& stream) {
    if (n < 1) throw std::invalid_argument("sample_initial_positions: n must be >= 1");
    if (!(sigma0 > 0.0))
        throw std::invalid_argument("sample_initial_positions: sigma0 must be positive");
    std::vector<double> out(n);
    for (double& x : out) x = q0 + sigma0 * stream.normal();
    return out;
}

double msd_classical_analytic(double kT, double m, double gamma, double t) {
    if (!(m > 0.0)) throw std::invalid_argument("msd_classical_analytic: mass must be positive");
    if (!(kT >= 0.0)) throw std::invalid_argument("msd_classical_analytic: kT must be >= 0");
    if (!(gamma >= 0.0))
        throw std::invalid_argument("msd_classical_analytic: gamma must be >= 0");
    const double u = gamma * t;
    if (u < 1e-4) {
        // ballistic-regime expansion, exact at gamma = 0
        return kT * t * t / m * (1.0 - u / 3.0 + u * u / 12.0 - u * u * u / 60.0);
    }
    return 2.0 * kT / (m * gamma) * (t + std::expm1(-u) / gamma);
}

DiffusionPair diffusion_coefficients(double kT, double m, double gamma, const Path& sigma_path,
                                     double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("diffusion_coefficients: t must be > 0 (both limits are 0)");
    const std::size_t k = grid_index(sigma_path.grid, t);
    const double d_cl = msd_classical_analytic(kT, m, gamma, t) / (2.0 * t);
    const double ds = sigma_path.value[k] - sigma_path.value[0];
    return DiffusionPair{d_cl, d_cl + ds * ds / (2.0 * t)};
}

std::vector<double> msd_monte_carlo(const std::vector<Path>& centers,
                                    const std::vector<double>& born_samples,
                                    const Path& sigma_path) {
    if (centers.empty()) throw std::invalid_argument("msd_monte_carlo: empty ensemble");
    if (born_samples.size() != centers.size())
        throw std::invalid_argument("msd_monte_carlo: one Born sample per center required");
    require_positive_width(sigma_path);
    for (const Path& c : centers) require_shared_grid(c, sigma_path);

    const std::size_t n_points = sigma_path.grid.n_points();
    const double sigma0 = sigma_path.value[0];
    std::vector<double> msd(n_points, 0.0);
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double q_start = centers[i].value[0];
        const double offset = born_samples[i] - q_start;
        for (std::size_t k = 0; k < n_points; ++k) {
            const double d = (centers[i].value[k] - q_start) +
                             offset * (sigma_path.value[k] / sigma0 - 1.0);
            msd[k] += d * d;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(centers.size());
    for (double& v : msd) v *= inv_n;
    return msd;
}

TrajectoryEnsemble build_ensemble(std::size_t n, const Path& q_path, const Path& sigma_path,
                                  std::uint64_t master_seed) {
    if (n < 1) throw std::invalid_argument("build_ensemble: n must be >= 1");
    require_shared_grid(q_path, sigma_path);
    require_positive_width(sigma_path);
    TrajectoryEnsemble ensemble(q_path.grid, master_seed);
    ensemble.initial_positions.reserve(n);
    ensemble.trajectories.reserve(n);
    const double q0 = q_path.value[0];
    const double sigma0 = sigma_path.value[0];
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream born(master_seed, i, kSubstreamBornPosition);
        const double x0 = q0 + sigma0 * born.normal();
        ensemble.initial_positions.push_back(x0);
        ensemble.trajectories.push_back(dressing_trajectory(x0, q_path, sigma_path).value);
    }
    return ensemble;
}

}  // namespace bohm
