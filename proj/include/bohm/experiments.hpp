#pragma once
// The four scenario drivers. Each returns an ExperimentResult: named columns
// sampled on (a stride of) the integration grid plus named summary scalars,
// ready for CSV serialization. All ensemble loops are deterministic in
// (master_seed, n_tra) regardless of thread count.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bohm/core.hpp"
#include "bohm/dynamics.hpp"

namespace bohm {

struct ExperimentResult {
    std::string kind;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> columns;  // column-major, shared length
    // Ordered summary values; an absent quantity is reported as quiet NaN.
    std::vector<std::pair<std::string, double>> scalars;
    // Echo of the driver inputs (key, rendered value).
    std::vector<std::pair<std::string, std::string>> metadata;
};

// Ensemble execution knobs shared by the stochastic drivers.
struct EnsembleOptions {
    std::size_t n_tra = 10000;
    std::uint64_t master_seed = 1;
    unsigned threads = 0;           // 0 = auto
    std::size_t output_stride = 1;  // keep every stride-th grid point (and the last)
};

// --- extraction of oscillation features -------------------------------------

struct PeakInfo {
    bool interior = false;  // a strict interior extremum exists
    std::size_t index = 0;  // sample index of the extremum (or tail minimum)
    double t = 0.0;         // abscissa, parabola-refined when interior
    double value = 0.0;     // ordinate, parabola-refined when interior
};

// First strict interior local maximum (ys[k-1] < ys[k] > ys[k+1]), refined by
// a three-point parabola. interior = false when no sample qualifies.
PeakInfo first_interior_maximum(const std::vector<double>& ts, const std::vector<double>& ys);

// First strict interior local minimum at index > after, refined likewise.
// When none exists the running minimum of ys[after..end] is returned with
// interior = false (the curve is monotone to the boundary).
PeakInfo following_minimum(const std::vector<double>& ts, const std::vector<double>& ys,
                           std::size_t after);

struct Oscillation {
    bool has_max = false;
    PeakInfo max, min;
    double amplitude = 0.0;  // max.value - min.value; 0 when no interior max
};

// First oscillation of a sampled curve: first interior maximum and the
// minimum that follows it (interior if present, else the tail minimum).
Oscillation first_oscillation(const std::vector<double>& ts, const std::vector<double>& ys);

// --- thermal diffusion of the free packet ------------------------------------

// Free-potential thermal ensemble: columns
//   t, msd_cl, msd_q_analytic, msd_q_mc, d_cl, d_q
// where msd_cl is the damped classical formula, msd_q_analytic adds the
// width-spread term (sigma(t)-sigma(0))^2, msd_q_mc is the double-averaged
// Monte-Carlo estimate over n_tra dressed trajectories (thermal noise +
// thermal initial velocities + Born initial positions), and d_* = msd_*/2t
// (0 at t = 0 by convention).
ExperimentResult run_brownian(const SystemParams& params, const Friction& friction,
                              const Bath& bath, WidthVariant width_variant,
                              const GaussianState& state0, const TimeGrid& grid,
                              const EnsembleOptions& opts);

// --- shutter transient (diffraction in time) ----------------------------------

// Effective time variable of the damped free propagator:
// tau = (1 - e^{-gamma t})/gamma, continuously = t at gamma = 0.
double diffraction_tau(double gamma_r, double t);

// Fresnel argument xi(x, tau) = (p tau/m - x) / sqrt(pi hbar_tilde tau / m).
// tau = 0 gives -inf for x > 0 (+inf for x < 0, 0 for x = 0).
double diffraction_xi(const SystemParams& params, double p, double x, double tau);

// Arrival density behind the shutter, 1/2 [(C(xi)+1/2)^2 + (S(xi)+1/2)^2].
double diffraction_density(double xi);

// Classical arrival time t0 solving p tau(t0)/m = x; NaN when the damped
// particle never reaches x (gamma m x / p >= 1).
double diffraction_arrival_time(double gamma_r, double m, double p, double x);

// Long-time density limit: the quantum density at xi(tau -> 1/gamma) for
// gamma > 0 (1 at gamma = 0); in the classical regime (epsilon = 0) the step
// value at the same limit.
double diffraction_density_stationary(const SystemParams& params, double gamma_r, double p,
                                      double x);

// Columns t, xi, rho at x_obs; epsilon = 0 switches to the classical step
// density (xi reported as NaN). Scalars: t0, t_first_max, visibility (refined
// first maximum minus following minimum; 0 when no oscillation), rho_stationary.
ExperimentResult run_diffraction(const SystemParams& params, const Friction& friction, double p,
                                 double x_obs, const TimeGrid& grid, std::size_t output_stride);

// --- driven parabolic repeller (tunneling) -------------------------------------

enum class ScanKind { none, omega0, field_amplitude, epsilon, gamma_r };

struct TunnelingScan {
    ScanKind kind = ScanKind::none;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 61;
};

struct TunnelingSetup {
    SystemParams params;
    Friction friction;                                   // gamma_i must be 0
    WidthVariant variant = WidthVariant::kostin_scaled;  // kostin_scaled or ck_scaled
    GaussianState state0;                                // q = x0 < 0, q_dot = p0/m
    QuadraticPotential field;                            // driven_repeller descriptor
};

// Transmitted fraction for a Gaussian packet launched at x0 < 0 against a
// barrier top at x = 0:
//   T = [erf(x_t/(sqrt2 sigma_t)) - erf(x0/(sqrt2 sigma0))] / erfc(x0/(sqrt2 sigma0)).
double tunneling_transmission(double x_t, double sigma_t, double x0, double sigma0);

// Columns t, x_t, sigma, T; scalar T_asymptotic = T at the grid end. With a
// scan, adds scan_value_i / scan_T_i pairs over the requested parameter plus
// the argmax (refined by a fine rescan and a parabola through the best three
// points); omega0 scans also publish the aliases omega0_res / T_res.
ExperimentResult run_tunneling(const TunnelingSetup& setup, const TimeGrid& grid,
                               const TunnelingScan& scan, std::size_t output_stride);

// --- transient barrier (early arrivals) -----------------------------------------

// Switch-on time from the dissipative free flight: the time at which the
// undamped-free and damped-free centers would cross the origin,
//   tB = -(1/gamma_r) ln(1 + gamma_r q0/q_dot0),
// requiring q_dot0 > 0 and gamma_r |q0|/q_dot0 < 1 (else the damped particle
// stalls before arriving and the formula has no solution).
double early_arrival_switch_time(double gamma_r, double q0, double q_dot0);

// Born-averaged transmission beyond x_d: 1/2 erfc[(x_d - q)/(sqrt2 sigma)].
double transmission_probability(double x_d, double q, double sigma);

struct EarlyArrivalSetup {
    SystemParams params;
    Friction friction;  // gamma_i must be 0 for the thermal center
    Bath bath;
    GaussianState state0;
    double barrier_omega = 0.0;  // curvature of the windowed repeller
    double window_g = 1.0;       // window decay rate
    double switch_time = 0.0;    // tB
    double x_d = 0.0;            // detection point
};

// Two thermal ensembles with common random numbers — one feeling the windowed
// repeller, one free — each averaging 1/2 erfc[(x_d - q_i(t))/(sqrt2 sigma(t))]
// over n_tra trajectories. Columns: t, p_tr_barrier, p_tr_free, diff_se
// (standard error of the mean per-trajectory difference). Scalars:
// p_tr_barrier_end, p_tr_free_end, excess_over_se_max, t_excess_max.
ExperimentResult run_early_arrivals(const EarlyArrivalSetup& setup, const TimeGrid& grid,
                                    const EnsembleOptions& opts);

}  // namespace bohm
