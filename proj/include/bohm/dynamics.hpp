#pragma once
// Time propagation of the Gaussian packet: deterministic RK4 for center and
// width equations, a splitting integrator for the thermal (Langevin) center,
// closed-form solutions for at-most-quadratic static and driven potentials,
// and the coupled center+width system for complex friction.

#include <cstddef>
#include <vector>

#include "bohm/core.hpp"
#include "bohm/rng.hpp"

namespace bohm {

// Uniform time grid t_k = t0 + k dt, k = 0..n_steps, n_steps = round((t1-t0)/dt).
struct TimeGrid {
    TimeGrid(double t0, double t1, double dt);

    double t0, t1, dt;
    std::size_t n_steps;

    std::size_t n_points() const { return n_steps + 1; }
    double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
};

// A scalar path with its time derivative on a shared grid.
struct Path {
    explicit Path(const TimeGrid& g) : grid(g), value(g.n_points()), derivative(g.n_points()) {}

    TimeGrid grid;
    std::vector<double> value;
    std::vector<double> derivative;
};

// Which width equation to integrate. All four share the Pinney-type
// structure; they differ in how dissipation enters:
//   kostin_scaled        sdd = -gr sd + ht^2/(4 m^2 s^3) - (V2/m) s
//   ck_scaled            sdd = -gr sd + ht^2/(4 m^2 s^3) e^{-2 gr t} - (V2/m) s
//   generalized_gamma_i  sdd = -gr sd + ht^2/(4 m^2 s^3) + ht gi/(2 m s) - (V2/m) s
//   complex_friction     the full polynomial width equation of the
//                        complex-friction theory (see integrate_width source);
//                        requires ht > 0
// with ht the scaled Planck constant and V2 = d2V/dx2 along the packet center
// (coefficient v2(t) for this potential family).
enum class WidthVariant { kostin_scaled, ck_scaled, generalized_gamma_i, complex_friction };

// Width below which the integrator declares a collapse singularity.
constexpr double kSigmaFloor = 1e-12;

// --- deterministic center ---------------------------------------------------

// RK4 for qdd = -gamma_r qd - (v1(t) + v2(t) q)/m. Requires gamma_i == 0.
// Path.value = q, Path.derivative = qd. Throws on non-finite state.
Path integrate_center_deterministic(const SystemParams& params, const Friction& friction,
                                    const QuadraticPotential& pot, const GaussianState& state0,
                                    const TimeGrid& grid);

// Closed form for qdd + gamma qd + (V1 + V2 q)/m = 0 with constant V1, V2.
double center_analytic_static(double x0, double xdot0, double V1, double V2, double gamma,
                              double m, double t);

// Closed form for the driven repeller
//   qdd + gamma qd - omega^2 q = -(charge E0 / m) cos(omega0 t + phi),
// i.e. V(x,t) = charge E0 cos(omega0 t + phi) x - 1/2 m omega^2 x^2.
double center_analytic_driven(double x0, double xdot0, double charge, double E0, double omega0,
                              double phi, double omega, double gamma, double m, double t);

// --- stochastic center --------------------------------------------------------

// One realization of qdd = -gamma qd - V'(q)/m + F(t)/m with white noise of
// intensity 2 m gamma kT, via the BAOAB splitting (velocity half-kick, drift,
// exact Ornstein-Uhlenbeck step, drift, half-kick). The friction+noise
// substep is exact, so the V=0 stationary velocity variance is exactly kT/m.
// kT = 0 or a noiseless bath delegates to integrate_center_deterministic.
// Throws if gamma == 0 with kT > 0 (noise intensity ill-defined).
Path integrate_center_langevin(const SystemParams& params, const Friction& friction,
                               const QuadraticPotential& pot, const Bath& bath,
                               const GaussianState& state0, const TimeGrid& grid,
                               RandomStream& noise);

// --- width --------------------------------------------------------------------

// RK4 for the selected width equation; Path.value = sigma, derivative =
// sigma_dot. Aborts (throws) if sigma falls to kSigmaFloor or a leading
// coefficient vanishes.
Path integrate_width(WidthVariant variant, const SystemParams& params, const Friction& friction,
                     const QuadraticPotential& pot, const GaussianState& state0,
                     const TimeGrid& grid);

// Closed form of the classical-regime width equation
// sdd + gamma sd + (V2/m) s = 0 (same structure as the static center).
double width_analytic_classical(double sigma0, double sigma_dot0, double V2, double gamma,
                                double m, double t);

// The gamma_i that makes sigma(t) = sigma0 a fixed point of the
// generalized_gamma_i width equation: -hbar/(2 m sigma0^2) + (2 sigma0^2/hbar) V2.
double soliton_gamma_i(double sigma0, double V2, double m, double hbar);

// --- complex friction: coupled center and width -------------------------------

struct CoupledPath {
    Path center;  // q, qd
    Path width;   // sigma, sigma_dot
};

// Simultaneous RK4 of the complex-friction center and width equations with
// V1, V2 evaluated at the running center. At gamma_i = 0 the center equation
// reduces exactly to the classical damped equation for every gamma_r; the
// width equation then carries a +gamma_r^2/4 sigma term instead of a
// -gamma_r sigma_dot term, so it coincides with the generalized_gamma_i
// width only when gamma_r = 0 as well. Requires hbar_tilde > 0.
CoupledPath integrate_complex_friction_system(const SystemParams& params,
                                              const Friction& friction,
                                              const QuadraticPotential& pot,
                                              const GaussianState& state0, const TimeGrid& grid);

}  // namespace bohm
