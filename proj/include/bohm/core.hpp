#pragma once
// Core domain types shared by every simulation module: system parameters with
// the quantum-classical transition constant, friction and bath descriptors,
// the family of at-most-quadratic potentials that the closed-form solutions
// pattern-match on, and the Gaussian packet state.
//
// Unit convention: atomic units by default (m = hbar = 1, field coupling
// charge -1); everything is overridable.

#include <cmath>
#include <string>

namespace bohm {

// Physical parameters of the wave-packet system.
// epsilon interpolates between classical (0) and quantum (1) dynamics through
// the scaled constant hbar_tilde = hbar * sqrt(epsilon).
struct SystemParams {
    double mass = 1.0;     // particle mass, > 0
    double hbar = 1.0;     // base Planck constant, > 0
    double epsilon = 1.0;  // transition parameter in [0, 1]

    double hbar_tilde() const { return hbar * std::sqrt(epsilon); }
};

// Complex friction coefficient split into real and imaginary parts.
// gamma_i may be negative (free-packet solitons require it).
struct Friction {
    double gamma_r = 0.0;  // classical (real) friction, 1/time, >= 0
    double gamma_i = 0.0;  // quantum (imaginary) friction, 1/time, any sign
};

enum class NoiseKind { none, gaussian_white };

// Thermal bath. For gaussian_white the random force obeys
// <F(0) F(t)> = 2 m gamma kT delta(t).
struct Bath {
    double kT = 0.0;                     // k_B * T, energy units, >= 0
    NoiseKind kind = NoiseKind::none;
};

enum class PotentialKind { constant, driven_repeller, gaussian_window_repeller };

// At-most-quadratic potential V(x,t) = v0(t) + v1(t) x + (1/2) v2(t) x^2.
//
// The three closed-form families:
//   constant                  fixed coefficients (free particle, harmonic
//                             well, static parabolic repeller, ...).
//   driven_repeller           v1(t) = charge * E0 * cos(omega0 t + phi),
//                             v2    = -m omega^2: an inverted harmonic
//                             oscillator in a monochromatic field.
//   gaussian_window_repeller  v2(t) = -m omega^2 exp(-g (t - tB)^2): a
//                             parabolic repeller switched on around t = tB.
//
// Potentials are parameterized families rather than user callables so the
// analytic solvers can pattern-match on the descriptor.
struct QuadraticPotential {
    PotentialKind kind = PotentialKind::constant;

    // constant-kind coefficients
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;

    // driven_repeller parameters
    double charge = -1.0;  // field coupling charge (atomic-unit default -1)
    double E0 = 0.0;       // field amplitude
    double omega0 = 0.0;   // field frequency
    double phi = 0.0;      // field phase

    // repeller curvature (driven + windowed kinds)
    double omega = 0.0;    // curvature frequency of -1/2 m omega^2 x^2
    double mass = 1.0;     // mass entering the repeller curvature

    // gaussian_window_repeller parameters
    double g = 0.0;        // window decay rate
    double tB = 0.0;       // window center time

    static QuadraticPotential free_particle();
    static QuadraticPotential constant_coeffs(double v0, double v1, double v2);
    static QuadraticPotential driven_repeller(double mass, double charge, double E0,
                                              double omega0, double phi, double omega);
    static QuadraticPotential gaussian_window_repeller(double mass, double omega,
                                                       double g, double tB);

    // Coefficient functions of V(x,t) = v0 + v1 x + 1/2 v2 x^2 at time t.
    double v0(double t) const;
    double v1(double t) const;
    double v2(double t) const;

    // True when v1 and v2 do not depend on t (closed-form center solutions
    // exist only then).
    bool time_independent() const;
};

struct PotentialEval {
    double V;    // V(x,t)
    double dV;   // dV/dx
    double d2V;  // d^2V/dx^2
};

// Evaluate (V, dV/dx, d2V/dx2) at (x, t).
PotentialEval eval_potential(const QuadraticPotential& pot, double x, double t);

// Complete dynamical state of the Gaussian ansatz.
struct GaussianState {
    double q = 0.0;          // packet center
    double q_dot = 0.0;      // center velocity
    double sigma = 1.0;      // packet width, > 0
    double sigma_dot = 0.0;  // width velocity
};

// Parameter bundle that passed validation.
struct SystemBundle {
    SystemParams params;
    Friction friction;
    Bath bath;
};

// Check all type invariants (epsilon range, positive mass/hbar, nonnegative
// gamma_r and kT); throws std::invalid_argument naming the offending field.
SystemBundle validate_params(const SystemParams& params, const Friction& friction,
                             const Bath& bath);

// Check state invariants (sigma > 0, all fields finite); throws on violation.
void validate_state(const GaussianState& state);

}  // namespace bohm
