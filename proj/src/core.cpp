#include "bohm/core.hpp"

#include <cmath>
#include <stdexcept>

namespace bohm {

QuadraticPotential QuadraticPotential::free_particle() {
    return QuadraticPotential{};
}

QuadraticPotential QuadraticPotential::constant_coeffs(double v0, double v1, double v2) {
    QuadraticPotential pot;
    pot.kind = PotentialKind::constant;
    pot.c0 = v0;
    pot.c1 = v1;
    pot.c2 = v2;
    return pot;
}

QuadraticPotential QuadraticPotential::driven_repeller(double mass, double charge, double E0,
                                                       double omega0, double phi, double omega) {
    QuadraticPotential pot;
    pot.kind = PotentialKind::driven_repeller;
    pot.mass = mass;
    pot.charge = charge;
    pot.E0 = E0;
    pot.omega0 = omega0;
    pot.phi = phi;
    pot.omega = omega;
    return pot;
}

QuadraticPotential QuadraticPotential::gaussian_window_repeller(double mass, double omega,
                                                                double g, double tB) {
    QuadraticPotential pot;
    pot.kind = PotentialKind::gaussian_window_repeller;
    pot.mass = mass;
    pot.omega = omega;
    pot.g = g;
    pot.tB = tB;
    return pot;
}

double QuadraticPotential::v0(double /*t*/) const {
    return kind == PotentialKind::constant ? c0 : 0.0;
}

double QuadraticPotential::v1(double t) const {
    switch (kind) {
        case PotentialKind::constant:
            return c1;
        case PotentialKind::driven_repeller:
            return charge * E0 * std::cos(omega0 * t + phi);
        case PotentialKind::gaussian_window_repeller:
            return 0.0;
    }
    return 0.0;
}

double QuadraticPotential::v2(double t) const {
    switch (kind) {
        case PotentialKind::constant:
            return c2;
        case PotentialKind::driven_repeller:
            return -mass * omega * omega;
        case PotentialKind::gaussian_window_repeller: {
            const double dt = t - tB;
            return -mass * omega * omega * std::exp(-g * dt * dt);
        }
    }
    return 0.0;
}

bool QuadraticPotential::time_independent() const {
    switch (kind) {
        case PotentialKind::constant:
            return true;
        case PotentialKind::driven_repeller:
            return E0 == 0.0;  // field off: static repeller
        case PotentialKind::gaussian_window_repeller:
            return omega == 0.0 || g == 0.0;
    }
    return false;
}

PotentialEval eval_potential(const QuadraticPotential& pot, double x, double t) {
    const double a0 = pot.v0(t);
    const double a1 = pot.v1(t);
    const double a2 = pot.v2(t);
    return PotentialEval{a0 + a1 * x + 0.5 * a2 * x * x, a1 + a2 * x, a2};
}

SystemBundle validate_params(const SystemParams& params, const Friction& friction,
                             const Bath& bath) {
    if (!(params.mass > 0.0) || !std::isfinite(params.mass))
        throw std::invalid_argument("mass must be positive and finite, got " +
                                    std::to_string(params.mass));
    if (!(params.hbar > 0.0) || !std::isfinite(params.hbar))
        throw std::invalid_argument("hbar must be positive and finite, got " +
                                    std::to_string(params.hbar));
    if (!(params.epsilon >= 0.0 && params.epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1], got " +
                                    std::to_string(params.epsilon));
    if (!(friction.gamma_r >= 0.0) || !std::isfinite(friction.gamma_r))
        throw std::invalid_argument("gamma_r must be nonnegative and finite, got " +
                                    std::to_string(friction.gamma_r));
    if (!std::isfinite(friction.gamma_i))
        throw std::invalid_argument("gamma_i must be finite");
    if (!(bath.kT >= 0.0) || !std::isfinite(bath.kT))
        throw std::invalid_argument("kT must be nonnegative and finite, got " +
                                    std::to_string(bath.kT));
    return SystemBundle{params, friction, bath};
}

void validate_state(const GaussianState& state) {
    if (!std::isfinite(state.q) || !std::isfinite(state.q_dot) ||
        !std::isfinite(state.sigma) || !std::isfinite(state.sigma_dot))
        throw std::invalid_argument("Gaussian state has non-finite fields");
    if (!(state.sigma > 0.0))
        throw std::invalid_argument("sigma must be positive, got " +
                                    std::to_string(state.sigma));
}

}  // namespace bohm
