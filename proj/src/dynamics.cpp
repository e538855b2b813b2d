#include "bohm/dynamics.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace bohm {

namespace {

// --- fixed-step classic RK4 ---------------------------------------------------

template <std::size_t N, class F>
std::array<double, N> rk4_step(const F& deriv, double t, double h,
                               const std::array<double, N>& y) {
    std::array<double, N> k1 = deriv(t, y), y2{};
    for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + 0.5 * h * k1[i];
    std::array<double, N> k2 = deriv(t + 0.5 * h, y2);
    for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + 0.5 * h * k2[i];
    std::array<double, N> k3 = deriv(t + 0.5 * h, y2);
    for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + h * k3[i];
    std::array<double, N> k4 = deriv(t + h, y2);
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

template <std::size_t N>
void check_finite(const std::array<double, N>& y, double t, const char* what) {
    for (double v : y) {
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << what << " integration produced a non-finite state at t = " << t << " (state:";
            for (double w : y) msg << ' ' << w;
            msg << ")";
            throw std::runtime_error(msg.str());
        }
    }
}

[[noreturn]] void throw_width_collapse(double t, double sigma) {
    std::ostringstream msg;
    msg << "width collapsed to the singularity floor at t = " << t << " (sigma = " << sigma
        << ", floor = " << kSigmaFloor << ")";
    throw std::runtime_error(msg.str());
}

// --- damped linear basis --------------------------------------------------------
// For ydd + gamma yd + k y = 0 the pair (ch, sh) below spans solutions as
//   y(t) = y0 (ch + gamma/2 sh) + yd0 sh,
// i.e. ch = e^{-gamma t/2} cosh(Omega t), sh = e^{-gamma t/2} sinh(Omega t)/Omega
// with Omega^2 = gamma^2/4 - k (trigonometric when Omega^2 < 0).

struct DampedBasis {
    double ch, sh;
};

DampedBasis damped_basis(double k, double gamma, double t) {
    const double disc = 0.25 * gamma * gamma - k;
    if (disc > 1e-24) {
        const double om = std::sqrt(disc);
        const double wt = om * t;
        if (wt < 300.0) {
            const double e = std::exp(-0.5 * gamma * t);
            return DampedBasis{e * std::cosh(wt), e * std::sinh(wt) / om};
        }
        // overflow-stable split: growing and decaying exponentials separately
        const double ep = std::exp((om - 0.5 * gamma) * t);
        const double em = std::exp(-(om + 0.5 * gamma) * t);
        return DampedBasis{0.5 * (ep + em), (ep - em) / (2.0 * om)};
    }
    if (disc < -1e-24) {
        const double om = std::sqrt(-disc);
        const double e = std::exp(-0.5 * gamma * t);
        return DampedBasis{e * std::cos(om * t), e * std::sin(om * t) / om};
    }
    // critically damped (or indistinguishable from it)
    const double e = std::exp(-0.5 * gamma * t);
    return DampedBasis{e, e * t};
}

}  // namespace

// --- TimeGrid -------------------------------------------------------------------

TimeGrid::TimeGrid(double start, double end, double step) : t0(start), t1(end), dt(step) {
    if (!(std::isfinite(t0) && std::isfinite(t1) && std::isfinite(dt)))
        throw std::invalid_argument("time grid parameters must be finite");
    if (!(t1 > t0)) throw std::invalid_argument("time grid requires t1 > t0");
    if (!(dt > 0.0)) throw std::invalid_argument("time grid requires dt > 0");
    const double n = std::round((t1 - t0) / dt);
    if (!(n >= 1.0) || n > 4e9)
        throw std::invalid_argument("time grid step count out of range");
    n_steps = static_cast<std::size_t>(n);
}

// --- deterministic center ---------------------------------------------------------

Path integrate_center_deterministic(const SystemParams& params, const Friction& friction,
                                    const QuadraticPotential& pot, const GaussianState& state0,
                                    const TimeGrid& grid) {
    validate_params(params, friction, Bath{});
    validate_state(state0);
    if (friction.gamma_i != 0.0)
        throw std::invalid_argument(
            "deterministic center equation requires gamma_i = 0 (use the complex-friction "
            "system for gamma_i != 0)");
    const double m = params.mass;
    const double gr = friction.gamma_r;
    const auto deriv = [&](double t, const std::array<double, 2>& y) {
        return std::array<double, 2>{y[1], -gr * y[1] - (pot.v1(t) + pot.v2(t) * y[0]) / m};
    };
    Path path(grid);
    std::array<double, 2> y{state0.q, state0.q_dot};
    path.value[0] = y[0];
    path.derivative[0] = y[1];
    for (std::size_t k = 0; k < grid.n_steps; ++k) {
        y = rk4_step(deriv, grid.time(k), grid.dt, y);
        check_finite(y, grid.time(k + 1), "center");
        path.value[k + 1] = y[0];
        path.derivative[k + 1] = y[1];
    }
    return path;
}

double center_analytic_static(double x0, double xdot0, double V1, double V2, double gamma,
                              double m, double t) {
    if (!(m > 0.0)) throw std::invalid_argument("center_analytic_static: mass must be positive");
    if (!(gamma >= 0.0)) throw std::invalid_argument("center_analytic_static: gamma must be >= 0");
    if (V2 != 0.0) {
        const double qe = -V1 / V2;  // static equilibrium point
        const DampedBasis b = damped_basis(V2 / m, gamma, t);
        return qe + (x0 - qe) * (b.ch + 0.5 * gamma * b.sh) + xdot0 * b.sh;
    }
    const double a = -V1 / m;  // constant acceleration
    if (gamma > 0.0) {
        const double s = -std::expm1(-gamma * t) / gamma;  // (1 - e^{-gamma t})/gamma
        return x0 + (a / gamma) * t + (xdot0 - a / gamma) * s;
    }
    return x0 + xdot0 * t + 0.5 * a * t * t;
}

double center_analytic_driven(double x0, double xdot0, double charge, double E0, double omega0,
                              double phi, double omega, double gamma, double m, double t) {
    if (!(m > 0.0)) throw std::invalid_argument("center_analytic_driven: mass must be positive");
    if (!(gamma >= 0.0)) throw std::invalid_argument("center_analytic_driven: gamma must be >= 0");
    const double w2 = omega * omega;
    if (E0 == 0.0) return center_analytic_static(x0, xdot0, 0.0, -m * w2, gamma, m, t);
    const double s = omega0 * omega0 + w2;
    const double D = s * s + gamma * gamma * omega0 * omega0;
    if (D == 0.0)  // omega0 = omega = 0: a constant force, not an oscillation
        return center_analytic_static(x0, xdot0, charge * E0 * std::cos(phi), 0.0, gamma, m, t);
    const double A = (charge * E0 / m) / D;
    const double qp = A * (s * std::cos(omega0 * t + phi) - gamma * omega0 * std::sin(omega0 * t + phi));
    const double qp0 = A * (s * std::cos(phi) - gamma * omega0 * std::sin(phi));
    const double qpd0 = A * omega0 * (-s * std::sin(phi) - gamma * omega0 * std::cos(phi));
    const DampedBasis b = damped_basis(-w2, gamma, t);
    return (x0 - qp0) * (b.ch + 0.5 * gamma * b.sh) + (xdot0 - qpd0) * b.sh + qp;
}

// --- stochastic center ---------------------------------------------------------------

Path integrate_center_langevin(const SystemParams& params, const Friction& friction,
                               const QuadraticPotential& pot, const Bath& bath,
                               const GaussianState& state0, const TimeGrid& grid,
                               RandomStream& noise) {
    validate_params(params, friction, bath);
    validate_state(state0);
    if (friction.gamma_i != 0.0)
        throw std::invalid_argument("Langevin center equation requires gamma_i = 0");
    if (bath.kind == NoiseKind::none || bath.kT == 0.0)
        return integrate_center_deterministic(params, friction, pot, state0, grid);
    if (friction.gamma_r == 0.0)
        throw std::invalid_argument(
            "white-noise bath with gamma_r = 0 has ill-defined noise intensity "
            "(fluctuation-dissipation requires gamma_r > 0)");

    const double m = params.mass;
    const double gr = friction.gamma_r;
    const double h = grid.dt;
    const double c1 = std::exp(-gr * h);
    const double c2 = std::sqrt(bath.kT / m * (1.0 - c1 * c1));
    const auto accel = [&](double q, double t) { return -(pot.v1(t) + pot.v2(t) * q) / m; };

    Path path(grid);
    double q = state0.q, v = state0.q_dot;
    path.value[0] = q;
    path.derivative[0] = v;
    for (std::size_t k = 0; k < grid.n_steps; ++k) {
        const double t = grid.time(k);
        v += 0.5 * h * accel(q, t);
        q += 0.5 * h * v;
        v = c1 * v + c2 * noise.normal();
        q += 0.5 * h * v;
        v += 0.5 * h * accel(q, t + h);
        if (!std::isfinite(q) || !std::isfinite(v))
            check_finite(std::array<double, 2>{q, v}, t + h, "Langevin center");
        path.value[k + 1] = q;
        path.derivative[k + 1] = v;
    }
    return path;
}

// --- width -----------------------------------------------------------------------------

namespace {

// sigma acceleration of the complex-friction width equation (the polynomial
// generalization of the Pinney equation):
//   (1 + m gi s^2/ht) sdd - (3 m gi s/ht) sd^2 + (2 m gi gr s^2/ht) sd
//   + (m V2 gi^2/ht^2) s^5 + (gi/2ht)(4 V2 - m gi^2 - m gr^2) s^3
//   + (V2/m - (gr^2 + 5 gi^2)/4) s - gi ht/(m s) - ht^2/(4 m^2 s^3) = 0.
double complex_friction_sigma_ddot(double sigma, double sigma_dot, double V2, double m,
                                   double gr, double gi, double ht, double t) {
    const double s2 = sigma * sigma;
    const double s3 = s2 * sigma;
    const double s5 = s3 * s2;
    const double lead = 1.0 + m * gi * s2 / ht;
    if (std::fabs(lead) < 1e-12) {
        std::ostringstream msg;
        msg << "complex-friction width equation: leading coefficient vanished at t = " << t
            << " (sigma = " << sigma << ")";
        throw std::runtime_error(msg.str());
    }
    const double rhs = (3.0 * m * gi * sigma / ht) * sigma_dot * sigma_dot -
                       (2.0 * m * gi * gr * s2 / ht) * sigma_dot -
                       (m * V2 * gi * gi / (ht * ht)) * s5 -
                       (gi / (2.0 * ht)) * (4.0 * V2 - m * gi * gi - m * gr * gr) * s3 -
                       (V2 / m - 0.25 * (gr * gr + 5.0 * gi * gi)) * sigma +
                       gi * ht / (m * sigma) + ht * ht / (4.0 * m * m * s3);
    return rhs / lead;
}

}  // namespace

Path integrate_width(WidthVariant variant, const SystemParams& params, const Friction& friction,
                     const QuadraticPotential& pot, const GaussianState& state0,
                     const TimeGrid& grid) {
    validate_params(params, friction, Bath{});
    validate_state(state0);
    const double m = params.mass;
    const double ht = params.hbar_tilde();
    const double gr = friction.gamma_r;
    const double gi = friction.gamma_i;
    if (variant == WidthVariant::complex_friction && !(ht > 0.0))
        throw std::invalid_argument(
            "complex-friction width equation requires a positive scaled Planck constant");

    const double pinney = ht * ht / (4.0 * m * m);
    const auto deriv = [&](double t, const std::array<double, 2>& y) {
        const double s = y[0], sd = y[1];
        if (s <= kSigmaFloor) throw_width_collapse(t, s);
        const double V2 = pot.v2(t);
        double sdd = 0.0;
        switch (variant) {
            case WidthVariant::kostin_scaled:
                sdd = -gr * sd + pinney / (s * s * s) - V2 / m * s;
                break;
            case WidthVariant::ck_scaled:
                sdd = -gr * sd + pinney / (s * s * s) * std::exp(-2.0 * gr * t) - V2 / m * s;
                break;
            case WidthVariant::generalized_gamma_i:
                sdd = -gr * sd + pinney / (s * s * s) + ht * gi / (2.0 * m * s) - V2 / m * s;
                break;
            case WidthVariant::complex_friction:
                sdd = complex_friction_sigma_ddot(s, sd, V2, m, gr, gi, ht, t);
                break;
        }
        return std::array<double, 2>{sd, sdd};
    };

    Path path(grid);
    std::array<double, 2> y{state0.sigma, state0.sigma_dot};
    path.value[0] = y[0];
    path.derivative[0] = y[1];
    for (std::size_t k = 0; k < grid.n_steps; ++k) {
        y = rk4_step(deriv, grid.time(k), grid.dt, y);
        check_finite(y, grid.time(k + 1), "width");
        if (y[0] <= kSigmaFloor) throw_width_collapse(grid.time(k + 1), y[0]);
        path.value[k + 1] = y[0];
        path.derivative[k + 1] = y[1];
    }
    return path;
}

double width_analytic_classical(double sigma0, double sigma_dot0, double V2, double gamma,
                                double m, double t) {
    if (!(sigma0 > 0.0))
        throw std::invalid_argument("width_analytic_classical: sigma0 must be positive");
    if (!(m > 0.0)) throw std::invalid_argument("width_analytic_classical: mass must be positive");
    const DampedBasis b = damped_basis(V2 / m, gamma, t);
    return sigma0 * (b.ch + 0.5 * gamma * b.sh) + sigma_dot0 * b.sh;
}

double soliton_gamma_i(double sigma0, double V2, double m, double hbar) {
    if (!(sigma0 > 0.0)) throw std::invalid_argument("soliton_gamma_i: sigma0 must be positive");
    if (!(m > 0.0)) throw std::invalid_argument("soliton_gamma_i: mass must be positive");
    if (!(hbar > 0.0)) throw std::invalid_argument("soliton_gamma_i: hbar must be positive");
    return -hbar / (2.0 * m * sigma0 * sigma0) + (2.0 * sigma0 * sigma0 / hbar) * V2;
}

// --- complex friction: coupled system ------------------------------------------------

CoupledPath integrate_complex_friction_system(const SystemParams& params,
                                              const Friction& friction,
                                              const QuadraticPotential& pot,
                                              const GaussianState& state0, const TimeGrid& grid) {
    validate_params(params, friction, Bath{});
    validate_state(state0);
    const double m = params.mass;
    const double ht = params.hbar_tilde();
    const double gr = friction.gamma_r;
    const double gi = friction.gamma_i;
    if (!(ht > 0.0))
        throw std::invalid_argument(
            "complex-friction system requires a positive scaled Planck constant");

    // state: (q, qd, sigma, sigma_dot)
    const auto deriv = [&](double t, const std::array<double, 4>& y) {
        const double q = y[0], qd = y[1], s = y[2], sd = y[3];
        if (s <= kSigmaFloor) throw_width_collapse(t, s);
        const double V1 = pot.v1(t) + pot.v2(t) * q;
        const double V2 = pot.v2(t);
        const double s2 = s * s;
        const double s3 = s2 * s;
        const double s4 = s2 * s2;
        const double s6 = s4 * s2;
        const double lead = 1.0 + gi * (3.0 * m * s2 / ht + 2.0 * m * m * gi * s4 / (ht * ht));
        if (std::fabs(lead) < 1e-12) {
            std::ostringstream msg;
            msg << "complex-friction center equation: leading coefficient vanished at t = " << t;
            throw std::runtime_error(msg.str());
        }
        const double damping =
            gr + gi * (4.0 * m * gr * s2 / ht + 4.0 * m * m * gi * gr * s4 / (ht * ht) -
                       6.0 * m * s * sd / ht - 8.0 * m * m * gi * s3 * sd / (ht * ht));
        const double force =
            -(V1 / m) * (1.0 + gi * (5.0 * m * s2 / ht + 8.0 * m * m * gi * s4 / (ht * ht) +
                                     4.0 * m * m * m * gi * gi * s6 / (ht * ht * ht)));
        const double qdd = (force - damping * qd) / lead;
        const double sdd = complex_friction_sigma_ddot(s, sd, V2, m, gr, gi, ht, t);
        return std::array<double, 4>{qd, qdd, sd, sdd};
    };

    CoupledPath out{Path(grid), Path(grid)};
    std::array<double, 4> y{state0.q, state0.q_dot, state0.sigma, state0.sigma_dot};
    out.center.value[0] = y[0];
    out.center.derivative[0] = y[1];
    out.width.value[0] = y[2];
    out.width.derivative[0] = y[3];
    for (std::size_t k = 0; k < grid.n_steps; ++k) {
        y = rk4_step(deriv, grid.time(k), grid.dt, y);
        check_finite(y, grid.time(k + 1), "complex-friction system");
        if (y[2] <= kSigmaFloor) throw_width_collapse(grid.time(k + 1), y[2]);
        out.center.value[k + 1] = y[0];
        out.center.derivative[k + 1] = y[1];
        out.width.value[k + 1] = y[2];
        out.width.derivative[k + 1] = y[3];
    }
    return out;
}

}  // namespace bohm
