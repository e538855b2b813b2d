#include "bohm/selftest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <sstream>
#include <utility>

#include "bohm/core.hpp"
#include "bohm/dynamics.hpp"
#include "bohm/quadrature.hpp"
#include "bohm/rng.hpp"
#include "bohm/specfun.hpp"
#include "bohm/trajectories.hpp"

namespace bohm {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

CheckResult check(const std::string& name, double err, double tol) {
    return CheckResult{name, err < tol, "max err " + fmt(err) + " (tol " + fmt(tol) + ")"};
}

// --- RNG known answers -----------------------------------------------------------

CheckResult philox_known_answers() {
    struct Vector {
        std::array<std::uint32_t, 4> ctr;
        std::array<std::uint32_t, 2> key;
        std::array<std::uint32_t, 4> out;
    };
    const Vector vectors[] = {
        {{0u, 0u, 0u, 0u}, {0u, 0u}, {0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}},
        {{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
         {0xa4093822u, 0x299f31d0u},
         {0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}},
        {{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
         {0xffffffffu, 0xffffffffu},
         {0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}},
    };
    for (const Vector& v : vectors) {
        const auto got = philox4x32(v.ctr, v.key);
        if (got != v.out) {
            std::ostringstream os;
            os << std::hex << "counter block mismatch: got {" << got[0] << "," << got[1] << ","
               << got[2] << "," << got[3] << "}";
            return CheckResult{"philox_known_answers", false, os.str()};
        }
    }
    return CheckResult{"philox_known_answers", true, "3 keyed blocks reproduced"};
}

// --- deterministic center vs closed forms ------------------------------------------

double center_case_error(double V1, double V2, double gamma, double q0, double qd0,
                         double t_end) {
    SystemParams params;
    Friction fr{gamma, 0.0};
    const QuadraticPotential pot = QuadraticPotential::constant_coeffs(0.0, V1, V2);
    const TimeGrid grid(0.0, t_end, 1e-3);
    const Path path =
        integrate_center_deterministic(params, fr, pot, GaussianState{q0, qd0, 1.0, 0.0}, grid);
    double err = 0.0;
    for (std::size_t k = 0; k <= grid.n_steps; k += 250) {
        const double exact =
            center_analytic_static(q0, qd0, V1, V2, gamma, params.mass, grid.time(k));
        const double scale = std::max(1.0, std::fabs(exact));
        err = std::max(err, std::fabs(path.value[k] - exact) / scale);
    }
    return err;
}

CheckResult center_static_oracle() {
    double err = 0.0;
    err = std::max(err, center_case_error(0.0, -0.04, 0.06, -10.0, 1.0, 30.0));  // repeller
    err = std::max(err, center_case_error(0.3, 1.0, 0.0, 1.0, 0.0, 30.0));       // undamped well
    err = std::max(err, center_case_error(-0.2, 0.5, 0.4, 0.3, -0.7, 30.0));     // damped well
    err = std::max(err, center_case_error(0.5, 0.0, 0.8, 2.0, -1.0, 30.0));      // drag + force
    err = std::max(err, center_case_error(0.0, 0.25, 1.0, 1.0, 0.0, 30.0));      // critical
    return check("center_static_oracle", err, 1e-7);
}

CheckResult center_driven_oracle() {
    SystemParams params;
    const double omega = 0.2, gamma = 0.3 * omega;
    Friction fr{gamma, 0.0};
    const QuadraticPotential pot =
        QuadraticPotential::driven_repeller(params.mass, -1.0, 0.1, 0.17, -0.5 * M_PI, omega);
    const TimeGrid grid(0.0, 30.0, 1e-3);
    const GaussianState s0{-10.0, 1.0, 1.0, 0.0};
    const Path path = integrate_center_deterministic(params, fr, pot, s0, grid);
    double err = 0.0;
    for (std::size_t k = 0; k <= grid.n_steps; k += 250) {
        const double exact = center_analytic_driven(s0.q, s0.q_dot, -1.0, 0.1, 0.17, -0.5 * M_PI,
                                                    omega, gamma, params.mass, grid.time(k));
        err = std::max(err, std::fabs(path.value[k] - exact) / std::max(1.0, std::fabs(exact)));
    }
    return check("center_driven_oracle", err, 1e-7);
}

// --- width equations vs closed forms ----------------------------------------------

CheckResult width_classical_oracle() {
    SystemParams params;
    params.epsilon = 0.0;  // classical regime: the width equation loses its 1/sigma^3 term
    Friction fr{0.06, 0.0};
    const double V2 = -params.mass * 0.04;
    const QuadraticPotential pot = QuadraticPotential::constant_coeffs(0.0, 0.0, V2);
    const TimeGrid grid(0.0, 30.0, 1e-3);
    const GaussianState s0{0.0, 0.0, 1.0, 0.05};
    const Path path = integrate_width(WidthVariant::kostin_scaled, params, fr, pot, s0, grid);
    double err = 0.0;
    for (std::size_t k = 0; k <= grid.n_steps; k += 250) {
        const double exact = width_analytic_classical(s0.sigma, s0.sigma_dot, V2, fr.gamma_r,
                                                      params.mass, grid.time(k));
        err = std::max(err, std::fabs(path.value[k] - exact) / std::max(1.0, std::fabs(exact)));
    }
    return check("width_classical_oracle", err, 1e-7);
}

CheckResult width_frictionless_oracle() {
    double err = 0.0;
    for (double eps : {1.0, 0.5, 0.1}) {
        SystemParams params;
        params.epsilon = eps;
        const double omega = 0.2, sigma0 = 1.0;
        const double ht = params.hbar_tilde();
        const QuadraticPotential pot =
            QuadraticPotential::constant_coeffs(0.0, 0.0, -params.mass * omega * omega);
        const TimeGrid grid(0.0, 30.0, 1e-3);
        const Path path = integrate_width(WidthVariant::kostin_scaled, params, Friction{},
                                          pot, GaussianState{0.0, 0.0, sigma0, 0.0}, grid);
        const double m = params.mass;
        for (std::size_t k = 0; k <= grid.n_steps; k += 250) {
            const double wt = omega * grid.time(k);
            const double ch = std::cosh(wt), sh = std::sinh(wt);
            const double exact =
                sigma0 * std::sqrt(ch * ch + ht * ht / (4.0 * m * m * omega * omega *
                                                        sigma0 * sigma0 * sigma0 * sigma0) *
                                                sh * sh);
            err = std::max(err, std::fabs(path.value[k] - exact) / exact);
        }
    }
    return check("width_frictionless_oracle", err, 1e-7);
}

CheckResult width_soliton_fixed_point() {
    SystemParams params;
    const double sigma0 = 1.0, V2 = 0.5;
    const double gi = soliton_gamma_i(sigma0, V2, params.mass, params.hbar_tilde());
    Friction fr{0.2, gi};
    const QuadraticPotential pot = QuadraticPotential::constant_coeffs(0.0, 0.0, V2);
    const TimeGrid grid(0.0, 50.0, 1e-3);
    const Path path = integrate_width(WidthVariant::generalized_gamma_i, params, fr, pot,
                                      GaussianState{0.0, 0.0, sigma0, 0.0}, grid);
    double err = 0.0;
    for (double s : path.value) err = std::max(err, std::fabs(s - sigma0));
    return check("width_soliton_fixed_point", err, 1e-8);
}

// --- complex-friction system ---------------------------------------------------------

CheckResult complex_friction_decoupling() {
    // At gamma_i = 0 and gamma_r = 0 the system must reproduce the decoupled
    // center and width integrations exactly (to integrator round-off).
    SystemParams params;
    Friction fr{0.0, 0.0};
    const QuadraticPotential pot = QuadraticPotential::constant_coeffs(0.0, 0.1, 0.3);
    const TimeGrid grid(0.0, 10.0, 1e-3);
    const GaussianState s0{0.7, -0.2, 0.9, 0.1};
    const CoupledPath sys = integrate_complex_friction_system(params, fr, pot, s0, grid);
    const Path q = integrate_center_deterministic(params, fr, pot, s0, grid);
    const Path w = integrate_width(WidthVariant::generalized_gamma_i, params, fr, pot, s0, grid);
    double err = 0.0;
    for (std::size_t k = 0; k <= grid.n_steps; ++k) {
        err = std::max(err, std::fabs(sys.center.value[k] - q.value[k]));
        err = std::max(err, std::fabs(sys.width.value[k] - w.value[k]));
    }
    return check("complex_friction_decoupling", err, 1e-10);
}

CheckResult complex_friction_center_decoupling_damped() {
    // With gamma_i = 0 the center equation is classical for every gamma_r,
    // even though the damped width equation differs from the Pinney family.
    SystemParams params;
    Friction fr{0.2, 0.0};
    const QuadraticPotential pot = QuadraticPotential::constant_coeffs(0.0, 0.1, 0.3);
    const TimeGrid grid(0.0, 10.0, 1e-3);
    const GaussianState s0{0.7, -0.2, 0.9, 0.1};
    const CoupledPath sys = integrate_complex_friction_system(params, fr, pot, s0, grid);
    const Path q = integrate_center_deterministic(params, fr, pot, s0, grid);
    double err = 0.0;
    for (std::size_t k = 0; k <= grid.n_steps; ++k)
        err = std::max(err, std::fabs(sys.center.value[k] - q.value[k]));
    return check("complex_friction_center_decoupling_damped", err, 1e-10);
}

// --- special functions vs quadrature -------------------------------------------------

CheckResult fresnel_quadrature_oracle() {
    double err = 0.0;
    for (double u : {0.3, 0.7, 1.0, 1.5, 2.3, 2.9, 3.3, 3.7, 3.9, 4.2, 6.0, -1.2, -3.6}) {
        const double c_oracle = integrate_adaptive_simpson(
            [](double x) { return std::cos(0.5 * M_PI * x * x); }, 0.0, u, 1e-13);
        const double s_oracle = integrate_adaptive_simpson(
            [](double x) { return std::sin(0.5 * M_PI * x * x); }, 0.0, u, 1e-13);
        const FresnelPair f = fresnel(u);
        err = std::max(err, std::fabs(f.c - c_oracle));
        err = std::max(err, std::fabs(f.s - s_oracle));
    }
    return check("fresnel_quadrature_oracle", err, 1e-10);
}

CheckResult erf_quadrature_oracle() {
    const double two_over_sqrt_pi = 2.0 / std::sqrt(M_PI);
    double err = 0.0;
    for (double u : {0.2, 0.9, 1.0, 1.7, 2.5, 3.5, -0.8, -2.1}) {
        const double oracle = two_over_sqrt_pi *
                              integrate_adaptive_simpson(
                                  [](double x) { return std::exp(-x * x); }, 0.0, u, 1e-14);
        const ErfPair e = erf_family(u);
        err = std::max(err, std::fabs(e.erf - oracle));
        err = std::max(err, std::fabs(e.erf + e.erfc - 1.0));
    }
    return check("erf_quadrature_oracle", err, 1e-12);
}

// --- trajectory structure -------------------------------------------------------------

CheckResult noncrossing_random_ensembles() {
    RandomStream draw(0x5eed, 0, 7);  // any substream works for parameter draws
    const auto uniform_in = [&](double lo, double hi) {
        return lo + (hi - lo) * draw.uniform();
    };
    const WidthVariant variants[] = {WidthVariant::kostin_scaled, WidthVariant::ck_scaled,
                                     WidthVariant::generalized_gamma_i,
                                     WidthVariant::complex_friction};
    for (int trial = 0; trial < 1000; ++trial) {
        SystemParams params;
        params.epsilon = uniform_in(0.05, 1.0);
        const WidthVariant variant = variants[trial % 4];
        Friction fr;
        fr.gamma_r = uniform_in(0.0, 0.5);
        fr.gamma_i =
            variant == WidthVariant::generalized_gamma_i ? uniform_in(-0.2, 0.2) : 0.0;
        // The complex-friction width equation blows up in finite time for
        // generic spreading packets (its sigma_dot^2 term is antidamping), so
        // exercise that variant near its stable soliton: gamma_i at the soliton
        // value for sigma_ref, starting from a small width perturbation.
        double v2 = uniform_in(-0.25, 1.0);
        double sigma_init = uniform_in(0.5, 2.0);
        double sigma_dot_init = uniform_in(-0.3, 0.3);
        if (variant == WidthVariant::complex_friction) {
            v2 = uniform_in(0.0, 1.0);
            const double sigma_ref = sigma_init;
            fr.gamma_i =
                soliton_gamma_i(sigma_ref, v2, params.mass, params.hbar_tilde());
            sigma_init = sigma_ref * uniform_in(0.98, 1.02);
            sigma_dot_init = 0.0;
        }
        const QuadraticPotential pot =
            QuadraticPotential::constant_coeffs(0.0, uniform_in(-0.3, 0.3), v2);
        const GaussianState s0{uniform_in(-2.0, 2.0), uniform_in(-1.0, 1.0),
                               sigma_init, sigma_dot_init};
        const TimeGrid grid(0.0, 5.0, 5e-3);
        const Path q = integrate_center_deterministic(params, Friction{fr.gamma_r, 0.0}, pot,
                                                      s0, grid);
        Path w(grid);
        try {
            w = integrate_width(variant, params, fr, pot, s0, grid);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "trial " << trial << " variant " << static_cast<int>(variant) << " eps "
               << params.epsilon << " gr " << fr.gamma_r << " gi " << fr.gamma_i << " v2 "
               << pot.c2 << " s0 " << s0.sigma << " sd0 " << s0.sigma_dot << ": " << e.what();
            return CheckResult{"noncrossing_random_ensembles", false, os.str()};
        }

        std::array<double, 8> x0{};
        for (double& x : x0) x = s0.q + s0.sigma * (2.0 * draw.uniform() - 1.0) * 3.0;
        std::sort(x0.begin(), x0.end());
        std::array<Path, 8> trajs{dressing_trajectory(x0[0], q, w), dressing_trajectory(x0[1], q, w),
                                  dressing_trajectory(x0[2], q, w), dressing_trajectory(x0[3], q, w),
                                  dressing_trajectory(x0[4], q, w), dressing_trajectory(x0[5], q, w),
                                  dressing_trajectory(x0[6], q, w), dressing_trajectory(x0[7], q, w)};
        for (std::size_t k = 0; k <= grid.n_steps; ++k) {
            if (!(w.value[k] > 0.0))
                return CheckResult{"noncrossing_random_ensembles", false,
                                   "width not positive in trial " + std::to_string(trial)};
            for (int i = 0; i + 1 < 8; ++i) {
                if (x0[i] == x0[i + 1]) continue;
                if (!(trajs[i].value[k] < trajs[i + 1].value[k]))
                    return CheckResult{"noncrossing_random_ensembles", false,
                                       "order violated in trial " + std::to_string(trial) +
                                           " at t = " + std::to_string(grid.time(k))};
            }
        }
    }
    return CheckResult{"noncrossing_random_ensembles", true,
                       "1000 randomized ensembles stayed ordered"};
}

CheckResult langevin_noise_off_delegation() {
    SystemParams params;
    Friction fr{0.3, 0.0};
    const QuadraticPotential pot = QuadraticPotential::constant_coeffs(0.0, 0.2, 0.5);
    const TimeGrid grid(0.0, 5.0, 1e-3);
    const GaussianState s0{1.0, -0.5, 1.0, 0.0};
    RandomStream noise(1, 0, kSubstreamNoisePath);
    const Path a =
        integrate_center_langevin(params, fr, pot, Bath{0.0, NoiseKind::gaussian_white}, s0,
                                  grid, noise);
    const Path b = integrate_center_deterministic(params, fr, pot, s0, grid);
    for (std::size_t k = 0; k <= grid.n_steps; ++k)
        if (a.value[k] != b.value[k] || a.derivative[k] != b.derivative[k])
            return CheckResult{"langevin_noise_off_delegation", false,
                               "paths differ at t = " + std::to_string(grid.time(k))};
    return CheckResult{"langevin_noise_off_delegation", true,
                       "kT = 0 path identical to the deterministic integrator"};
}

}  // namespace

std::vector<CheckResult> run_selftest() {
    // Each check runs independently; an exception is reported as a failure of
    // that check instead of aborting the remaining ones.
    const std::pair<const char*, CheckResult (*)()> checks[] = {
        {"philox_known_answers", &philox_known_answers},
        {"center_static_oracle", &center_static_oracle},
        {"center_driven_oracle", &center_driven_oracle},
        {"width_classical_oracle", &width_classical_oracle},
        {"width_frictionless_oracle", &width_frictionless_oracle},
        {"width_soliton_fixed_point", &width_soliton_fixed_point},
        {"complex_friction_decoupling", &complex_friction_decoupling},
        {"complex_friction_center_decoupling_damped",
         &complex_friction_center_decoupling_damped},
        {"fresnel_quadrature_oracle", &fresnel_quadrature_oracle},
        {"erf_quadrature_oracle", &erf_quadrature_oracle},
        {"noncrossing_random_ensembles", &noncrossing_random_ensembles},
        {"langevin_noise_off_delegation", &langevin_noise_off_delegation},
    };
    std::vector<CheckResult> results;
    results.reserve(std::size(checks));
    for (const auto& [name, fn] : checks) {
        try {
            results.push_back(fn());
        } catch (const std::exception& e) {
            results.push_back(CheckResult{name, false, std::string("exception: ") + e.what()});
        }
    }
    return results;
}

}  // namespace bohm
