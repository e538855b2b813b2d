// Scenario-driver checks: column schemas, pinned observables for the shutter
// transient and the driven repeller, oscillation feature extraction, and
// thread-count invariance of the ensemble drivers.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bohm/core.hpp"
#include "bohm/dynamics.hpp"
#include "bohm/experiments.hpp"
#include "bohm/trajectories.hpp"
#include "test_util.hpp"

using namespace bohm;

namespace {

double scalar(const ExperimentResult& r, const std::string& name) {
    for (const auto& kv : r.scalars)
        if (kv.first == name) return kv.second;
    REQUIRE(false, "missing scalar '" + name + "' in " + r.kind);
    return 0.0;
}

bool has_scalar(const ExperimentResult& r, const std::string& name) {
    for (const auto& kv : r.scalars)
        if (kv.first == name) return true;
    return false;
}

void check_result_shape(const ExperimentResult& r, const std::vector<std::string>& names) {
    REQUIRE(r.column_names == names, r.kind + ": column names");
    REQUIRE(r.columns.size() == names.size(), r.kind + ": column count");
    for (const auto& col : r.columns)
        REQUIRE(col.size() == r.columns[0].size(), r.kind + ": ragged columns");
    REQUIRE(!r.columns[0].empty(), r.kind + ": empty result");
}

// --- oscillation feature extraction ---------------------------------------------

void check_peak_extraction() {
    const std::vector<double> ts{0.0, 1.0, 2.0, 3.0};

    // Strict interior maximum with exact parabola refinement.
    {
        // Samples of y = 4 - (t - 1.3)^2 at t = 1.0, 1.25, 1.5.
        const std::vector<double> xs{1.0, 1.25, 1.5};
        std::vector<double> ys;
        for (double t : xs) ys.push_back(4.0 - (t - 1.3) * (t - 1.3));
        const PeakInfo peak = first_interior_maximum(xs, ys);
        REQUIRE(peak.interior, "parabola samples have an interior maximum");
        REQUIRE_CLOSE(peak.t, 1.3, 1e-12, "refined abscissa recovers the vertex");
        REQUIRE_CLOSE(peak.value, 4.0, 1e-12, "refined ordinate recovers the vertex");
    }

    // Plateaus are not strict maxima.
    REQUIRE(!first_interior_maximum(ts, {0.0, 1.0, 1.0, 0.0}).interior,
            "plateau is not a strict maximum");
    // Monotone data has no interior maximum and zero oscillation amplitude.
    {
        const Oscillation osc = first_oscillation(ts, {0.0, 1.0, 2.0, 3.0});
        REQUIRE(!osc.has_max && osc.amplitude == 0.0, "monotone curve has no oscillation");
    }

    // Interior minimum after the maximum.
    {
        const Oscillation osc = first_oscillation(ts, {0.0, 2.0, 1.0, 3.0});
        REQUIRE(osc.has_max && osc.min.interior, "max followed by interior min");
        REQUIRE(osc.amplitude > 0.9 && osc.amplitude < 1.3, "amplitude near max - min");
    }

    // Monotone tail after the maximum falls back to the running minimum.
    {
        const Oscillation osc = first_oscillation(ts, {0.0, 3.0, 2.0, 1.0});
        REQUIRE(osc.has_max && !osc.min.interior, "tail minimum is not interior");
        REQUIRE(osc.min.index == 3 && osc.min.value == 1.0, "tail minimum at the last sample");
    }
}

// --- shutter transient ------------------------------------------------------------

void check_diffraction_helpers() {
    // tau(t) -> t continuously at gamma = 0 and saturates at 1/gamma.
    REQUIRE(diffraction_tau(0.0, 7.0) == 7.0, "undamped tau is t");
    REQUIRE_CLOSE(diffraction_tau(0.2, 1e9), 5.0, 1e-6, "tau saturates at 1/gamma");
    REQUIRE_CLOSE(diffraction_tau(1e-12, 3.0), 3.0, 1e-10, "tau continuous in gamma");

    // Classical arrival time and its domain boundary.
    REQUIRE(diffraction_arrival_time(0.0, 1.0, 1.0, 1.0) == 1.0, "undamped arrival at m x / p");
    REQUIRE_CLOSE(diffraction_arrival_time(0.05, 1.0, 1.0, 1.0), -20.0 * std::log(0.95), 1e-13,
                  "damped arrival time");
    REQUIRE(std::isnan(diffraction_arrival_time(1.0, 1.0, 1.0, 1.0)),
            "stalled particle never arrives");

    // At the classical arrival time the Fresnel argument vanishes and the
    // density is exactly 1/4.
    SystemParams params;
    for (double gamma : {0.0, 0.05, 0.2}) {
        const double t0 = diffraction_arrival_time(gamma, 1.0, 1.0, 1.0);
        const double xi = diffraction_xi(params, 1.0, 1.0, diffraction_tau(gamma, t0));
        REQUIRE(std::fabs(xi) < 1e-12, "xi(t0) = 0");
        REQUIRE_CLOSE(diffraction_density(xi), 0.25, 1e-12, "density 1/4 at the arrival time");
    }
}

void check_diffraction_driver() {
    SystemParams params;
    const TimeGrid grid(0.0, 20.0, 1e-3);

    // Undamped quantum case: pinned oscillation features.
    const ExperimentResult r =
        run_diffraction(params, Friction{0.0, 0.0}, 1.0, 1.0, grid, 1);
    check_result_shape(r, {"t", "xi", "rho"});
    REQUIRE(r.columns[0].size() == grid.n_points(), "stride 1 keeps the full grid");
    REQUIRE_CLOSE(scalar(r, "t0"), 1.0, 1e-12, "classical arrival scalar");
    REQUIRE_CLOSE(scalar(r, "t_first_max"), 6.500663974541107, 1e-6, "first-maximum time");
    REQUIRE_CLOSE(scalar(r, "visibility"), 0.5921918726761978, 1e-9, "oscillation visibility");
    REQUIRE_CLOSE(scalar(r, "rho_stationary"), 1.0, 1e-12, "undamped long-time density");
    // Density at the grid point t = t0.
    const std::size_t k0 = 1000;
    REQUIRE(r.columns[0][k0] == 1.0, "t0 lands on the grid");
    REQUIRE_CLOSE(r.columns[2][k0], 0.25, 1e-9, "density 1/4 at t0");

    // The first maximum sits at the pinned Fresnel argument.
    const double u_max =
        diffraction_xi(params, 1.0, 1.0, diffraction_tau(0.0, scalar(r, "t_first_max")));
    REQUIRE_CLOSE(u_max, 1.21719825074432, 1e-6, "Fresnel argument of the first maximum");

    // First-maximum time decreases as the dynamics turns classical, while the
    // visibility (a function of the Fresnel argument alone) stays pinned.
    double prev_t_max = scalar(r, "t_first_max");
    for (double eps : {0.5, 0.1}) {
        SystemParams p2;
        p2.epsilon = eps;
        const ExperimentResult r2 = run_diffraction(p2, Friction{0.0, 0.0}, 1.0, 1.0, grid, 1);
        const double t_max = scalar(r2, "t_first_max");
        REQUIRE(t_max < prev_t_max, "first maximum arrives earlier at smaller epsilon");
        REQUIRE_CLOSE(scalar(r2, "visibility"), 0.5921918726761978, 1e-3,
                      "visibility independent of epsilon");
        REQUIRE_CLOSE(r2.columns[2][k0], 0.25, 1e-9, "density 1/4 at t0 for every epsilon");
        prev_t_max = t_max;
    }

    // Classical limit: a sharp arrival step, no oscillation.
    SystemParams classical;
    classical.epsilon = 0.0;
    const ExperimentResult rc =
        run_diffraction(classical, Friction{0.0, 0.0}, 1.0, 1.0, grid, 1);
    REQUIRE(std::isnan(rc.columns[1][500]), "classical regime reports no Fresnel argument");
    REQUIRE(rc.columns[2][500] == 0.0 && rc.columns[2][1500] == 1.0,
            "classical density is a step at t0");
    REQUIRE(scalar(rc, "visibility") == 0.0, "no classical oscillation");
    REQUIRE(std::isnan(scalar(rc, "t_first_max")), "no classical first maximum");

    // Damped case: stationary density below the undamped limit.
    const ExperimentResult rd =
        run_diffraction(params, Friction{0.05, 0.0}, 1.0, 1.0, grid, 1);
    REQUIRE_CLOSE(scalar(rd, "t0"), -20.0 * std::log(0.95), 1e-12, "damped arrival scalar");
    const double stat = scalar(rd, "rho_stationary");
    REQUIRE(stat > 0.0 && stat < 1.3704429197032, "damped stationary density in range");
}

// --- driven repeller ---------------------------------------------------------------

void check_tunneling_driver() {
    TunnelingSetup setup;
    setup.friction = Friction{0.0, 0.0};
    setup.state0.q = -10.0;
    setup.state0.q_dot = 1.0;
    setup.field = QuadraticPotential::driven_repeller(1.0, -1.0, 0.0, 0.0, 0.0, 0.2);
    const TimeGrid grid(0.0, 150.0, 1e-3);

    const ExperimentResult r = run_tunneling(setup, grid, TunnelingScan{}, 10);
    check_result_shape(r, {"t", "x_t", "sigma", "T"});
    REQUIRE(r.columns[3][0] == 0.0, "transmission starts at zero");
    REQUIRE_CLOSE(scalar(r, "T_asymptotic"), 0.03165889341502642, 1e-10,
                  "asymptotic transmission of the undriven repeller");
    // Late-time flatness (light version; the acceptance suite scans densely).
    const std::vector<double>& T = r.columns[3];
    const std::vector<double>& t = r.columns[0];
    for (std::size_t j = 0; j < t.size(); j += 100) {
        if (t[j] > 100.0)
            REQUIRE(std::fabs(T[j] - T.back()) < 1e-4, "transmission settled after t = 100");
    }

    // Quenched quantum pressure transmits no more than the constant one.
    TunnelingSetup damped = setup;
    damped.friction.gamma_r = 0.04;
    const double T_kostin = scalar(run_tunneling(damped, grid, TunnelingScan{}, 150000),
                                   "T_asymptotic");
    damped.variant = WidthVariant::ck_scaled;
    const double T_ck = scalar(run_tunneling(damped, grid, TunnelingScan{}, 150000),
                               "T_asymptotic");
    REQUIRE(T_kostin >= T_ck && T_ck > 0.0, "width-variant transmission ordering");

    // Resonance scan of the driving frequency: the argmax of the asymptotic
    // transmission sits at sqrt(gamma^2/4 + omega^2) - gamma/2.
    TunnelingSetup driven = setup;
    driven.friction.gamma_r = 0.06;
    driven.field = QuadraticPotential::driven_repeller(1.0, -1.0, 0.1, 0.0, -0.5 * M_PI, 0.2);
    const TunnelingScan scan{ScanKind::omega0, 0.0, 0.6, 61};
    const ExperimentResult rs = run_tunneling(driven, grid, scan, 150000);
    REQUIRE(has_scalar(rs, "scan_value_0") && has_scalar(rs, "scan_T_60"),
            "scan table published");
    const double want_res =
        std::sqrt(0.06 * 0.06 / 4.0 + 0.2 * 0.2) - 0.03;
    REQUIRE_CLOSE(scalar(rs, "omega0_res"), want_res, 5e-4, "resonance frequency");
    REQUIRE(scalar(rs, "T_res") >= scalar(rs, "scan_T_0"), "resonance beats the scan edge");

    // Transmission helper: half the packet is past a barrier top at its center.
    REQUIRE_CLOSE(tunneling_transmission(0.0, 1.0, -10.0, 1.0), 0.5, 1e-10,
                  "transmission 1/2 at the barrier top");
    REQUIRE(tunneling_transmission(3.0, 1.0, -10.0, 1.0) >
                tunneling_transmission(2.0, 1.0, -10.0, 1.0),
            "transmission increases with the center");
}

// --- thermal ensembles ---------------------------------------------------------------

void check_brownian_driver() {
    SystemParams params;
    const Friction friction{0.2, 0.0};
    const Bath bath{0.2, NoiseKind::gaussian_white};
    GaussianState s0;
    const TimeGrid grid(0.0, 5.0, 0.01);
    EnsembleOptions opts;
    opts.n_tra = 200;
    opts.master_seed = 3;
    opts.output_stride = 10;

    const ExperimentResult r = run_brownian(params, friction, bath, WidthVariant::kostin_scaled,
                                            s0, grid, opts);
    check_result_shape(r, {"t", "msd_cl", "msd_q_analytic", "msd_q_mc", "d_cl", "d_q"});
    REQUIRE(r.columns[0].size() == 51, "stride-10 sampling of 501 grid points");
    REQUIRE(r.columns[0].back() == 5.0, "last grid point always kept");

    for (std::size_t j = 0; j < r.columns[0].size(); ++j) {
        const double t = r.columns[0][j];
        REQUIRE_CLOSE(r.columns[1][j], msd_classical_analytic(0.2, 1.0, 0.2, t), 1e-12,
                      "msd_cl column matches the closed form");
        if (t > 0.0) {
            REQUIRE_CLOSE(r.columns[4][j], r.columns[1][j] / (2.0 * t), 1e-12, "d_cl = msd/2t");
            REQUIRE(r.columns[5][j] > r.columns[4][j], "quantum diffusion above classical");
        } else {
            REQUIRE(r.columns[4][j] == 0.0 && r.columns[5][j] == 0.0,
                    "diffusion reported as zero at t = 0");
        }
        REQUIRE(r.columns[3][j] >= 0.0, "Monte-Carlo MSD nonnegative");
    }

    // Thread count must not change a single bit.
    EnsembleOptions two = opts;
    two.threads = 2;
    EnsembleOptions eight = opts;
    eight.threads = 8;
    const ExperimentResult r2 = run_brownian(params, friction, bath, WidthVariant::kostin_scaled,
                                             s0, grid, two);
    const ExperimentResult r8 = run_brownian(params, friction, bath, WidthVariant::kostin_scaled,
                                             s0, grid, eight);
    REQUIRE(r.columns == r2.columns && r.columns == r8.columns,
            "ensemble reduction independent of thread count");
}

void check_early_arrival_driver() {
    REQUIRE_CLOSE(early_arrival_switch_time(0.05, -10.0, 1.0), 20.0 * std::log(2.0), 1e-12,
                  "switch time of the damped free flight");
    REQUIRE(early_arrival_switch_time(0.0, -10.0, 1.0) == 10.0, "undamped switch time");
    REQUIRE_THROWS(early_arrival_switch_time(0.1, -10.0, 0.0), "switch time needs q_dot0 > 0");
    REQUIRE_THROWS(early_arrival_switch_time(0.1, -10.0, 1.0), "stalled center has no switch time");

    REQUIRE(transmission_probability(0.0, 0.0, 1.0) == 0.5, "half the packet past its center");
    REQUIRE(transmission_probability(10.0, 0.0, 1.0) < 1e-12, "far detector sees nothing early");
    REQUIRE(transmission_probability(-40.0, 0.0, 1.0) > 1.0 - 1e-12, "detector far behind");
    REQUIRE_THROWS(transmission_probability(0.0, 0.0, 0.0), "width must be positive");

    EarlyArrivalSetup setup;
    setup.friction = Friction{0.1, 0.0};
    setup.bath = Bath{2.0, NoiseKind::gaussian_white};
    setup.state0.q = -10.0;
    setup.state0.q_dot = 1.0;
    setup.barrier_omega = 1.5;
    setup.window_g = 1.0;
    setup.switch_time = 3.0;
    setup.x_d = 10.0;
    const TimeGrid grid(0.0, 10.0, 0.01);
    EnsembleOptions opts;
    opts.n_tra = 500;
    opts.master_seed = 5;
    opts.output_stride = 10;

    const ExperimentResult r = run_early_arrivals(setup, grid, opts);
    check_result_shape(r, {"t", "p_tr_barrier", "p_tr_free", "diff_se"});

    // Common random numbers: identical ensembles before the barrier acts.
    REQUIRE(r.columns[1][0] == r.columns[2][0] && r.columns[3][0] == 0.0,
            "arms coincide at t = 0");
    for (std::size_t j = 0; j < r.columns[0].size(); ++j) {
        REQUIRE(r.columns[1][j] >= 0.0 && r.columns[1][j] <= 1.0, "probability in [0, 1]");
        REQUIRE(r.columns[2][j] >= 0.0 && r.columns[2][j] <= 1.0, "probability in [0, 1]");
        REQUIRE(r.columns[3][j] >= 0.0, "standard error nonnegative");
    }

    // The excess scalar matches its own column data at the reported time.
    const double excess = scalar(r, "excess_over_se_max");
    const double t_excess = scalar(r, "t_excess_max");
    bool found = false;
    for (std::size_t j = 0; j < r.columns[0].size(); ++j) {
        if (r.columns[0][j] == t_excess) {
            REQUIRE_CLOSE((r.columns[1][j] - r.columns[2][j]) / r.columns[3][j], excess, 1e-9,
                          "excess scalar consistent with columns");
            found = true;
        }
        if (r.columns[3][j] > 0.0) {
            REQUIRE((r.columns[1][j] - r.columns[2][j]) / r.columns[3][j] <= excess + 1e-12,
                    "excess scalar is the maximum");
        }
    }
    REQUIRE(found, "t_excess_max is a reported sample time");
    REQUIRE(scalar(r, "p_tr_barrier_end") == r.columns[1].back(), "end scalar matches column");
    REQUIRE(scalar(r, "p_tr_free_end") == r.columns[2].back(), "end scalar matches column");

    // Thread-count invariance for the two-arm driver.
    EnsembleOptions two = opts;
    two.threads = 2;
    const ExperimentResult r2 = run_early_arrivals(setup, grid, two);
    REQUIRE(r.columns == r2.columns, "two-arm reduction independent of thread count");
}

}  // namespace

int main() {
    check_peak_extraction();
    check_diffraction_helpers();
    check_diffraction_driver();
    check_tunneling_driver();
    check_brownian_driver();
    check_early_arrival_driver();
    std::printf("test_experiments: all checks passed\n");
    return 0;
}
