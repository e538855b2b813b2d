#include "bohm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bohm/parallel.hpp"
#include "bohm/rng.hpp"
#include "bohm/specfun.hpp"
#include "bohm/trajectories.hpp"

namespace bohm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string render(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Output sample indices: every stride-th grid point plus the final point.
std::vector<std::size_t> strided_indices(const TimeGrid& grid, std::size_t stride) {
    if (stride < 1) stride = 1;
    std::vector<std::size_t> idx;
    idx.reserve(grid.n_steps / stride + 2);
    for (std::size_t k = 0; k <= grid.n_steps; k += stride) idx.push_back(k);
    if (idx.back() != grid.n_steps) idx.push_back(grid.n_steps);
    return idx;
}

void push_metadata(ExperimentResult& r, const SystemParams& p, const Friction& f) {
    r.metadata.emplace_back("mass", render(p.mass));
    r.metadata.emplace_back("hbar", render(p.hbar));
    r.metadata.emplace_back("epsilon", render(p.epsilon));
    r.metadata.emplace_back("gamma_r", render(f.gamma_r));
    r.metadata.emplace_back("gamma_i", render(f.gamma_i));
}

}  // namespace

// --- oscillation extraction -----------------------------------------------------

namespace {

// Three-point parabola through (ts[k-1..k+1], ys[k-1..k+1]); writes the vertex.
void parabola_refine(const std::vector<double>& ts, const std::vector<double>& ys,
                     std::size_t k, double& t_out, double& v_out) {
    const double ym = ys[k - 1], y0 = ys[k], yp = ys[k + 1];
    const double denom = ym - 2.0 * y0 + yp;
    if (denom == 0.0) {
        t_out = ts[k];
        v_out = y0;
        return;
    }
    const double h = 0.5 * (ts[k + 1] - ts[k - 1]);
    t_out = ts[k] + 0.5 * h * (ym - yp) / denom;
    v_out = y0 - (ym - yp) * (ym - yp) / (8.0 * denom);
}

}  // namespace

PeakInfo first_interior_maximum(const std::vector<double>& ts, const std::vector<double>& ys) {
    PeakInfo peak;
    peak.t = kNaN;
    peak.value = kNaN;
    if (ts.size() != ys.size()) throw std::invalid_argument("peak extraction: length mismatch");
    for (std::size_t k = 1; k + 1 < ys.size(); ++k) {
        if (ys[k - 1] < ys[k] && ys[k] > ys[k + 1]) {
            peak.interior = true;
            peak.index = k;
            parabola_refine(ts, ys, k, peak.t, peak.value);
            return peak;
        }
    }
    return peak;
}

PeakInfo following_minimum(const std::vector<double>& ts, const std::vector<double>& ys,
                           std::size_t after) {
    PeakInfo peak;
    if (ts.size() != ys.size()) throw std::invalid_argument("peak extraction: length mismatch");
    if (after >= ys.size()) throw std::invalid_argument("peak extraction: start out of range");
    for (std::size_t k = after + 1; k + 1 < ys.size(); ++k) {
        if (ys[k - 1] > ys[k] && ys[k] < ys[k + 1]) {
            peak.interior = true;
            peak.index = k;
            parabola_refine(ts, ys, k, peak.t, peak.value);
            return peak;
        }
    }
    // monotone tail: running minimum up to the boundary
    std::size_t k_min = after;
    for (std::size_t k = after; k < ys.size(); ++k)
        if (ys[k] < ys[k_min]) k_min = k;
    peak.interior = false;
    peak.index = k_min;
    peak.t = ts[k_min];
    peak.value = ys[k_min];
    return peak;
}

Oscillation first_oscillation(const std::vector<double>& ts, const std::vector<double>& ys) {
    Oscillation osc;
    osc.max = first_interior_maximum(ts, ys);
    if (!osc.max.interior) {
        osc.min.t = kNaN;
        osc.min.value = kNaN;
        return osc;  // amplitude 0: the curve never turns over
    }
    osc.has_max = true;
    osc.min = following_minimum(ts, ys, osc.max.index);
    osc.amplitude = osc.max.value - osc.min.value;
    return osc;
}

// --- brownian ---------------------------------------------------------------------

ExperimentResult run_brownian(const SystemParams& params, const Friction& friction,
                              const Bath& bath, WidthVariant width_variant,
                              const GaussianState& state0, const TimeGrid& grid,
                              const EnsembleOptions& opts) {
    validate_params(params, friction, bath);
    validate_state(state0);
    if (opts.n_tra < 1) throw std::invalid_argument("n_tra must be >= 1");
    const QuadraticPotential pot = QuadraticPotential::free_particle();
    const double m = params.mass;

    const Path width = integrate_width(width_variant, params, friction, pot, state0, grid);
    const std::vector<std::size_t> idx = strided_indices(grid, opts.output_stride);
    const std::size_t n_out = idx.size();
    const double sigma0 = width.value[0];

    // Monte-Carlo double average, blockwise for thread-count-independent sums.
    const std::size_t n_blocks = block_count(opts.n_tra);
    std::vector<std::vector<double>> partial(n_blocks);
    const double v_scale = std::sqrt(bath.kT / m);
    parallel_blocks(opts.n_tra, opts.threads, [&](std::size_t b, std::size_t first,
                                                  std::size_t last) {
        std::vector<double>& acc = partial[b];
        acc.assign(n_out, 0.0);
        for (std::size_t i = first; i < last; ++i) {
            RandomStream mb(opts.master_seed, i, kSubstreamMaxwellBoltzmann);
            RandomStream noise(opts.master_seed, i, kSubstreamNoisePath);
            RandomStream born(opts.master_seed, i, kSubstreamBornPosition);
            GaussianState s0 = state0;
            s0.q_dot = state0.q_dot + v_scale * mb.normal();
            // gamma_i shapes the width equation only; the thermal center obeys
            // the ordinary Langevin equation with the real friction.
            const Path q = integrate_center_langevin(params, Friction{friction.gamma_r, 0.0},
                                                     pot, bath, s0, grid, noise);
            const double offset = sigma0 * born.normal();  // Born draw around the center
            for (std::size_t j = 0; j < n_out; ++j) {
                const std::size_t k = idx[j];
                const double d = (q.value[k] - q.value[0]) +
                                 offset * (width.value[k] / sigma0 - 1.0);
                acc[j] += d * d;
            }
        }
    });
    std::vector<double> msd_mc(n_out, 0.0);
    for (std::size_t b = 0; b < n_blocks; ++b)
        for (std::size_t j = 0; j < n_out; ++j) msd_mc[j] += partial[b][j];
    for (double& v : msd_mc) v /= static_cast<double>(opts.n_tra);

    ExperimentResult r;
    r.kind = "brownian";
    r.column_names = {"t", "msd_cl", "msd_q_analytic", "msd_q_mc", "d_cl", "d_q"};
    r.columns.assign(6, std::vector<double>(n_out));
    for (std::size_t j = 0; j < n_out; ++j) {
        const std::size_t k = idx[j];
        const double t = grid.time(k);
        const double msd_cl = msd_classical_analytic(bath.kT, m, friction.gamma_r, t);
        const double ds = width.value[k] - sigma0;
        const double msd_q = msd_cl + ds * ds;
        r.columns[0][j] = t;
        r.columns[1][j] = msd_cl;
        r.columns[2][j] = msd_q;
        r.columns[3][j] = msd_mc[j];
        r.columns[4][j] = t > 0.0 ? msd_cl / (2.0 * t) : 0.0;
        r.columns[5][j] = t > 0.0 ? msd_q / (2.0 * t) : 0.0;
    }
    r.scalars.emplace_back("d_cl_end", r.columns[4].back());
    r.scalars.emplace_back("d_q_end", r.columns[5].back());
    r.scalars.emplace_back("msd_q_mc_end", r.columns[3].back());
    push_metadata(r, params, friction);
    r.metadata.emplace_back("kT", render(bath.kT));
    r.metadata.emplace_back("n_tra", std::to_string(opts.n_tra));
    r.metadata.emplace_back("seed", std::to_string(opts.master_seed));
    return r;
}

// --- diffraction -------------------------------------------------------------------

double diffraction_tau(double gamma_r, double t) {
    if (!(gamma_r >= 0.0)) throw std::invalid_argument("diffraction_tau: gamma_r must be >= 0");
    if (gamma_r == 0.0) return t;
    return -std::expm1(-gamma_r * t) / gamma_r;
}

double diffraction_xi(const SystemParams& params, double p, double x, double tau) {
    const double ht = params.hbar_tilde();
    if (!(ht > 0.0))
        throw std::invalid_argument("diffraction_xi: requires epsilon > 0 (quantum branch)");
    if (!(tau >= 0.0)) throw std::invalid_argument("diffraction_xi: tau must be >= 0");
    if (tau == 0.0 && x == 0.0) return 0.0;
    return (p * tau / params.mass - x) / std::sqrt(M_PI * ht * tau / params.mass);
}

double diffraction_density(double xi) {
    const FresnelPair f = fresnel(xi);
    const double a = f.c + 0.5;
    const double b = f.s + 0.5;
    return 0.5 * (a * a + b * b);
}

double diffraction_arrival_time(double gamma_r, double m, double p, double x) {
    if (!(p > 0.0)) throw std::invalid_argument("diffraction_arrival_time: p must be > 0");
    if (gamma_r == 0.0) return m * x / p;
    const double arg = 1.0 - gamma_r * m * x / p;
    if (arg <= 0.0) return kNaN;  // the damped particle never reaches x
    return -std::log(arg) / gamma_r;
}

double diffraction_density_stationary(const SystemParams& params, double gamma_r, double p,
                                      double x) {
    const bool classical = params.hbar_tilde() == 0.0;
    if (gamma_r == 0.0) return 1.0;  // free relaxation value in every regime
    const double tau_inf = 1.0 / gamma_r;
    if (classical) return p * tau_inf / params.mass - x >= 0.0 ? 1.0 : 0.0;
    return diffraction_density(diffraction_xi(params, p, x, tau_inf));
}

ExperimentResult run_diffraction(const SystemParams& params, const Friction& friction, double p,
                                 double x_obs, const TimeGrid& grid, std::size_t output_stride) {
    validate_params(params, friction, Bath{});
    if (friction.gamma_i != 0.0)
        throw std::invalid_argument("the shutter transient uses real friction only (gamma_i = 0)");
    if (!(p > 0.0)) throw std::invalid_argument("p must be > 0");
    const bool classical = params.hbar_tilde() == 0.0;
    const double m = params.mass;

    const std::vector<std::size_t> idx = strided_indices(grid, output_stride);
    const std::size_t n_out = idx.size();

    ExperimentResult r;
    r.kind = "diffraction";
    r.column_names = {"t", "xi", "rho"};
    r.columns.assign(3, std::vector<double>(n_out));
    for (std::size_t j = 0; j < n_out; ++j) {
        const double t = grid.time(idx[j]);
        const double tau = diffraction_tau(friction.gamma_r, t);
        r.columns[0][j] = t;
        if (classical) {
            r.columns[1][j] = kNaN;
            r.columns[2][j] = p * tau / m - x_obs >= 0.0 ? 1.0 : 0.0;
        } else {
            const double xi = diffraction_xi(params, p, x_obs, tau);
            r.columns[1][j] = xi;
            r.columns[2][j] = diffraction_density(xi);
        }
    }

    const Oscillation osc = first_oscillation(r.columns[0], r.columns[2]);
    r.scalars.emplace_back("t0", diffraction_arrival_time(friction.gamma_r, m, p, x_obs));
    r.scalars.emplace_back("t_first_max", osc.has_max ? osc.max.t : kNaN);
    r.scalars.emplace_back("visibility", osc.amplitude);
    r.scalars.emplace_back("rho_stationary",
                           diffraction_density_stationary(params, friction.gamma_r, p, x_obs));
    push_metadata(r, params, friction);
    r.metadata.emplace_back("p", render(p));
    r.metadata.emplace_back("x_obs", render(x_obs));
    return r;
}

// --- tunneling ----------------------------------------------------------------------

double tunneling_transmission(double x_t, double sigma_t, double x0, double sigma0) {
    if (!(sigma_t > 0.0) || !(sigma0 > 0.0))
        throw std::invalid_argument("tunneling_transmission: widths must be positive");
    const double sqrt2 = std::sqrt(2.0);
    const ErfPair start = erf_family(x0 / (sqrt2 * sigma0));
    const double erf_now = erf_family(x_t / (sqrt2 * sigma_t)).erf;
    return (erf_now - start.erf) / start.erfc;
}

namespace {

void validate_tunneling(const TunnelingSetup& s) {
    validate_params(s.params, s.friction, Bath{});
    validate_state(s.state0);
    if (s.friction.gamma_i != 0.0)
        throw std::invalid_argument("tunneling driver requires gamma_i = 0");
    if (!(s.state0.q < 0.0))
        throw std::invalid_argument("tunneling driver requires x0 < 0 (start left of the barrier top)");
    if (s.variant != WidthVariant::kostin_scaled && s.variant != WidthVariant::ck_scaled)
        throw std::invalid_argument(
            "tunneling width variant must be kostin_scaled or ck_scaled");
    if (s.field.kind != PotentialKind::driven_repeller)
        throw std::invalid_argument("tunneling potential must be a driven_repeller descriptor");
}

double tunneling_center(const TunnelingSetup& s, double t) {
    return center_analytic_driven(s.state0.q, s.state0.q_dot, s.field.charge, s.field.E0,
                                  s.field.omega0, s.field.phi, s.field.omega,
                                  s.friction.gamma_r, s.params.mass, t);
}

// Asymptotic transmission = T at the grid end, given the end width.
double asymptotic_transmission(const TunnelingSetup& s, const TimeGrid& grid,
                               double sigma_end) {
    return tunneling_transmission(tunneling_center(s, grid.t1), sigma_end, s.state0.q,
                                  s.state0.sigma);
}

double end_width(const TunnelingSetup& s, const TimeGrid& grid) {
    return integrate_width(s.variant, s.params, s.friction, s.field, s.state0, grid).value.back();
}

TunnelingSetup with_scan_value(const TunnelingSetup& base, ScanKind kind, double v) {
    TunnelingSetup s = base;
    switch (kind) {
        case ScanKind::omega0: s.field.omega0 = v; break;
        case ScanKind::field_amplitude: s.field.E0 = v; break;
        case ScanKind::epsilon: s.params.epsilon = v; break;
        case ScanKind::gamma_r: s.friction.gamma_r = v; break;
        case ScanKind::none: break;
    }
    return s;
}

// The width equation sees only (params, friction, omega, variant); scans over
// the field drive (omega0, E0) can reuse one width integration.
bool scan_changes_width(ScanKind kind) {
    return kind == ScanKind::epsilon || kind == ScanKind::gamma_r;
}

}  // namespace

ExperimentResult run_tunneling(const TunnelingSetup& setup, const TimeGrid& grid,
                               const TunnelingScan& scan, std::size_t output_stride) {
    validate_tunneling(setup);

    const Path width = integrate_width(setup.variant, setup.params, setup.friction, setup.field,
                                       setup.state0, grid);
    const std::vector<std::size_t> idx = strided_indices(grid, output_stride);
    const std::size_t n_out = idx.size();

    ExperimentResult r;
    r.kind = "tunneling";
    r.column_names = {"t", "x_t", "sigma", "T"};
    r.columns.assign(4, std::vector<double>(n_out));
    for (std::size_t j = 0; j < n_out; ++j) {
        const double t = grid.time(idx[j]);
        const double xt = tunneling_center(setup, t);
        const double st = width.value[idx[j]];
        r.columns[0][j] = t;
        r.columns[1][j] = xt;
        r.columns[2][j] = st;
        r.columns[3][j] = tunneling_transmission(xt, st, setup.state0.q, setup.state0.sigma);
    }
    r.scalars.emplace_back("T_asymptotic", r.columns[3].back());

    if (scan.kind != ScanKind::none) {
        if (scan.n < 3) throw std::invalid_argument("scan needs at least 3 points");
        if (!(scan.hi > scan.lo)) throw std::invalid_argument("scan needs hi > lo");
        const bool reuse_width = !scan_changes_width(scan.kind);
        const double base_sigma_end = width.value.back();
        const auto asympt_at = [&](double v) {
            const TunnelingSetup s = with_scan_value(setup, scan.kind, v);
            const double sigma_end = reuse_width ? base_sigma_end : end_width(s, grid);
            return asymptotic_transmission(s, grid, sigma_end);
        };

        std::vector<double> values(scan.n), ts(scan.n);
        const double step = (scan.hi - scan.lo) / static_cast<double>(scan.n - 1);
        for (std::size_t i = 0; i < scan.n; ++i) {
            values[i] = scan.lo + static_cast<double>(i) * step;
            ts[i] = asympt_at(values[i]);
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < scan.n; ++i)
            if (ts[i] > ts[best]) best = i;

        double arg_best = values[best], t_best = ts[best];
        if (best > 0 && best + 1 < scan.n) {
            // fine rescan across the bracketing coarse cell, then a parabola
            const std::size_t n_fine = 41;
            std::vector<double> fv(n_fine), ft(n_fine);
            const double flo = values[best - 1], fhi = values[best + 1];
            const double fstep = (fhi - flo) / static_cast<double>(n_fine - 1);
            for (std::size_t i = 0; i < n_fine; ++i) {
                fv[i] = flo + static_cast<double>(i) * fstep;
                ft[i] = asympt_at(fv[i]);
            }
            std::size_t fb = 0;
            for (std::size_t i = 1; i < n_fine; ++i)
                if (ft[i] > ft[fb]) fb = i;
            arg_best = fv[fb];
            t_best = ft[fb];
            if (fb > 0 && fb + 1 < n_fine) parabola_refine(fv, ft, fb, arg_best, t_best);
        }

        for (std::size_t i = 0; i < scan.n; ++i) {
            r.scalars.emplace_back("scan_value_" + std::to_string(i), values[i]);
            r.scalars.emplace_back("scan_T_" + std::to_string(i), ts[i]);
        }
        r.scalars.emplace_back("scan_argmax", arg_best);
        r.scalars.emplace_back("scan_T_max", t_best);
        if (scan.kind == ScanKind::omega0) {
            r.scalars.emplace_back("omega0_res", arg_best);
            r.scalars.emplace_back("T_res", t_best);
        }
    }

    push_metadata(r, setup.params, setup.friction);
    r.metadata.emplace_back("x0", render(setup.state0.q));
    r.metadata.emplace_back("p0", render(setup.state0.q_dot * setup.params.mass));
    r.metadata.emplace_back("omega", render(setup.field.omega));
    r.metadata.emplace_back("E0", render(setup.field.E0));
    r.metadata.emplace_back("omega0", render(setup.field.omega0));
    r.metadata.emplace_back("phi", render(setup.field.phi));
    return r;
}

// --- early arrivals -------------------------------------------------------------------

double early_arrival_switch_time(double gamma_r, double q0, double q_dot0) {
    if (!(q_dot0 > 0.0))
        throw std::invalid_argument("switch-time formula requires q_dot0 > 0");
    if (!(gamma_r >= 0.0)) throw std::invalid_argument("gamma_r must be >= 0");
    if (gamma_r == 0.0) return -q0 / q_dot0;
    const double arg = 1.0 + gamma_r * q0 / q_dot0;
    if (!(arg > 0.0)) {
        std::ostringstream msg;
        msg << "switch-time formula requires gamma_r |q0| / q_dot0 < 1 (got "
            << gamma_r * std::fabs(q0) / q_dot0 << "): the damped center stalls before x = 0";
        throw std::domain_error(msg.str());
    }
    return -std::log(arg) / gamma_r;
}

double transmission_probability(double x_d, double q, double sigma) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("transmission_probability: sigma must be positive");
    return 0.5 * erf_family((x_d - q) / (std::sqrt(2.0) * sigma)).erfc;
}

ExperimentResult run_early_arrivals(const EarlyArrivalSetup& setup, const TimeGrid& grid,
                                    const EnsembleOptions& opts) {
    validate_params(setup.params, setup.friction, setup.bath);
    validate_state(setup.state0);
    if (opts.n_tra < 1) throw std::invalid_argument("n_tra must be >= 1");
    if (!(setup.barrier_omega >= 0.0)) throw std::invalid_argument("barrier omega must be >= 0");
    if (!(setup.window_g > 0.0)) throw std::invalid_argument("window g must be > 0");
    const double m = setup.params.mass;

    const QuadraticPotential barrier = QuadraticPotential::gaussian_window_repeller(
        m, setup.barrier_omega, setup.window_g, setup.switch_time);
    const QuadraticPotential free_pot = QuadraticPotential::free_particle();
    const Path width_barrier = integrate_width(WidthVariant::generalized_gamma_i, setup.params,
                                               setup.friction, barrier, setup.state0, grid);
    const Path width_free = integrate_width(WidthVariant::generalized_gamma_i, setup.params,
                                            setup.friction, free_pot, setup.state0, grid);

    const std::vector<std::size_t> idx = strided_indices(grid, opts.output_stride);
    const std::size_t n_out = idx.size();
    const std::size_t n_blocks = block_count(opts.n_tra);

    struct BlockSums {
        std::vector<double> pb, pf, d, d2;
    };
    std::vector<BlockSums> partial(n_blocks);
    const double v_scale = std::sqrt(setup.bath.kT / m);

    parallel_blocks(opts.n_tra, opts.threads, [&](std::size_t b, std::size_t first,
                                                  std::size_t last) {
        BlockSums& acc = partial[b];
        acc.pb.assign(n_out, 0.0);
        acc.pf.assign(n_out, 0.0);
        acc.d.assign(n_out, 0.0);
        acc.d2.assign(n_out, 0.0);
        for (std::size_t i = first; i < last; ++i) {
            RandomStream mb(opts.master_seed, i, kSubstreamMaxwellBoltzmann);
            GaussianState s0 = setup.state0;
            s0.q_dot = setup.state0.q_dot + v_scale * mb.normal();
            // common random numbers: both arms replay the same noise stream
            RandomStream noise_b(opts.master_seed, i, kSubstreamNoisePath);
            RandomStream noise_f(opts.master_seed, i, kSubstreamNoisePath);
            // gamma_i shapes the width equations only; the thermal centers obey
            // the ordinary Langevin equation with the real friction.
            const Friction center_friction{setup.friction.gamma_r, 0.0};
            const Path qb = integrate_center_langevin(setup.params, center_friction, barrier,
                                                      setup.bath, s0, grid, noise_b);
            const Path qf = integrate_center_langevin(setup.params, center_friction, free_pot,
                                                      setup.bath, s0, grid, noise_f);
            for (std::size_t j = 0; j < n_out; ++j) {
                const std::size_t k = idx[j];
                const double pb =
                    transmission_probability(setup.x_d, qb.value[k], width_barrier.value[k]);
                const double pf =
                    transmission_probability(setup.x_d, qf.value[k], width_free.value[k]);
                acc.pb[j] += pb;
                acc.pf[j] += pf;
                acc.d[j] += pb - pf;
                acc.d2[j] += (pb - pf) * (pb - pf);
            }
        }
    });

    const double n = static_cast<double>(opts.n_tra);
    std::vector<double> pb(n_out, 0.0), pf(n_out, 0.0), d(n_out, 0.0), d2(n_out, 0.0);
    for (std::size_t b = 0; b < n_blocks; ++b)
        for (std::size_t j = 0; j < n_out; ++j) {
            pb[j] += partial[b].pb[j];
            pf[j] += partial[b].pf[j];
            d[j] += partial[b].d[j];
            d2[j] += partial[b].d2[j];
        }

    ExperimentResult r;
    r.kind = "early_arrivals";
    r.column_names = {"t", "p_tr_barrier", "p_tr_free", "diff_se"};
    r.columns.assign(4, std::vector<double>(n_out));
    double excess_max = -std::numeric_limits<double>::infinity();
    double t_excess = kNaN;
    bool any_se = false;
    for (std::size_t j = 0; j < n_out; ++j) {
        const double mean_b = pb[j] / n;
        const double mean_f = pf[j] / n;
        const double mean_d = d[j] / n;
        double se = 0.0;
        if (opts.n_tra > 1) {
            const double var = std::max(0.0, (d2[j] / n - mean_d * mean_d) * n / (n - 1.0));
            se = std::sqrt(var / n);
        }
        r.columns[0][j] = grid.time(idx[j]);
        r.columns[1][j] = mean_b;
        r.columns[2][j] = mean_f;
        r.columns[3][j] = se;
        if (se > 0.0) {
            any_se = true;
            const double excess = (mean_b - mean_f) / se;
            if (excess > excess_max) {
                excess_max = excess;
                t_excess = r.columns[0][j];
            }
        }
    }
    r.scalars.emplace_back("p_tr_barrier_end", r.columns[1].back());
    r.scalars.emplace_back("p_tr_free_end", r.columns[2].back());
    r.scalars.emplace_back("excess_over_se_max", any_se ? excess_max : kNaN);
    r.scalars.emplace_back("t_excess_max", t_excess);
    push_metadata(r, setup.params, setup.friction);
    r.metadata.emplace_back("kT", render(setup.bath.kT));
    r.metadata.emplace_back("omega", render(setup.barrier_omega));
    r.metadata.emplace_back("g", render(setup.window_g));
    r.metadata.emplace_back("t_B", render(setup.switch_time));
    r.metadata.emplace_back("x_d", render(setup.x_d));
    r.metadata.emplace_back("n_tra", std::to_string(opts.n_tra));
    r.metadata.emplace_back("seed", std::to_string(opts.master_seed));
    return r;
}

}  // namespace bohm
