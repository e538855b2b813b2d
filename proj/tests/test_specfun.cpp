// Special-function checks: quadrature oracles, symmetry, pinned values, and
// domain handling for the Fresnel and error-function implementations.

#include <cmath>
#include <cstdio>
#include <limits>

#include "bohm/quadrature.hpp"
#include "bohm/rng.hpp"
#include "bohm/specfun.hpp"
#include "test_util.hpp"

using namespace bohm;

namespace {

FresnelPair fresnel_by_quadrature(double u, double tol = 1e-13) {
    const double c = integrate_adaptive_simpson(
        [](double x) { return std::cos(0.5 * M_PI * x * x); }, 0.0, u, tol);
    const double s = integrate_adaptive_simpson(
        [](double x) { return std::sin(0.5 * M_PI * x * x); }, 0.0, u, tol);
    return FresnelPair{c, s};
}

double erf_by_quadrature(double u) {
    return 2.0 / std::sqrt(M_PI) *
           integrate_adaptive_simpson([](double x) { return std::exp(-x * x); }, 0.0, u, 1e-15);
}

void check_pinned_values() {
    const FresnelPair f1 = fresnel(1.0);
    REQUIRE_CLOSE(f1.c, 0.7798934003768228, 1e-12, "C(1)");
    REQUIRE_CLOSE(f1.s, 0.4382591473903548, 1e-12, "S(1)");
    REQUIRE_CLOSE(erf_family(1.0).erf, 0.8427007929497149, 1e-14, "erf(1)");
    // Limits at infinity.
    REQUIRE_CLOSE(fresnel(std::numeric_limits<double>::infinity()).c, 0.5, 0.0, "C(+inf)");
    REQUIRE_CLOSE(fresnel(std::numeric_limits<double>::infinity()).s, 0.5, 0.0, "S(+inf)");
    REQUIRE_CLOSE(fresnel(-std::numeric_limits<double>::infinity()).c, -0.5, 0.0, "C(-inf)");
    REQUIRE_CLOSE(fresnel(-std::numeric_limits<double>::infinity()).s, -0.5, 0.0, "S(-inf)");
    REQUIRE(fresnel(0.0).c == 0.0 && fresnel(0.0).s == 0.0, "F(0) = 0");
    REQUIRE(erf_family(0.0).erf == 0.0, "erf(0) = 0");
}

void check_domain_errors() {
    REQUIRE_THROWS(fresnel(std::numeric_limits<double>::quiet_NaN()), "fresnel(NaN)");
    REQUIRE_THROWS(erf_family(std::numeric_limits<double>::quiet_NaN()), "erf(NaN)");
    REQUIRE_THROWS(erf_family(std::numeric_limits<double>::infinity()), "erf(inf)");
}

void check_random_against_quadrature() {
    RandomStream draw(20260819, 0, 0);
    double max_err_c = 0.0, max_err_s = 0.0, max_err_e = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = -10.0 + 20.0 * draw.uniform();
        const FresnelPair got = fresnel(u);
        const FresnelPair want = fresnel_by_quadrature(u);
        max_err_c = std::fmax(max_err_c, std::fabs(got.c - want.c));
        max_err_s = std::fmax(max_err_s, std::fabs(got.s - want.s));
        REQUIRE(std::fabs(got.c) < 0.8 && std::fabs(got.s) < 0.8,
                "Fresnel integrals stay within (-0.8, 0.8)");
        if (i % 10 == 0) {
            const double ue = -4.0 + 8.0 * draw.uniform();
            max_err_e = std::fmax(max_err_e, std::fabs(erf_family(ue).erf - erf_by_quadrature(ue)));
        }
    }
    REQUIRE(max_err_c < 1e-10, "C(u) within 1e-10 of quadrature; worst " + std::to_string(max_err_c));
    REQUIRE(max_err_s < 1e-10, "S(u) within 1e-10 of quadrature; worst " + std::to_string(max_err_s));
    REQUIRE(max_err_e < 1e-12, "erf within 1e-12 of quadrature; worst " + std::to_string(max_err_e));
    std::printf("quadrature oracle: worst |dC| %.3g, |dS| %.3g, |derf| %.3g\n", max_err_c,
                max_err_s, max_err_e);
}

void check_symmetry_and_identities() {
    RandomStream draw(7, 1, 0);
    for (int i = 0; i < 200; ++i) {
        const double u = -8.0 + 16.0 * draw.uniform();
        const FresnelPair plus = fresnel(u);
        const FresnelPair minus = fresnel(-u);
        REQUIRE(plus.c == -minus.c && plus.s == -minus.s, "Fresnel integrals are odd (exactly)");
        const ErfPair e = erf_family(u);
        REQUIRE(erf_family(-u).erf == -e.erf, "erf is odd (exactly)");
        REQUIRE_CLOSE(e.erf + e.erfc, 1.0, 1e-14, "erf + erfc = 1");
    }
    // Monotonicity of erf on a dense grid (inside +-5; beyond that the
    // increments fall under double resolution).
    double prev = erf_family(-5.0).erf;
    for (int k = 1; k <= 1000; ++k) {
        const double u = -5.0 + k * 0.01;
        const double cur = erf_family(u).erf;
        REQUIRE(cur > prev, "erf strictly increasing");
        prev = cur;
    }
    // normal_cdf agrees with the analytic relation at a few points.
    REQUIRE_CLOSE(normal_cdf(0.0), 0.5, 1e-15, "Phi(0)");
    REQUIRE_CLOSE(normal_cdf(1.0), 0.8413447460685429, 1e-12, "Phi(1)");
}

// The series/asymptotic switch must be seamless: scan a fine grid through the
// handover region and compare against quadrature.
void check_crossover_region() {
    double worst = 0.0;
    for (int k = 0; k <= 160; ++k) {
        const double u = 3.0 + k * 0.0125;  // 3.0 .. 5.0
        const FresnelPair got = fresnel(u);
        const FresnelPair want = fresnel_by_quadrature(u);
        worst = std::fmax(worst, std::fmax(std::fabs(got.c - want.c), std::fabs(got.s - want.s)));
    }
    REQUIRE(worst < 1e-10, "crossover region within 1e-10; worst " + std::to_string(worst));
}

}  // namespace

int main() {
    check_pinned_values();
    check_domain_errors();
    check_symmetry_and_identities();
    check_crossover_region();
    check_random_against_quadrature();
    std::printf("test_specfun: all checks passed\n");
    return 0;
}
