#pragma once
// Adaptive Simpson quadrature. Serves as the independent oracle for the
// special-function implementations: it knows nothing about series or
// asymptotics, only about the defining integrals.

#include <cmath>
#include <stdexcept>

namespace bohm {

namespace detail {

template <class F>
double simpson_recurse(const F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;  // Richardson correction
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Integrate f over [a, b] to absolute tolerance tol (default 1e-13).
// max_depth bounds the interval bisection recursion.
template <class F>
double integrate_adaptive_simpson(const F& f, double a, double b, double tol = 1e-13,
                                  int max_depth = 48) {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("quadrature bounds must be finite");
    if (a == b) return 0.0;
    // Seed the recursion on a handful of panels so that integrands whose
    // variation hides from a single 3-point stencil are still resolved.
    const int seed_panels = 8;
    const double h = (b - a) / seed_panels;
    double total = 0.0;
    for (int i = 0; i < seed_panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = a + (i + 1) * h;
        const double xm = 0.5 * (x0 + x1);
        const double f0 = f(x0);
        const double fm = f(xm);
        const double f1 = f(x1);
        const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += detail::simpson_recurse(f, x0, x1, f0, fm, f1, whole,
                                         tol / seed_panels, max_depth);
    }
    return total;
}

}  // namespace bohm
