#pragma once
// Special functions needed by the closed-form densities: Fresnel integrals in
// the convention F(u) = C(u) + i S(u) = integral_0^u exp(i pi x^2 / 2) dx,
// and the error function family.

namespace bohm {

struct FresnelPair {
    double c;  // cosine Fresnel integral C(u)
    double s;  // sine Fresnel integral S(u)
};

struct ErfPair {
    double erf;   // error function
    double erfc;  // complementary error function, erf + erfc = 1
};

// C(u) = integral_0^u cos(pi x^2 / 2) dx, S(u) likewise with sin.
// Power series for small |u|, auxiliary-function asymptotics beyond; absolute
// accuracy ~1e-11 or better everywhere. Throws on non-finite input.
FresnelPair fresnel(double u);

// erf/erfc via Maclaurin series (|u| <= 2) and a continued fraction beyond.
// Absolute accuracy ~1e-15. Throws on non-finite input.
ErfPair erf_family(double u);

// Standard normal CDF, Phi(z) = erfc(-z / sqrt(2)) / 2.
double normal_cdf(double z);

}  // namespace bohm
