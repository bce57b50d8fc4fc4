#pragma once

#include <qconic/series.hpp>

namespace qconic
{

/// Arithmetic-geometric mean of two positive reals.
double agm(double a, double b);

/// Carlson's symmetric integral R_F(x, y, z) = 1/2 int_0^inf dt / sqrt((t+x)(t+y)(t+z)).
/// Real arguments must be >= 0 with at most one zero.
double carlson_rf(double x, double y, double z);
/// Complex version; arguments must lie off the closed negative real axis
/// (at most one may vanish). Principal square roots throughout.
cplx carlson_rf(cplx x, cplx y, cplx z);

/// Complete elliptic integral of the first kind
/// K(kappa) = int_0^1 dt / (sqrt(1 - t^2) sqrt(1 - kappa^2 t^2)), 0 <= kappa < 1.
double elliptic_K(double kappa);

/// Incomplete integral with upper limit t in [-1, 1] (t = sin of the amplitude).
double elliptic_F(double t, double kappa);
/// Complex upper limit, integrated along the segment [0, t] with principal branches.
/// The segment must avoid the cuts t real, |t| >= 1.
cplx elliptic_F(cplx t, double kappa);

/// Modulus together with its complement, kept separately so that both stay
/// accurate when one of them is tiny.
struct EllipticModulus
{
    double kappa;
    double kappa_prime;
};

EllipticModulus make_modulus(double kappa);

/// K(kappa) using the stored complement.
double complete_K(const EllipticModulus &m);
/// K'(kappa) = K(sqrt(1 - kappa^2)).
double complete_K_prime(const EllipticModulus &m);

/// cosh(pi K'(kappa) / (4 K(kappa))): the conic eccentricity attached to kappa.
double conic_k_from_modulus(const EllipticModulus &m);

/// Inverse of conic_k_from_modulus for k > 1. Results are memoized per k;
/// the cache is safe under concurrent readers.
EllipticModulus solve_kappa(double k);

} // namespace qconic
