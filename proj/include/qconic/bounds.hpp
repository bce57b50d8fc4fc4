#pragma once

#include <qconic/classes.hpp>
#include <qconic/conic.hpp>

namespace qconic
{

/// Inputs of the closed-form coefficient bounds. b must be real and positive
/// here, P1 > 0 and mu real.
struct BoundInputs
{
    ClassParams params;
    double P1 = 0.0;
    double P2 = 0.0;
    double mu = 0.0;
};

BoundInputs make_bound_inputs(const ClassParams &params, const ExtremalCoeffs &P, double mu);

// Starlike-type class, bounds in their published form.
double st_a2_bound(const BoundInputs &in);
double st_a3_bound(const BoundInputs &in);
double st_s(const BoundInputs &in);
double st_fekete_szego_bound(const BoundInputs &in);

// Convex-type class. ucv_a2_bound keeps b inside the bracket, as published;
// ucv_a2_bound_without_b follows the proof's a2^2 identity,
// which has no b there (numerator P1 sqrt(P1) b).
double ucv_a2_bound(const BoundInputs &in);
double ucv_a2_bound_without_b(const BoundInputs &in);
double ucv_a3_bound(const BoundInputs &in);
double ucv_s(const BoundInputs &in);
double ucv_fekete_szego_bound(const BoundInputs &in);

/// max(1, |s|) rule shared by both Fekete-Szego bounds.
double fekete_szego_rule(double base, double s);

struct BoundTable
{
    double a2 = 0.0;
    double a2_alt = 0.0; // convex-type only; equals a2 for the starlike class
    double a3 = 0.0;
    double s = 0.0;
    double fekete_szego = 0.0;
};

BoundTable bound_table(ClassKind kind, const BoundInputs &in);

} // namespace qconic
