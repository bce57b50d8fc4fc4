#pragma once

#include <qconic/conic.hpp>
#include <qconic/qcalc.hpp>
#include <qconic/series.hpp>

namespace qconic
{

/// The two bi-univalent classes: starlike-type (z D f / f) and convex-type
/// (z D(D f) / D f), both built on the symmetric q-derivative D.
enum class ClassKind { starlike, convex };

const char *to_string(ClassKind kind);

struct ClassParams
{
    ConicParams conic;
    QParameter q{0.5};
    cplx b{1.0};
};

/// Validates the conic part and b != 0.
void validate(const ClassParams &p);

/// The normalized f whose starlike-type expression
/// 1 + (1/b)(z Df / f - 1) equals the target c (c_0 = 1) to truncation order.
ComplexSeries st_member_from_target(const ComplexSeries &c, const ClassParams &params);

/// Same for the convex-type expression 1 + (1/b) z D(Df) / Df.
ComplexSeries ucv_member_from_target(const ComplexSeries &c, const ClassParams &params);

ComplexSeries member_from_target(ClassKind kind, const ComplexSeries &c, const ClassParams &params);

/// 1 + (1/b)(z Df(z)/f(z) - 1) as a series (order drops by one).
ComplexSeries st_expression(const ComplexSeries &f, const ClassParams &params);
/// 1 + (1/b) z D(Df)(z) / Df(z) as a series (order drops by one).
ComplexSeries ucv_expression(const ComplexSeries &f, const ClassParams &params);

ComplexSeries subordination_expression(ClassKind kind, const ComplexSeries &f, const ClassParams &params);

struct ClassMember
{
    ComplexSeries f; // normalized
    ComplexSeries g; // revert(f)
    ClassKind kind = ClassKind::starlike;

    static ClassMember from_f(ComplexSeries f, ClassKind kind);
};

/// Polar grid strictly inside the disk: radii max_radius * i / radii for
/// i = 1..radii, `angles` equispaced angles per radius.
struct DiskGrid
{
    int radii = 8;
    int angles = 64;
    double max_radius = 0.7;
    double slack = 1e-9;
    double tail_tolerance = 1e-6;
};

struct SideResult
{
    bool inside = false;
    double worst_margin = 0.0;
    cplx worst_point{};
    double tail_estimate = 0.0;
};

struct MembershipResult
{
    SideResult f_side;
    SideResult g_side;

    bool accepted() const noexcept
    {
        return f_side.inside && g_side.inside;
    }
};

/// Geometric tail bound max_{N-3 <= n <= N} |e_n| r^n / (1 - r) of a series at radius r.
double tail_estimate(const ComplexSeries &e, double r);

/// Checks one expression series against the conic domain on the grid.
/// Throws TruncationUnreliable when the tail estimate at the outer radius
/// exceeds grid.tail_tolerance.
SideResult check_expression(const ComplexSeries &expr, const ConicParams &conic, const DiskGrid &grid);

/// Evaluates both the f-side and the g-side expressions on the grid.
MembershipResult check_membership(const ClassMember &member, const ClassParams &params, const DiskGrid &grid = {});

} // namespace qconic
