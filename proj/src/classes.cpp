#include <qconic/classes.hpp>
#include <qconic/errors.hpp>

#include "dft.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace qconic
{

const char *to_string(ClassKind kind)
{
    return kind == ClassKind::starlike ? "st" : "ucv";
}

void validate(const ClassParams &p)
{
    validate(p.conic);
    if (p.b == cplx{} || !std::isfinite(p.b.real()) || !std::isfinite(p.b.imag())) {
        throw InvalidParameters("b must be a finite nonzero number");
    }
}

namespace
{

void check_target(const ComplexSeries &c)
{
    if (std::abs(c[0] - 1.0) > 1e-12) {
        throw std::invalid_argument("subordination target must have constant term 1");
    }
}

} // namespace

ComplexSeries st_member_from_target(const ComplexSeries &c, const ClassParams &params)
{
    check_target(c);
    const int order = c.order() + 1;
    const auto br = sym_q_brackets(order, params.q);
    ComplexSeries f(order);
    f[1] = 1.0;
    for (int n = 2; n <= order; ++n) {
        cplx s{};
        for (int j = 1; j <= n - 1; ++j) {
            s += f[j] * c[n - j];
        }
        f[n] = params.b * s / (br[static_cast<std::size_t>(n)] - 1.0);
    }
    return f;
}

ComplexSeries ucv_member_from_target(const ComplexSeries &c, const ClassParams &params)
{
    check_target(c);
    const int order = c.order() + 1;
    const auto br = sym_q_brackets(order, params.q);
    ComplexSeries f(order);
    f[1] = 1.0;
    for (int n = 2; n <= order; ++n) {
        cplx s{};
        for (int j = 1; j <= n - 1; ++j) {
            s += br[static_cast<std::size_t>(j)] * f[j] * c[n - j];
        }
        f[n] = params.b * s / (br[static_cast<std::size_t>(n)] * br[static_cast<std::size_t>(n - 1)]);
    }
    return f;
}

ComplexSeries member_from_target(ClassKind kind, const ComplexSeries &c, const ClassParams &params)
{
    return kind == ClassKind::starlike ? st_member_from_target(c, params) : ucv_member_from_target(c, params);
}

ComplexSeries st_expression(const ComplexSeries &f, const ClassParams &params)
{
    // z Df / f = Df / (f / z)
    ComplexSeries e = div(sym_q_derivative(f, params.q), divide_by_z(f));
    e[0] -= 1.0;
    e *= 1.0 / params.b;
    e[0] += 1.0;
    return e;
}

ComplexSeries ucv_expression(const ComplexSeries &f, const ClassParams &params)
{
    const ComplexSeries d1 = sym_q_derivative(f, params.q);
    const ComplexSeries d2 = sym_q_derivative(d1, params.q);
    ComplexSeries e = div(multiply_by_z(d2), d1);
    e *= 1.0 / params.b;
    e[0] += 1.0;
    return e;
}

ComplexSeries subordination_expression(ClassKind kind, const ComplexSeries &f, const ClassParams &params)
{
    return kind == ClassKind::starlike ? st_expression(f, params) : ucv_expression(f, params);
}

ClassMember ClassMember::from_f(ComplexSeries f, ClassKind kind)
{
    ComplexSeries g = revert(f);
    return ClassMember{std::move(f), std::move(g), kind};
}

double tail_estimate(const ComplexSeries &e, double r)
{
    const int N = e.order();
    double worst = 0.0;
    for (int n = std::max(0, N - 3); n <= N; ++n) {
        worst = std::max(worst, std::abs(e[n]) * std::pow(r, n));
    }
    return worst / (1.0 - r);
}

SideResult check_expression(const ComplexSeries &expr, const ConicParams &conic, const DiskGrid &grid)
{
    if (grid.radii < 1 || grid.angles < 1 || !(grid.max_radius > 0.0 && grid.max_radius < 1.0)) {
        throw std::invalid_argument("disk grid needs positive sizes and a radius inside the unit disk");
    }
    SideResult out;
    out.tail_estimate = tail_estimate(expr, grid.max_radius);
    if (!(out.tail_estimate <= grid.tail_tolerance)) {
        throw TruncationUnreliable("series tail estimate " + std::to_string(out.tail_estimate) + " at radius "
                                   + std::to_string(grid.max_radius) + " exceeds the tolerance");
    }
    out.worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= grid.radii; ++i) {
        const double r = grid.max_radius * i / grid.radii;
        const auto vals = detail::eval_on_circle(expr.coeffs(), r, grid.angles);
        for (int j = 0; j < grid.angles; ++j) {
            const double m = domain_margin(vals[static_cast<std::size_t>(j)], conic);
            if (m < out.worst_margin) {
                out.worst_margin = m;
                out.worst_point = std::polar(r, 2.0 * std::numbers::pi * j / grid.angles);
            }
        }
    }
    out.inside = out.worst_margin > -grid.slack;
    return out;
}

MembershipResult check_membership(const ClassMember &member, const ClassParams &params, const DiskGrid &grid)
{
    if (!is_normalized(member.f)) {
        throw std::invalid_argument("class member f must be normalized");
    }
    MembershipResult out;
    out.f_side = check_expression(subordination_expression(member.kind, member.f, params), params.conic, grid);
    out.g_side = check_expression(subordination_expression(member.kind, member.g, params), params.conic, grid);
    return out;
}

} // namespace qconic
