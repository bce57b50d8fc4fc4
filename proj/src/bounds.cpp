#include <qconic/bounds.hpp>
#include <qconic/errors.hpp>

#include <cmath>
#include <sstream>

namespace qconic
{

namespace
{

struct Brackets
{
    double b2;
    double b3;
};

Brackets brackets(const BoundInputs &in)
{
    return {sym_q_bracket(2, in.params.q), sym_q_bracket(3, in.params.q)};
}

double real_b(const BoundInputs &in)
{
    const cplx b = in.params.b;
    if (b.imag() != 0.0 || !(b.real() > 0.0)) {
        throw InvalidParameters("the bounds need a real b > 0");
    }
    if (!(in.P1 > 0.0)) {
        throw InvalidParameters("the bounds need P1 > 0");
    }
    return b.real();
}

double positive(double value, const char *what)
{
    if (!(value > 0.0)) {
        std::ostringstream os;
        os.precision(12);
        os << "bracket " << what << " = " << value << " is not positive";
        throw NonpositiveDenominator(os.str());
    }
    return value;
}

double st_bracket(const BoundInputs &in)
{
    const double b = real_b(in);
    const auto [b2, b3] = brackets(in);
    return positive(in.P1 * in.P1 * b * (b3 - b2) + 2.0 * (in.P1 - in.P2) * (b2 - 1.0) * (b2 - 1.0),
                    "P1^2 b([3]-[2]) + 2(P1-P2)([2]-1)^2");
}

double ucv_bracket(const BoundInputs &in, bool with_b)
{
    const double b = real_b(in);
    const auto [b2, b3] = brackets(in);
    const double first = 2.0 * b2 * (b3 - b2) * in.P1 * in.P1 * (with_b ? b : 1.0);
    return positive(first + b2 * b2 * (in.P1 - in.P2),
                    with_b ? "2[2]([3]-[2]) b P1^2 + [2]^2 (P1-P2)" : "2[2]([3]-[2]) P1^2 + [2]^2 (P1-P2)");
}

} // namespace

BoundInputs make_bound_inputs(const ClassParams &params, const ExtremalCoeffs &P, double mu)
{
    return {params, P(1), P(2), mu};
}

double fekete_szego_rule(double base, double s)
{
    return std::abs(s) <= 1.0 ? base : base * std::abs(s);
}

double st_a2_bound(const BoundInputs &in)
{
    const double b = real_b(in);
    return in.P1 * std::sqrt(in.P1) * b * b / std::sqrt(st_bracket(in));
}

double st_a3_bound(const BoundInputs &in)
{
    const double b = real_b(in);
    const auto [b2, b3] = brackets(in);
    return b * b * in.P1 * in.P1 / ((b2 - 1.0) * (b2 - 1.0)) + b * in.P1 / (b3 - 1.0);
}

double st_s(const BoundInputs &in)
{
    const double b = real_b(in);
    return in.P1 * in.P1 * b * (1.0 - in.mu) / (4.0 * st_bracket(in));
}

double st_fekete_szego_bound(const BoundInputs &in)
{
    const double b = real_b(in);
    const double b3 = sym_q_bracket(3, in.params.q);
    return fekete_szego_rule(in.P1 * b / (b3 - 1.0), st_s(in));
}

double ucv_a2_bound(const BoundInputs &in)
{
    const double b = real_b(in);
    return in.P1 * std::sqrt(in.P1 * b) / std::sqrt(ucv_bracket(in, true));
}

double ucv_a2_bound_without_b(const BoundInputs &in)
{
    const double b = real_b(in);
    return in.P1 * std::sqrt(in.P1) * b / std::sqrt(ucv_bracket(in, false));
}

double ucv_a3_bound(const BoundInputs &in)
{
    const double b = real_b(in);
    const auto [b2, b3] = brackets(in);
    return in.P1 * in.P1 * b * b / (b2 * b2) + b * in.P1 / (b2 * b3);
}

double ucv_s(const BoundInputs &in)
{
    const double b = real_b(in);
    return in.P1 * in.P1 * b * (1.0 - in.mu) / (4.0 * ucv_bracket(in, true));
}

double ucv_fekete_szego_bound(const BoundInputs &in)
{
    const double b = real_b(in);
    const auto [b2, b3] = brackets(in);
    return fekete_szego_rule(in.P1 * b / (b2 * b3), ucv_s(in));
}

BoundTable bound_table(ClassKind kind, const BoundInputs &in)
{
    BoundTable t;
    if (kind == ClassKind::starlike) {
        t.a2 = t.a2_alt = st_a2_bound(in);
        t.a3 = st_a3_bound(in);
        t.s = st_s(in);
        t.fekete_szego = st_fekete_szego_bound(in);
    } else {
        t.a2 = ucv_a2_bound(in);
        t.a2_alt = ucv_a2_bound_without_b(in);
        t.a3 = ucv_a3_bound(in);
        t.s = ucv_s(in);
        t.fekete_szego = ucv_fekete_szego_bound(in);
    }
    return t;
}

} // namespace qconic
