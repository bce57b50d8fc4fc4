#include <qconic/errors.hpp>
#include <qconic/qcalc.hpp>

#include <cmath>
#include <algorithm>
#include <string>
#include <vector>

namespace qconic
{

QParameter::QParameter(double q) : m_q(q)
{
    if (!(q > 0.0 && q < 1.0)) {
        throw InvalidParameters("q must lie in the open interval (0, 1), got " + std::to_string(q));
    }
}

namespace detail
{

double bracket_sum(int n, double q)
{
    if (n < 1) {
        throw std::invalid_argument("q-bracket index must be >= 1");
    }
    // Explicit sum; the quotient form cancels catastrophically near q = 1.
    double acc = 0, p = 1;
    for (int j = 0; j < n; ++j) {
        acc += p;
        p *= q;
    }
    return acc;
}

double sym_bracket_sum(int n, double q)
{
    if (n < 1) {
        throw std::invalid_argument("q-bracket index must be >= 1");
    }
    // Pair q^e with q^{-e} so the sum is exactly symmetric in q <-> 1/q.
    // Smallest exponents first; sym_bracket_table repeats these steps.
    double acc = (n % 2 == 1) ? 1.0 : 0.0;
    for (int e = (n % 2 == 1) ? 2 : 1; e <= n - 1; e += 2) {
        acc += std::pow(q, e) + std::pow(q, -e);
    }
    return acc;
}

std::vector<double> sym_bracket_table(int upto, double q)
{
    std::vector<double> t(static_cast<std::size_t>(std::max(upto, 0)) + 1, 0.0);
    if (upto >= 1) {
        t[1] = 1.0;
    }
    for (int n = 2; n <= upto; ++n) {
        const int e = n - 1;
        t[static_cast<std::size_t>(n)] = t[static_cast<std::size_t>(n - 2)] + (std::pow(q, e) + std::pow(q, -e));
    }
    return t;
}

} // namespace detail

double q_bracket(int n, QParameter q)
{
    return detail::bracket_sum(n, q.value());
}

double sym_q_bracket(int n, QParameter q)
{
    return detail::sym_bracket_sum(n, q.value());
}

std::vector<double> sym_q_brackets(int upto, QParameter q)
{
    return detail::sym_bracket_table(upto, q.value());
}

ComplexSeries q_derivative(const ComplexSeries &f, QParameter q)
{
    if (f.order() == 0) {
        return ComplexSeries(0);
    }
    ComplexSeries r(f.order() - 1);
    for (int n = 1; n <= f.order(); ++n) {
        r[n - 1] = q_bracket(n, q) * f[n];
    }
    return r;
}

ComplexSeries sym_q_derivative(const ComplexSeries &f, QParameter q)
{
    if (f.order() == 0) {
        return ComplexSeries(0);
    }
    const auto br = sym_q_brackets(f.order(), q);
    ComplexSeries r(f.order() - 1);
    for (int n = 1; n <= f.order(); ++n) {
        r[n - 1] = br[static_cast<std::size_t>(n)] * f[n];
    }
    return r;
}

ComplexSeries sym_q_derivative_of_inverse(const ComplexSeries &f, QParameter q)
{
    return sym_q_derivative(revert(f), q);
}

} // namespace qconic
