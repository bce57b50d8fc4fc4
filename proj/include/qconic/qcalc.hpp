#pragma once

#include <qconic/series.hpp>

#include <vector>

namespace qconic
{

/// q in the open interval (0, 1). The classical limit is reached by taking
/// q close to 1, never q = 1.
class QParameter
{
public:
    explicit QParameter(double q);

    double value() const noexcept
    {
        return m_q;
    }

private:
    double m_q;
};

/// [n]_q = (q^n - 1)/(q - 1) = 1 + q + ... + q^{n-1}, n >= 1.
double q_bracket(int n, QParameter q);

/// Symmetric bracket (q^n - q^{-n})/(q - q^{-1}) = q^{n-1} + q^{n-3} + ... + q^{1-n}.
double sym_q_bracket(int n, QParameter q);

/// sym_q_bracket(n) for n = 0..upto (entry 0 is 0), one pow pair per n.
std::vector<double> sym_q_brackets(int upto, QParameter q);

/// Jackson derivative: coefficient of z^{n-1} is [n]_q a_n. Order drops by one.
ComplexSeries q_derivative(const ComplexSeries &f, QParameter q);

/// Symmetric q-derivative: coefficient of z^{n-1} is sym_q_bracket(n) a_n.
ComplexSeries sym_q_derivative(const ComplexSeries &f, QParameter q);

/// Symmetric q-derivative of the compositional inverse of a normalized f.
ComplexSeries sym_q_derivative_of_inverse(const ComplexSeries &f, QParameter q);

namespace detail
{

// Bracket sums for an arbitrary positive base; the public functions restrict
// the base to (0, 1).
double bracket_sum(int n, double q);
double sym_bracket_sum(int n, double q);
std::vector<double> sym_bracket_table(int upto, double q);

} // namespace detail

} // namespace qconic
