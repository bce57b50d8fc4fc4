#pragma once

#include <complex>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace qconic
{

using cplx = std::complex<double>;

inline constexpr int kDefaultOrder = 12;

/// Truncated Taylor series c_0 + c_1 z + ... + c_N z^N around the origin.
///
/// The truncation order N is part of the value: binary operations on series
/// of orders N1 and N2 produce a series of order min(N1, N2), so nothing
/// beyond what both operands know is ever reported.
class ComplexSeries
{
public:
    /// Zero series of order kDefaultOrder.
    ComplexSeries();
    /// Zero series of the given order (>= 0).
    explicit ComplexSeries(int order);
    /// Coefficients c_0..c_N; the order is coeffs.size() - 1 (coeffs must be non-empty).
    explicit ComplexSeries(std::vector<cplx> coeffs);
    /// Leading coefficients followed by zeros up to `order`.
    ComplexSeries(std::initializer_list<cplx> leading, int order);

    static ComplexSeries constant(cplx c, int order);
    /// The series z.
    static ComplexSeries identity(int order);

    int order() const noexcept
    {
        return static_cast<int>(m_coeffs.size()) - 1;
    }
    std::span<const cplx> coeffs() const noexcept
    {
        return m_coeffs;
    }
    std::span<cplx> coeffs() noexcept
    {
        return m_coeffs;
    }

    cplx operator[](int n) const
    {
        return m_coeffs[static_cast<std::size_t>(n)];
    }
    cplx &operator[](int n)
    {
        return m_coeffs[static_cast<std::size_t>(n)];
    }
    /// Coefficient n, or 0 when n exceeds the order.
    cplx coeff_or_zero(int n) const noexcept;

    /// Drops every coefficient above `order` (which must not exceed the current order).
    ComplexSeries truncated(int order) const;

    ComplexSeries &operator+=(const ComplexSeries &other);
    ComplexSeries &operator-=(const ComplexSeries &other);
    ComplexSeries &operator*=(cplx s);

private:
    std::vector<cplx> m_coeffs;
};

ComplexSeries add(const ComplexSeries &a, const ComplexSeries &b);
ComplexSeries sub(const ComplexSeries &a, const ComplexSeries &b);
ComplexSeries scale(const ComplexSeries &a, cplx s);
/// Cauchy product truncated to min order.
ComplexSeries mul(const ComplexSeries &a, const ComplexSeries &b);
/// Series quotient; throws DivisionBySeriesWithZeroConstantTerm when b_0 == 0.
ComplexSeries div(const ComplexSeries &a, const ComplexSeries &b);
/// outer(inner(z)); throws CompositionInnerConstantNonzero when inner_0 != 0.
ComplexSeries compose(const ComplexSeries &outer, const ComplexSeries &inner);
/// Compositional inverse g of a normalized f (f_0 = 0, f_1 = 1), so that f(g(w)) = w.
/// Throws ReversionRequiresNormalizedSeries otherwise.
ComplexSeries revert(const ComplexSeries &f);
/// revert, giving up (nullopt) as soon as some |g_n| r^n exceeds `limit`:
/// the inverse then does not converge usefully on |w| <= r.
std::optional<ComplexSeries> revert_bounded(const ComplexSeries &f, double r, double limit);
/// Horner evaluation of the truncated polynomial.
cplx eval(const ComplexSeries &f, cplx z);

/// f(s z): coefficient n scaled by s^n.
ComplexSeries dilate(const ComplexSeries &f, cplx s);
/// f(z) / z for f with f_0 == 0 (order drops by one).
ComplexSeries divide_by_z(const ComplexSeries &f);
/// z f(z) (order grows by one, the new top coefficient is exact).
ComplexSeries multiply_by_z(const ComplexSeries &f);

/// True when f_0 == 0 and f_1 == 1 within `tol`.
bool is_normalized(const ComplexSeries &f, double tol = 1e-12);

/// Largest coefficientwise distance over the common order.
double max_abs_diff(const ComplexSeries &a, const ComplexSeries &b);

inline ComplexSeries operator+(const ComplexSeries &a, const ComplexSeries &b)
{
    return add(a, b);
}
inline ComplexSeries operator-(const ComplexSeries &a, const ComplexSeries &b)
{
    return sub(a, b);
}
inline ComplexSeries operator*(const ComplexSeries &a, const ComplexSeries &b)
{
    return mul(a, b);
}
inline ComplexSeries operator/(const ComplexSeries &a, const ComplexSeries &b)
{
    return div(a, b);
}
inline ComplexSeries operator*(const ComplexSeries &a, cplx s)
{
    return scale(a, s);
}
inline ComplexSeries operator*(cplx s, const ComplexSeries &a)
{
    return scale(a, s);
}

} // namespace qconic
