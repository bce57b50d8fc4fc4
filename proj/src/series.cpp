#include <qconic/errors.hpp>
#include <qconic/series.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace qconic
{

namespace
{

void check_order(int order)
{
    if (order < 0) {
        throw std::invalid_argument("series truncation order must be >= 0, got " + std::to_string(order));
    }
}

} // namespace

ComplexSeries::ComplexSeries() : m_coeffs(kDefaultOrder + 1) {}

ComplexSeries::ComplexSeries(int order)
{
    check_order(order);
    m_coeffs.assign(static_cast<std::size_t>(order) + 1, cplx{});
}

ComplexSeries::ComplexSeries(std::vector<cplx> coeffs) : m_coeffs(std::move(coeffs))
{
    if (m_coeffs.empty()) {
        throw std::invalid_argument("a series needs at least the constant coefficient");
    }
}

ComplexSeries::ComplexSeries(std::initializer_list<cplx> leading, int order) : ComplexSeries(order)
{
    const auto n = std::min(leading.size(), m_coeffs.size());
    std::copy_n(leading.begin(), n, m_coeffs.begin());
}

ComplexSeries ComplexSeries::constant(cplx c, int order)
{
    ComplexSeries s(order);
    s[0] = c;
    return s;
}

ComplexSeries ComplexSeries::identity(int order)
{
    ComplexSeries s(order);
    if (order >= 1) {
        s[1] = 1.0;
    }
    return s;
}

cplx ComplexSeries::coeff_or_zero(int n) const noexcept
{
    return (n >= 0 && n <= order()) ? m_coeffs[static_cast<std::size_t>(n)] : cplx{};
}

ComplexSeries ComplexSeries::truncated(int order) const
{
    check_order(order);
    if (order > this->order()) {
        throw std::invalid_argument("cannot extend a series beyond its truncation order");
    }
    return ComplexSeries(std::vector<cplx>(m_coeffs.begin(), m_coeffs.begin() + order + 1));
}

ComplexSeries &ComplexSeries::operator+=(const ComplexSeries &other)
{
    m_coeffs.resize(static_cast<std::size_t>(std::min(order(), other.order())) + 1);
    for (int n = 0; n <= order(); ++n) {
        (*this)[n] += other[n];
    }
    return *this;
}

ComplexSeries &ComplexSeries::operator-=(const ComplexSeries &other)
{
    m_coeffs.resize(static_cast<std::size_t>(std::min(order(), other.order())) + 1);
    for (int n = 0; n <= order(); ++n) {
        (*this)[n] -= other[n];
    }
    return *this;
}

ComplexSeries &ComplexSeries::operator*=(cplx s)
{
    for (auto &c : m_coeffs) {
        c *= s;
    }
    return *this;
}

ComplexSeries add(const ComplexSeries &a, const ComplexSeries &b)
{
    ComplexSeries r = a;
    r += b;
    return r;
}

ComplexSeries sub(const ComplexSeries &a, const ComplexSeries &b)
{
    ComplexSeries r = a;
    r -= b;
    return r;
}

ComplexSeries scale(const ComplexSeries &a, cplx s)
{
    ComplexSeries r = a;
    r *= s;
    return r;
}

ComplexSeries mul(const ComplexSeries &a, const ComplexSeries &b)
{
    const int order = std::min(a.order(), b.order());
    ComplexSeries r(order);
    for (int n = 0; n <= order; ++n) {
        cplx acc{};
        for (int j = 0; j <= n; ++j) {
            acc += a[j] * b[n - j];
        }
        r[n] = acc;
    }
    return r;
}

ComplexSeries div(const ComplexSeries &a, const ComplexSeries &b)
{
    if (b[0] == cplx{}) {
        throw DivisionBySeriesWithZeroConstantTerm(
            "series division needs a nonzero constant term in the divisor; factor out powers of z first");
    }
    const int order = std::min(a.order(), b.order());
    const cplx inv_b0 = 1.0 / b[0];
    ComplexSeries r(order);
    for (int n = 0; n <= order; ++n) {
        cplx acc = a[n];
        for (int j = 1; j <= n; ++j) {
            acc -= b[j] * r[n - j];
        }
        r[n] = acc * inv_b0;
    }
    return r;
}

ComplexSeries compose(const ComplexSeries &outer, const ComplexSeries &inner)
{
    if (inner[0] != cplx{}) {
        throw CompositionInnerConstantNonzero("composition needs an inner series with zero constant term");
    }
    const int order = std::min(outer.order(), inner.order());

    // Horner: r <- r * inner + outer_j for j = order..0. After processing
    // outer_j the accumulator is still multiplied by inner j more times, and
    // each product raises the valuation by one, so only orders <= order - j
    // of the accumulator can reach the result.
    std::vector<cplx> acc(static_cast<std::size_t>(order) + 1, cplx{});
    std::vector<cplx> next(acc.size(), cplx{});
    acc[0] = outer[order];
    for (int j = order - 1; j >= 0; --j) {
        const int keep = order - j;
        next[0] = outer[j];
        for (int n = 1; n <= keep; ++n) {
            cplx s{};
            // (acc * inner)_n with inner_0 = 0; acc is known up to keep - 1.
            const int lo = std::max(1, n - (keep - 1));
            for (int m = lo; m <= n; ++m) {
                s += inner[m] * acc[static_cast<std::size_t>(n - m)];
            }
            next[static_cast<std::size_t>(n)] = s;
        }
        std::swap(acc, next);
    }
    return ComplexSeries(std::move(acc));
}

namespace
{

// Returns false when |g_n| r^n exceeds `limit` for some n (g is then left partial).
bool revert_into(const ComplexSeries &f, ComplexSeries &g, double r, double limit)
{
    if (f.order() < 1 || !is_normalized(f)) {
        throw ReversionRequiresNormalizedSeries("reversion needs a series with f(0) = 0 and f'(0) = 1");
    }
    const int order = f.order();

    // Lagrange inversion: g_n = (1/n) [z^{n-1}] phi^n with phi = z / f(z).
    // Powers of phi come from the J.C.P. Miller recurrence, which only needs
    // the coefficients of phi^n up to z^{n-1}.
    const ComplexSeries phi = div(ComplexSeries::constant(1.0, order - 1), divide_by_z(f));
    const cplx phi0 = phi[0];

    // split real/imaginary storage keeps the inner loop in plain doubles
    std::vector<double> pr(static_cast<std::size_t>(order)), pi(pr.size());
    for (int j = 0; j < order; ++j) {
        pr[static_cast<std::size_t>(j)] = phi[j].real();
        pi[static_cast<std::size_t>(j)] = phi[j].imag();
    }
    std::vector<double> ar(pr.size(), 0.0), ai(pr.size(), 0.0);

    g = ComplexSeries(order);
    cplx phi0_pow = 1.0;
    double rn = 1.0;
    for (int n = 1; n <= order; ++n) {
        phi0_pow *= phi0;
        ar[0] = phi0_pow.real();
        ai[0] = phi0_pow.imag();
        const double step = n + 1;
        for (int m = 1; m <= n - 1; ++m) {
            // sum_{j=1}^{m} ((n+1) j - m) phi_j A_{m-j}
            double sr = 0.0, si = 0.0;
            double w = step - m;
            const double *ppr = pr.data() + 1, *ppi = pi.data() + 1;
            const double *qar = ar.data() + (m - 1), *qai = ai.data() + (m - 1);
            for (int j = 0; j < m; ++j, w += step) {
                const double xr = ppr[j] * qar[-j] - ppi[j] * qai[-j];
                const double xi = ppr[j] * qai[-j] + ppi[j] * qar[-j];
                sr += w * xr;
                si += w * xi;
            }
            const cplx v = cplx(sr, si) / (static_cast<double>(m) * phi0);
            ar[static_cast<std::size_t>(m)] = v.real();
            ai[static_cast<std::size_t>(m)] = v.imag();
        }
        g[n] = cplx(ar[static_cast<std::size_t>(n - 1)], ai[static_cast<std::size_t>(n - 1)]) / static_cast<double>(n);
        rn *= r;
        if (!(std::norm(g[n]) * rn * rn <= limit * limit)) {
            return false;
        }
    }
    return true;
}

} // namespace

ComplexSeries revert(const ComplexSeries &f)
{
    ComplexSeries g;
    revert_into(f, g, 0.0, std::numeric_limits<double>::infinity());
    return g;
}

std::optional<ComplexSeries> revert_bounded(const ComplexSeries &f, double r, double limit)
{
    ComplexSeries g;
    if (!revert_into(f, g, r, limit)) {
        return std::nullopt;
    }
    return g;
}

cplx eval(const ComplexSeries &f, cplx z)
{
    cplx acc{};
    for (int n = f.order(); n >= 0; --n) {
        acc = acc * z + f[n];
    }
    return acc;
}

ComplexSeries dilate(const ComplexSeries &f, cplx s)
{
    ComplexSeries r = f;
    cplx p = 1.0;
    for (int n = 0; n <= r.order(); ++n) {
        r[n] *= p;
        p *= s;
    }
    return r;
}

ComplexSeries divide_by_z(const ComplexSeries &f)
{
    if (f[0] != cplx{}) {
        throw std::invalid_argument("divide_by_z needs a zero constant term");
    }
    if (f.order() == 0) {
        return ComplexSeries(0);
    }
    return ComplexSeries(std::vector<cplx>(f.coeffs().begin() + 1, f.coeffs().end()));
}

ComplexSeries multiply_by_z(const ComplexSeries &f)
{
    std::vector<cplx> c;
    c.reserve(f.coeffs().size() + 1);
    c.push_back(cplx{});
    c.insert(c.end(), f.coeffs().begin(), f.coeffs().end());
    return ComplexSeries(std::move(c));
}

bool is_normalized(const ComplexSeries &f, double tol)
{
    return f.order() >= 1 && std::abs(f[0]) <= tol && std::abs(f[1] - 1.0) <= tol;
}

double max_abs_diff(const ComplexSeries &a, const ComplexSeries &b)
{
    const int order = std::min(a.order(), b.order());
    double m = 0;
    for (int n = 0; n <= order; ++n) {
        m = std::max(m, std::abs(a[n] - b[n]));
    }
    return m;
}

} // namespace qconic
