#include <qconic/conic.hpp>
#include <qconic/errors.hpp>

#include "dft.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <locale>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

namespace qconic
{

namespace
{

using std::numbers::pi;

std::string fmt(double x)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << x;
    return os.str();
}

} // namespace

const char *to_string(ConicBranch b)
{
    switch (b) {
        case ConicBranch::half_plane:
            return "half-plane";
        case ConicBranch::hyperbola:
            return "hyperbola";
        case ConicBranch::parabola:
            return "parabola";
        case ConicBranch::ellipse:
            return "ellipse";
    }
    return "?";
}

ConicBranch ConicParams::branch() const noexcept
{
    if (k == 0.0) {
        return ConicBranch::half_plane;
    }
    if (k < 1.0) {
        return ConicBranch::hyperbola;
    }
    if (k == 1.0) {
        return ConicBranch::parabola;
    }
    return ConicBranch::ellipse;
}

void validate(const ConicParams &p)
{
    if (!std::isfinite(p.k) || !std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
        throw InvalidParameters("conic parameters must be finite");
    }
    if (p.k < 0.0) {
        throw InvalidParameters("k must be >= 0, got " + fmt(p.k));
    }
    if (p.beta < 0.0) {
        throw InvalidParameters("beta must be >= 0, got " + fmt(p.beta));
    }
    if (!(p.beta < p.alpha)) {
        throw InvalidParameters("beta must be < alpha (beta = " + fmt(p.beta) + ", alpha = " + fmt(p.alpha) + ")");
    }
    if (p.alpha > 1.0) {
        throw InvalidParameters("alpha must be <= 1, got " + fmt(p.alpha));
    }
    if (!(p.k * (1.0 - p.alpha) < 1.0 - p.beta)) {
        throw InvalidParameters("k(1 - alpha) must be < 1 - beta");
    }
}

double domain_margin(cplx w, const ConicParams &p)
{
    // sqrt, not hypot: much faster, and no overflow risk here
    const double du = w.real() - p.alpha;
    return (w.real() - p.beta) - p.k * std::sqrt(du * du + w.imag() * w.imag());
}

bool in_domain(cplx w, const ConicParams &p, double slack)
{
    return domain_margin(w, p) > -slack;
}

double boundary_residual(const BoundaryPoint &pt, const ConicParams &p)
{
    const double k2 = p.k * p.k;
    const double du = pt.u - p.alpha;
    const double db = pt.u - p.beta;
    return k2 * du * du + k2 * pt.v * pt.v - db * db;
}

std::vector<BoundaryPoint> boundary_points(const ConicParams &p, int count, double extent)
{
    validate(p);
    if (count < 2) {
        throw std::invalid_argument("boundary_points needs count >= 2");
    }
    if (!(extent > 0.0)) {
        throw std::invalid_argument("boundary extent must be positive");
    }
    const double k = p.k, a = p.alpha, b = p.beta;
    const double k2 = k * k;
    std::vector<BoundaryPoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    const auto frac = [count](int j) { return static_cast<double>(j) / (count - 1); };

    switch (p.branch()) {
        case ConicBranch::half_plane:
            throw DegenerateBoundary("for k = 0 the boundary is the vertical line u = beta");
        case ConicBranch::parabola: {
            // v^2 = (alpha - beta)(2u - alpha - beta)
            for (int j = 0; j < count; ++j) {
                const double v = -extent + 2.0 * extent * frac(j);
                pts.push_back({0.5 * (a + b) + v * v / (2.0 * (a - b)), v});
            }
            break;
        }
        case ConicBranch::ellipse: {
            // (k^2-1)(u-uc)^2 + k^2 v^2 = R
            const double uc = (k2 * a - b) / (k2 - 1.0);
            const double r = (k2 * a - b) * (k2 * a - b) / (k2 - 1.0) - (k2 * a * a - b * b);
            const double semi_u = std::sqrt(r / (k2 - 1.0));
            const double semi_v = std::sqrt(r) / k;
            for (int j = 0; j < count; ++j) {
                const double t = 2.0 * pi * frac(j);
                pts.push_back({uc + semi_u * std::cos(t), semi_v * std::sin(t)});
            }
            break;
        }
        case ConicBranch::hyperbola: {
            // (1-k^2)(u-uc)^2 - k^2 v^2 = k^2 (alpha-beta)^2 / (1-k^2); right branch only.
            const double uc = (b - k2 * a) / (1.0 - k2);
            const double semi_u = k * (a - b) / (1.0 - k2);
            const double semi_v = (a - b) / std::sqrt(1.0 - k2);
            const double t_max = std::asinh(extent / semi_v);
            for (int j = 0; j < count; ++j) {
                const double t = -t_max + 2.0 * t_max * frac(j);
                pts.push_back({uc + semi_u * std::cosh(t), semi_v * std::sinh(t)});
            }
            break;
        }
    }
    return pts;
}

std::vector<BoundaryPoint> boundary_line_points(const ConicParams &p, int count, double extent)
{
    if (count < 2) {
        throw std::invalid_argument("boundary_line_points needs count >= 2");
    }
    std::vector<BoundaryPoint> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
        pts.push_back({p.beta, -extent + 2.0 * extent * static_cast<double>(j) / (count - 1)});
    }
    return pts;
}

void write_boundary_csv(std::ostream &os, std::span<const BoundaryPoint> points)
{
    std::ostringstream buf;
    buf.imbue(std::locale::classic());
    buf << std::setprecision(17);
    buf << "u,v\n";
    for (const auto &pt : points) {
        buf << pt.u << ',' << pt.v << '\n';
    }
    os << buf.str();
}

cplx u_k(cplx z, double rho)
{
    return (z + rho) / (1.0 + rho * z);
}

namespace
{

double tanh_half_squared(double x)
{
    const double t = std::tanh(0.5 * x);
    return t * t;
}

// The real trace of the ellipse-branch core, t in (-1/sqrt(kappa), 1/sqrt(kappa)).
// On |t| > 1 the integral continues as K + i G(t) with
// G(t) = int_1^t ds / sqrt((s^2 - 1)(1 - kappa^2 s^2)) = F(s*, kappa'),
// s*^2 = (t^2 - 1) / (kappa'^2 t^2), and sin(pi/2 + i y) = cosh y.
double ellipse_core_real(double t, const EllipticModulus &m, double K)
{
    const double at = std::abs(t);
    if (at <= 1.0) {
        return std::sin(pi * elliptic_F(t, m.kappa) / (2.0 * K));
    }
    const double s = std::sqrt((at - 1.0) * (at + 1.0)) / (m.kappa_prime * at);
    if (s > 1.0) {
        throw BranchEvaluationError("ellipse branch evaluated outside the unit disk");
    }
    const double g = elliptic_F(s, m.kappa_prime);
    return std::copysign(std::cosh(pi * g / (2.0 * K)), t);
}

} // namespace

double rho_k(const ConicParams &p)
{
    validate(p);
    const double k = p.k, a = p.alpha, b = p.beta;
    switch (p.branch()) {
        case ConicBranch::half_plane:
            throw ParameterDomainError("rho_k is defined for k > 0");
        case ConicBranch::parabola: {
            const double A = pi * std::sqrt((1.0 - a) / (2.0 * (a - b)));
            return tanh_half_squared(A);
        }
        case ConicBranch::hyperbola: {
            const double B = (1.0 - k * k - b + a * k * k) / (a - b);
            if (!(B >= 1.0)) {
                throw ParameterDomainError("arccosh argument B = " + fmt(B) + " is below 1");
            }
            const double exponent = 2.0 / pi * std::acos(k);
            return tanh_half_squared(std::acosh(B) / exponent);
        }
        case ConicBranch::ellipse: {
            // Solve sin(pi F(t)/(2K)) = C for real t, then rho = sqrt(kappa) t.
            const double C = (k * k - 1.0 + b - a * k * k) / (a - b);
            if (!(C > -k && C < k)) {
                throw ParameterDomainError("C = " + fmt(C) + " leaves (-k, k); the point 1 has no preimage");
            }
            const auto m = solve_kappa(k);
            const double K = complete_K(m);
            const double sk = std::sqrt(m.kappa);
            if (C == -1.0 || C == 1.0) {
                return C * sk;
            }
            const double t_max = 1.0 / sk;
            const auto f = [&](double t) { return ellipse_core_real(t, m, K) - C; };
            std::uintmax_t iters = 200;
            const auto [lo, hi] = boost::math::tools::toms748_solve(
                f, -t_max, t_max, -k - C, k - C, boost::math::tools::eps_tolerance<double>(52), iters);
            return sk * 0.5 * (lo + hi);
        }
    }
    return 0.0;
}

ExtremalFunction::ExtremalFunction(const ConicParams &p) : m_params(p)
{
    validate(p);
    switch (p.branch()) {
        case ConicBranch::half_plane:
            break;
        case ConicBranch::parabola:
            m_rho = rho_k(p);
            break;
        case ConicBranch::hyperbola:
            m_rho = rho_k(p);
            m_exponent = 2.0 / pi * std::acos(p.k);
            break;
        case ConicBranch::ellipse:
            m_modulus = solve_kappa(p.k);
            m_K = complete_K(m_modulus);
            m_sqrt_kappa = std::sqrt(m_modulus.kappa);
            m_rho = rho_k(p);
            break;
    }
}

cplx ExtremalFunction::ellipse_core(cplx t) const
{
    if (t.imag() == 0.0) {
        return ellipse_core_real(t.real(), m_modulus, m_K);
    }
    return std::sin(pi * elliptic_F(t, m_modulus.kappa) / (2.0 * m_K));
}

cplx ExtremalFunction::operator()(cplx z) const
{
    if (!(std::abs(z) < 1.0)) {
        throw BranchEvaluationError("extremal function evaluated outside the open unit disk");
    }
    const double k = m_params.k, a = m_params.alpha, b = m_params.beta;
    if (m_params.branch() == ConicBranch::half_plane) {
        return (1.0 + (1.0 - 2.0 * b) * z) / (1.0 - z);
    }
    const cplx zeta = u_k(z, m_rho);
    if (!(std::abs(zeta) < 1.0)) {
        throw BranchEvaluationError("disk automorphism left the unit disk");
    }
    switch (m_params.branch()) {
        case ConicBranch::parabola: {
            // log((1 + sqrt u)/(1 - sqrt u)) = 2 atanh(sqrt u); even in sqrt u.
            const cplx L = 2.0 * std::atanh(std::sqrt(zeta));
            return a + 2.0 * (a - b) / (pi * pi) * L * L;
        }
        case ConicBranch::hyperbola: {
            const cplx L = 2.0 * std::atanh(std::sqrt(zeta));
            const double d = 1.0 - k * k;
            return (a - b) / d * std::cosh(m_exponent * L) + (b - a * k * k) / d;
        }
        case ConicBranch::ellipse: {
            const double d = k * k - 1.0;
            return (a - b) / d * ellipse_core(zeta / m_sqrt_kappa) + (a * k * k - b) / d;
        }
        case ConicBranch::half_plane:
            break;
    }
    return {};
}

cplx extremal_eval(cplx z, const ConicParams &p)
{
    return ExtremalFunction(p)(z);
}

ComplexSeries ExtremalCoeffs::series(int order) const
{
    if (order > count()) {
        throw std::invalid_argument("requested more extremal coefficients than were extracted");
    }
    ComplexSeries s(order);
    s[0] = 1.0;
    for (int n = 1; n <= order; ++n) {
        s[n] = P[static_cast<std::size_t>(n - 1)];
    }
    return s;
}

ExtremalCoeffs extremal_coeffs(const ExtremalFunction &fn, int M, double radius, int samples)
{
    if (M < 1) {
        throw std::invalid_argument("extremal_coeffs needs M >= 1");
    }
    if (samples <= M) {
        throw std::invalid_argument("extremal_coeffs needs more samples than coefficients");
    }
    if (!(radius > 0.0 && radius < 1.0)) {
        throw std::invalid_argument("extraction radius must lie in (0, 1)");
    }
    std::vector<cplx> vals(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        vals[static_cast<std::size_t>(j)] = fn(std::polar(radius, 2.0 * pi * j / samples));
    }
    detail::dft_inplace(vals, detail::DftSign::forward);
    ExtremalCoeffs out;
    out.P.resize(static_cast<std::size_t>(M));
    double rn = 1.0;
    for (int n = 1; n <= M; ++n) {
        rn *= radius;
        out.P[static_cast<std::size_t>(n - 1)] = vals[static_cast<std::size_t>(n)].real() / (samples * rn);
    }
    return out;
}

ExtremalCoeffs extremal_coeffs(const ConicParams &p, int M, double radius, int samples)
{
    return extremal_coeffs(ExtremalFunction(p), M, radius, samples);
}

} // namespace qconic
