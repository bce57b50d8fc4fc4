#pragma once

#include <qconic/elliptic.hpp>
#include <qconic/series.hpp>

#include <iosfwd>
#include <span>
#include <vector>

namespace qconic
{

enum class ConicBranch {
    half_plane, // k = 0
    hyperbola,  // 0 < k < 1
    parabola,   // k = 1
    ellipse,    // k > 1
};

const char *to_string(ConicBranch b);

/// Parameters of the conic domain {w : k |w - alpha| < Re w - beta}.
/// Admissible when 0 <= beta < alpha <= 1 and k (1 - alpha) < 1 - beta.
struct ConicParams
{
    double k = 0.0;
    double alpha = 1.0;
    double beta = 0.0;

    ConicBranch branch() const noexcept;
};

/// Throws InvalidParameters naming the first violated constraint.
void validate(const ConicParams &p);

/// (Re w - beta) - k |w - alpha|: positive inside the domain.
double domain_margin(cplx w, const ConicParams &p);

/// True iff domain_margin(w) > -slack.
bool in_domain(cplx w, const ConicParams &p, double slack = 0.0);

struct BoundaryPoint
{
    double u;
    double v;
};

/// k^2 (u - alpha)^2 + k^2 v^2 - (u - beta)^2; zero on the boundary curve.
double boundary_residual(const BoundaryPoint &pt, const ConicParams &p);

/// `count` points on the boundary. The ellipse (k > 1) is traced once around
/// (first and last point coincide); the parabola and the hyperbola branch are
/// swept over |v| <= extent. Throws DegenerateBoundary for k = 0.
std::vector<BoundaryPoint> boundary_points(const ConicParams &p, int count, double extent = 4.0);

/// The k = 0 boundary, the vertical line u = beta over |v| <= extent.
std::vector<BoundaryPoint> boundary_line_points(const ConicParams &p, int count, double extent = 4.0);

/// CSV with header "u,v", C locale, 17 significant digits.
void write_boundary_csv(std::ostream &os, std::span<const BoundaryPoint> points);

/// Centre of the disk automorphism u_k that normalizes the extremal function
/// to p(0) = 1. Defined for k > 0; nonnegative except on the ellipse branch,
/// where it carries the sign of the real preimage of 1.
double rho_k(const ConicParams &p);

/// (z + rho) / (1 + rho z).
cplx u_k(cplx z, double rho);

/// The extremal map of the unit disk onto the conic domain with p(0) = 1.
/// Construction precomputes the branch constants, so reuse one instance when
/// evaluating many points.
class ExtremalFunction
{
public:
    explicit ExtremalFunction(const ConicParams &p);

    cplx operator()(cplx z) const;

    const ConicParams &params() const noexcept
    {
        return m_params;
    }
    double rho() const noexcept
    {
        return m_rho;
    }
    /// Modulus used by the ellipse branch (unset otherwise).
    const EllipticModulus &modulus() const noexcept
    {
        return m_modulus;
    }

private:
    // sin(pi F(t) / (2K)) on the ellipse branch, continued across the cuts
    // |t| > 1 of the real axis.
    cplx ellipse_core(cplx t) const;

    ConicParams m_params;
    double m_rho = 0.0;
    double m_exponent = 0.0; // hyperbola: (2/pi) arccos k
    EllipticModulus m_modulus{0.0, 1.0};
    double m_K = 0.0;
    double m_sqrt_kappa = 0.0;
};

cplx extremal_eval(cplx z, const ConicParams &p);

/// Taylor coefficients P_1..P_M of the extremal function (P_0 = 1).
struct ExtremalCoeffs
{
    std::vector<double> P; // P[n - 1] holds P_n

    int count() const noexcept
    {
        return static_cast<int>(P.size());
    }
    /// P_n for 1 <= n <= count().
    double operator()(int n) const
    {
        return P.at(static_cast<std::size_t>(n - 1));
    }
    /// 1 + P_1 x + ... + P_order x^order (order <= count()).
    ComplexSeries series(int order) const;
};

/// Trapezoid rule on |z| = radius with `samples` equispaced nodes (one FFT).
ExtremalCoeffs extremal_coeffs(const ConicParams &p, int M, double radius = 0.5, int samples = 512);
ExtremalCoeffs extremal_coeffs(const ExtremalFunction &fn, int M, double radius = 0.5, int samples = 512);

} // namespace qconic
