#include <qconic/elliptic.hpp>
#include <qconic/errors.hpp>

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace qconic
{

namespace
{

// Carlson's duplication loop stops once the arguments agree to within this
// relative tolerance; the fifth-order correction then leaves an error below
// one ulp.
constexpr double kCarlsonTol = 2.2e-16;
constexpr int kCarlsonMaxIter = 100;

template <typename T>
T carlson_rf_impl(T x, T y, T z)
{
    using std::abs;
    using std::sqrt;
    const T a0 = (x + y + z) / 3.0;
    const double q = std::pow(3.0 * kCarlsonTol, -1.0 / 6.0) * std::max({abs(a0 - x), abs(a0 - y), abs(a0 - z)});
    T a = a0;
    double pow4 = 1.0;
    for (int it = 0; it < kCarlsonMaxIter; ++it) {
        if (q / pow4 < abs(a)) {
            break;
        }
        const T sx = sqrt(x), sy = sqrt(y), sz = sqrt(z);
        const T lambda = sx * sy + sx * sz + sy * sz;
        a = (a + lambda) / 4.0;
        x = (x + lambda) / 4.0;
        y = (y + lambda) / 4.0;
        z = (z + lambda) / 4.0;
        pow4 *= 4.0;
    }
    const T xx = (a - x) / a;
    const T yy = (a - y) / a;
    const T zz = -(xx + yy);
    const T e2 = xx * yy - zz * zz;
    const T e3 = xx * yy * zz;
    return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / sqrt(a);
}

void check_modulus(double kappa)
{
    if (!(kappa >= 0.0 && kappa < 1.0)) {
        throw ModulusOutOfRange("elliptic modulus must lie in [0, 1), got " + std::to_string(kappa));
    }
}

} // namespace

double agm(double a, double b)
{
    if (a == 0.0 || b == 0.0) {
        return 0.0;
    }
    for (int it = 0; it < 64; ++it) {
        const double an = 0.5 * (a + b);
        const double bn = std::sqrt(a * b);
        a = an;
        b = bn;
        if (std::abs(a - b) <= 4 * std::numeric_limits<double>::epsilon() * a) {
            break;
        }
    }
    return 0.5 * (a + b);
}

double carlson_rf(double x, double y, double z)
{
    if (x < 0 || y < 0 || z < 0 || (x == 0) + (y == 0) + (z == 0) > 1) {
        throw ArgumentOutOfRange("carlson_rf needs nonnegative arguments with at most one zero");
    }
    return carlson_rf_impl(x, y, z);
}

cplx carlson_rf(cplx x, cplx y, cplx z)
{
    const auto on_cut = [](cplx w) { return w.imag() == 0.0 && w.real() < 0.0; };
    if (on_cut(x) || on_cut(y) || on_cut(z) || (x == 0.0) + (y == 0.0) + (z == 0.0) > 1) {
        throw ArgumentOutOfRange("complex carlson_rf arguments must avoid the negative real axis");
    }
    return carlson_rf_impl(x, y, z);
}

EllipticModulus make_modulus(double kappa)
{
    check_modulus(kappa);
    return {kappa, std::sqrt((1.0 - kappa) * (1.0 + kappa))};
}

double complete_K(const EllipticModulus &m)
{
    return std::numbers::pi / (2.0 * agm(1.0, m.kappa_prime));
}

double complete_K_prime(const EllipticModulus &m)
{
    return std::numbers::pi / (2.0 * agm(1.0, m.kappa));
}

double elliptic_K(double kappa)
{
    return complete_K(make_modulus(kappa));
}

double elliptic_F(double t, double kappa)
{
    check_modulus(kappa);
    if (!(std::abs(t) <= 1.0)) {
        throw ArgumentOutOfRange("upper limit of the incomplete integral must lie in [-1, 1], got "
                                 + std::to_string(t));
    }
    if (t == 0.0) {
        return 0.0;
    }
    return t * carlson_rf((1.0 - t) * (1.0 + t), (1.0 - kappa * t) * (1.0 + kappa * t), 1.0);
}

cplx elliptic_F(cplx t, double kappa)
{
    check_modulus(kappa);
    if (t.imag() == 0.0 && std::abs(t.real()) >= 1.0) {
        throw ArgumentOutOfRange("complex upper limit lies on the branch cut |t| >= 1 of the real axis");
    }
    if (t == 0.0) {
        return 0.0;
    }
    return t * carlson_rf((1.0 - t) * (1.0 + t), (1.0 - kappa * t) * (1.0 + kappa * t), cplx{1.0});
}

double conic_k_from_modulus(const EllipticModulus &m)
{
    // K'/K = agm(1, kappa') / agm(1, kappa).
    return std::cosh(std::numbers::pi / 4.0 * agm(1.0, m.kappa_prime) / agm(1.0, m.kappa));
}

namespace
{

// kappa = 1/sqrt(1 + e^{-2s}), kappa' = 1/sqrt(1 + e^{2s}): both accurate for any real s.
EllipticModulus modulus_from_log_ratio(double s)
{
    return {1.0 / std::sqrt(1.0 + std::exp(-2.0 * s)), 1.0 / std::sqrt(1.0 + std::exp(2.0 * s))};
}

EllipticModulus solve_kappa_uncached(double k)
{
    const double target = std::acosh(k);
    const auto residual = [target](double s) {
        const auto m = modulus_from_log_ratio(s);
        return std::numbers::pi / 4.0 * agm(1.0, m.kappa_prime) / agm(1.0, m.kappa) - target;
    };
    constexpr double lo = -350.0, hi = 350.0;
    const double f_lo = residual(lo), f_hi = residual(hi);
    if (!(f_lo > 0.0 && f_hi < 0.0)) {
        throw NoRootInInterval("cannot bracket the elliptic modulus for k = " + std::to_string(k));
    }
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(residual, lo, hi, f_lo, f_hi,
                                                          boost::math::tools::eps_tolerance<double>(52), max_iter);
    return modulus_from_log_ratio(0.5 * (a + b));
}

} // namespace

EllipticModulus solve_kappa(double k)
{
    if (!(k > 1.0) || !std::isfinite(k)) {
        throw ParameterDomainError("solve_kappa needs a finite k > 1, got " + std::to_string(k));
    }
    static std::shared_mutex mutex;
    static std::unordered_map<double, EllipticModulus> cache;
    {
        std::shared_lock lock(mutex);
        if (const auto it = cache.find(k); it != cache.end()) {
            return it->second;
        }
    }
    const auto m = solve_kappa_uncached(k);
    std::unique_lock lock(mutex);
    cache.emplace(k, m);
    return m;
}

} // namespace qconic
