#pragma once

#include <qconic/series.hpp>

#include <random>

namespace qconic::testing
{

inline double uniform(std::mt19937_64 &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cplx random_cplx(std::mt19937_64 &rng, double scale = 1.0)
{
    return {uniform(rng, -scale, scale), uniform(rng, -scale, scale)};
}

// z + a_2 z^2 + ... with |a_n| below scale / 2^(n-2), so the series converges well past |z| = 1
inline ComplexSeries random_normalized(std::mt19937_64 &rng, int order, double scale = 0.5)
{
    ComplexSeries f(order);
    f[1] = 1.0;
    double s = scale;
    for (int n = 2; n <= order; ++n, s *= 0.5) {
        f[n] = random_cplx(rng, s);
    }
    return f;
}

inline ComplexSeries random_series(std::mt19937_64 &rng, int order, double scale = 1.0)
{
    ComplexSeries f(order);
    for (int n = 0; n <= order; ++n) {
        f[n] = random_cplx(rng, scale);
    }
    return f;
}

} // namespace qconic::testing
