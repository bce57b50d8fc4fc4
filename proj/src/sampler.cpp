#include <qconic/errors.hpp>
#include <qconic/sampler.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qconic
{

Rng sample_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
{
    const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
    const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
    return Rng(seq);
}

double uniform01(Rng &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int draw_atom_count(Rng &rng, int max_atoms)
{
    if (max_atoms < 1) {
        throw std::invalid_argument("max_atoms must be >= 1");
    }
    return 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_atoms));
}

HerglotzSample draw_herglotz(Rng &rng, int atom_count, double radius)
{
    if (!(radius > 0.0 && radius <= 1.0)) {
        throw std::invalid_argument("atom radius must lie in (0, 1]");
    }
    if (atom_count < 1) {
        throw std::invalid_argument("atom_count must be >= 1, got " + std::to_string(atom_count));
    }
    HerglotzSample s;
    s.atoms.resize(static_cast<std::size_t>(atom_count));
    double total = 0.0;
    for (auto &a : s.atoms) {
        a.point = std::polar(radius, 2.0 * std::numbers::pi * uniform01(rng));
        a.weight = -std::log1p(-uniform01(rng)); // Exp(1)
        total += a.weight;
    }
    if (total > 0.0) {
        for (auto &a : s.atoms) {
            a.weight /= total;
        }
    } else {
        for (auto &a : s.atoms) {
            a.weight = 1.0 / atom_count;
        }
    }
    return s;
}

double draw_atom_radius(Rng &rng, AtomRadius mode)
{
    if (mode == AtomRadius::unit) {
        return 1.0;
    }
    const double pick = uniform01(rng);
    const double r = 1.0 - uniform01(rng); // (0, 1]
    return pick < 0.5 ? 1.0 : r;
}

ComplexSeries caratheodory_series(const HerglotzSample &s, int order)
{
    ComplexSeries h(order);
    h[0] = 1.0;
    for (const auto &a : s.atoms) {
        cplx xn = 1.0;
        for (int n = 1; n <= order; ++n) {
            xn *= a.point;
            h[n] += 2.0 * a.weight * xn;
        }
    }
    return h;
}

ComplexSeries sample_caratheodory(Rng &rng, int atom_count, int order)
{
    return caratheodory_series(draw_herglotz(rng, atom_count), order);
}

ComplexSeries schwarz_from_caratheodory(const ComplexSeries &h)
{
    if (std::abs(h[0] - 1.0) > 1e-12) {
        throw std::invalid_argument("a Caratheodory series needs h_0 = 1");
    }
    ComplexSeries num = h, den = h;
    num[0] -= 1.0;
    den[0] += 1.0;
    ComplexSeries u = div(num, den);
    u[0] = 0.0;
    return u;
}

ComplexSeries caratheodory_from_schwarz(const ComplexSeries &u)
{
    if (u[0] != cplx{}) {
        throw std::invalid_argument("a Schwarz series needs u_0 = 0");
    }
    ComplexSeries num = u, den = -1.0 * u;
    num[0] = 1.0;
    den[0] = 1.0;
    return div(num, den);
}

ComplexSeries make_target(const ExtremalCoeffs &P, const ComplexSeries &u, int order)
{
    if (order > P.count() || order > u.order()) {
        throw std::invalid_argument("make_target needs P and u up to order " + std::to_string(order));
    }
    return compose(P.series(order), u.truncated(order));
}

ComplexSeries make_target(const ConicParams &p, const ComplexSeries &u, int order)
{
    return make_target(extremal_coeffs(p, std::max(order, 1)), u, order);
}

ComplexSeries schwarz_from_target(const ExtremalCoeffs &P, const ComplexSeries &target)
{
    const int order = target.order();
    if (order > P.count()) {
        throw std::invalid_argument("schwarz_from_target needs P up to the target order");
    }
    if (std::abs(target[0] - 1.0) > 1e-12) {
        throw std::invalid_argument("a subordination target needs constant term 1");
    }
    if (order == 0) {
        return ComplexSeries(0);
    }
    // p(x) = 1 + P1 r(x) with r normalized, so u = r^{-1}((target - 1)/P1).
    const double P1 = P(1);
    ComplexSeries r(order);
    for (int n = 1; n <= order; ++n) {
        r[n] = P(n) / P1;
    }
    ComplexSeries t = target;
    t[0] = 0.0;
    t *= 1.0 / P1;
    return compose(revert(r), t);
}

} // namespace qconic
